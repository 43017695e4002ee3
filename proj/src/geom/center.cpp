#include "geom/center.hpp"

#include <algorithm>

#include "common.hpp"
#include "geom/phi.hpp"
#include "geom/volumes.hpp"

namespace hypercell::geom {

namespace {

// Exact Steiner point of a polygon: per-vertex normal-cone arcs integrate
// h(K,u)u in closed form, s = (1/pi) * sum of arc integrals.
Vec steiner_2d(const Polytope& P) {
    const int n = P.vertex_count();
    Vec mean = Vec::Zero(2);
    for (const auto& v : P.vertices) mean += v;
    mean /= n;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Vec& va = P.vertices[a];
        const Vec& vb = P.vertices[b];
        return std::atan2(va(1) - mean(1), va(0) - mean(0)) < std::atan2(vb(1) - mean(1), vb(0) - mean(0));
    });
    auto edge_normal_angle = [&](int from, int to) {
        Vec t = P.vertices[order[to]] - P.vertices[order[from]];
        return std::atan2(-t(0), t(1)); // outward normal of a ccw edge
    };
    double covered = 0.0;
    Vec acc = Vec::Zero(2);
    for (int k = 0; k < n; ++k) {
        int prev = (k + n - 1) % n;
        int next = (k + 1) % n;
        double a1 = edge_normal_angle(prev, k);
        double a2 = edge_normal_angle(k, next);
        while (a2 < a1) a2 += 2.0 * kPi;
        covered += a2 - a1;
        const Vec& v = P.vertices[order[k]];
        // Arc integral of (v . u) u for u = (cos t, sin t) over [a1, a2].
        auto ixx = [](double t) { return 0.5 * t + 0.25 * std::sin(2.0 * t); };
        auto ixy = [](double t) { return -0.25 * std::cos(2.0 * t); };
        auto iyy = [](double t) { return 0.5 * t - 0.25 * std::sin(2.0 * t); };
        acc(0) += v(0) * (ixx(a2) - ixx(a1)) + v(1) * (ixy(a2) - ixy(a1));
        acc(1) += v(0) * (ixy(a2) - ixy(a1)) + v(1) * (iyy(a2) - iyy(a1));
    }
    if (std::abs(covered - 2.0 * kPi) > 1e-7)
        fail(ErrorCode::Numeric, "steiner: normal fan does not close (got arc sum " + to_str(covered) + ")");
    return acc / kPi; // kappa_2
}

} // namespace

Vec cent(const Polytope& P, CenterKind kind, int samples, RandomStream* rng) {
    if (kind == CenterKind::Centroid) return volume_centroid(P).centroid;
    if (P.dim == 2) return steiner_2d(P);
    // s(K) = d * E[h(K,u) u] over the uniform sphere measure.
    if (samples < 2) fail(ErrorCode::InvalidArgument, "cent: need at least 2 samples");
    RandomStream local(0x57e14e9ULL);
    RandomStream& r = rng ? *rng : local;
    auto iso = direction::DirectionalDistribution::isotropic(P.dim);
    Vec acc = Vec::Zero(P.dim);
    for (int s = 0; s < samples; ++s) {
        Vec u = iso.sample(r);
        acc += 0.5 * (P.support(u) - P.support(-u)) * u; // antithetic pair
    }
    return (double(P.dim) / samples) * acc;
}

Polytope shape(const Polytope& P, const direction::DirectionalDistribution& phi) {
    Vec c = cent(P, CenterKind::Centroid);
    Polytope centered = P.translated(-c);
    double content = phi_content(centered, phi).value;
    if (!(content > 0.0)) fail(ErrorCode::Degenerate, "shape: Phi-content is not positive");
    return centered.scaled(1.0 / content);
}

} // namespace hypercell::geom
