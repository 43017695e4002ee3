#include "approx/continuity.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "approx/kubota.hpp"
#include "geom/nearest.hpp"
#include "geom/volumes.hpp"
#include "random.hpp"
#include "stats/tests.hpp"

namespace hypercell::approx {

using geom::Mat;
using geom::Polytope;
using geom::Vec;
using detail::haar_frame;
using detail::kubota_c;
using detail::vertex_rows;

ContinuityProbe isoperimetric_continuity_probe(const Polytope& K, const Polytope& L, int i, int j,
                                               int mc_samples) {
    const int d = K.dim;
    if (L.dim != d) fail(ErrorCode::InvalidArgument, "isoperimetric_continuity_probe: dimension mismatch");
    if (i < 1 || i >= j || j > d)
        fail(ErrorCode::InvalidArgument, "isoperimetric_continuity_probe: need 1 <= i < j <= d");
    for (const auto& v : K.vertices)
        if (!L.contains(v, 1e-9))
            fail(ErrorCode::InvalidArgument, "isoperimetric_continuity_probe: K must be contained in L");

    ContinuityProbe probe;
    if (d <= 3) {
        const double v1 = geom::intrinsic_volumes_exact(K).value[1];
        const double dh = geom::hausdorff_nested(K, L);
        if (!(dh < v1))
            fail(ErrorCode::InvalidArgument, "isoperimetric_continuity_probe: d_H(K,L) = " +
                                                 std::to_string(dh) + " is not below V_1(K) = " +
                                                 std::to_string(v1));
        probe.delta = dh / v1;
        probe.gap = geom::isoperimetric_ratio(L, i, j) - geom::isoperimetric_ratio(K, i, j);
        return probe;
    }

    if (mc_samples < 2) fail(ErrorCode::InvalidArgument, "isoperimetric_continuity_probe: mc_samples too small");
    RandomStream rng(0xc0117171ULL);
    const Mat XK = vertex_rows(K);
    const Mat XL = vertex_rows(L);
    double vi_k = 0.0, vj_k = 0.0, vi_l = 0.0, vj_l = 0.0, v1_k = 0.0;
    for (int s = 0; s < mc_samples; ++s) {
        Mat Q = haar_frame(d, j, rng);
        vj_k += geom::hull_volume(XK * Q);
        vj_l += geom::hull_volume(XL * Q);
        Mat Qi = Q.leftCols(i);
        vi_k += geom::hull_volume(XK * Qi);
        vi_l += geom::hull_volume(XL * Qi);
        v1_k += geom::hull_volume(XK * Q.col(0));
    }
    const double ci = kubota_c(d, i), cj = kubota_c(d, j), c1 = kubota_c(d, 1);
    vi_k = ci * vi_k / mc_samples;
    vj_k = cj * vj_k / mc_samples;
    vi_l = ci * vi_l / mc_samples;
    vj_l = cj * vj_l / mc_samples;
    v1_k = c1 * v1_k / mc_samples;
    if (vi_k <= 0.0 || vi_l <= 0.0)
        fail(ErrorCode::Degenerate, "isoperimetric_continuity_probe: V_i vanishes");

    const double dh = geom::hausdorff_nested(K, L);
    if (!(dh < v1_k))
        fail(ErrorCode::InvalidArgument, "isoperimetric_continuity_probe: d_H(K,L) = " +
                                             std::to_string(dh) + " is not below V_1(K) = " +
                                             std::to_string(v1_k));
    probe.delta = dh / v1_k;
    probe.gap = std::pow(vj_l, 1.0 / j) / std::pow(vi_l, 1.0 / i) -
                std::pow(vj_k, 1.0 / j) / std::pow(vi_k, 1.0 / i);
    return probe;
}

ContinuityExponent continuity_exponent_fit(const std::vector<ContinuityProbe>& probes) {
    std::vector<double> x, y;
    for (const auto& p : probes) {
        if (p.delta > 0.0 && std::abs(p.gap) > 0.0) {
            x.push_back(std::log(p.delta));
            y.push_back(std::log(std::abs(p.gap)));
        }
    }
    if (x.size() < 2)
        fail(ErrorCode::InsufficientData, "continuity_exponent_fit: fewer than two usable probes");
    auto fit = stats::ols_fit(x, y);
    ContinuityExponent out;
    out.exponent = fit.slope;
    out.intercept = fit.intercept;
    out.used = static_cast<int>(x.size());
    return out;
}

} // namespace hypercell::approx
