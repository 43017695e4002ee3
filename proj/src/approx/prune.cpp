#include "approx/prune.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "approx/kubota.hpp"
#include "geom/nearest.hpp"
#include "geom/phi.hpp"
#include "geom/volumes.hpp"
#include "random.hpp"

namespace hypercell::approx {

using geom::Polytope;
using geom::Vec;

namespace {

// Bit-exact vertex key: surviving vertices are copied verbatim by the removal
// patch, so byte equality identifies them across rebuilds.
std::string vertex_key(const Vec& v) {
    std::string key(sizeof(double) * v.size(), '\0');
    std::memcpy(key.data(), v.data(), key.size());
    return key;
}

void require_simple(const Polytope& P, const char* who) {
    if (!P.simplicity().simple)
        fail(ErrorCode::InvalidArgument, std::string(who) + ": requires a simple polytope");
}

// Map each halfspace of `next` back to the original index it carried in
// `prev_orig`; removal preserves halfspaces bit-for-bit.
std::vector<int> remap_indices(const Polytope& next, const Polytope& prev,
                               const std::vector<int>& prev_orig) {
    std::vector<int> orig;
    orig.reserve(next.halfspaces.size());
    for (const auto& h : next.halfspaces) {
        int found = -1;
        for (int k = 0; k < prev.f(); ++k) {
            const auto& g = prev.halfspaces[k];
            if (g.eps == h.eps && g.t == h.t &&
                std::memcmp(g.u.data(), h.u.data(), sizeof(double) * g.u.size()) == 0) {
                found = prev_orig[k];
                break;
            }
        }
        if (found < 0) fail(ErrorCode::Numeric, "prune: removed-facet bookkeeping lost a halfspace");
        orig.push_back(found);
    }
    return orig;
}

double phi_value(const Polytope& P, const direction::DirectionalDistribution& phi) {
    return geom::phi_content(P, phi).value;
}

} // namespace

void PruneTrace::to_csv(std::ostream& os, double phi_start) const {
    const bool has_phi = !phi_per_step.empty();
    os << (has_phi ? "k,d_H,Phi\n" : "k,d_H\n");
    double phi_acc = phi_start;
    char buf[96];
    for (size_t s = 0; s < schedule.size(); ++s) {
        if (has_phi) {
            phi_acc += phi_per_step[s];
            std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", facets_left[s], dh_from_original[s],
                          phi_acc);
        } else {
            std::snprintf(buf, sizeof(buf), "%d,%.17g\n", facets_left[s], dh_from_original[s]);
        }
        os << buf;
    }
}

PruneResult prune_to_subset(const Polytope& P, int k, const direction::DirectionalDistribution* phi) {
    const int d = P.dim;
    require_simple(P, "prune_to_subset");
    if (k < d + 1) fail(ErrorCode::InvalidArgument, "prune_to_subset: k must be at least d+1");
    if (phi && phi->dim() != d) fail(ErrorCode::InvalidArgument, "prune_to_subset: phi dimension mismatch");

    PruneResult out;
    if (k >= P.f()) {
        out.kept.resize(P.f());
        for (int i = 0; i < P.f(); ++i) out.kept[i] = i;
        out.pruned = P;
        out.d_h = 0.0;
        return out;
    }

    Polytope cur = P;
    std::vector<int> orig(P.f());
    for (int i = 0; i < P.f(); ++i) orig[i] = i;

    // Distances of enlarged-body vertices back to P, keyed by exact bytes so
    // vertices surviving several removals are measured once.
    std::unordered_map<std::string, double> dist_cache;
    auto vertex_dist = [&](const Vec& v) {
        if (P.contains(v, 1e-9)) return 0.0;
        auto key = vertex_key(v);
        auto it = dist_cache.find(key);
        if (it != dist_cache.end()) return it->second;
        double dist = geom::distance_to(P, v);
        dist_cache.emplace(std::move(key), dist);
        return dist;
    };

    double phi_cur = phi ? phi_value(P, *phi) : 0.0;

    while (cur.f() > k) {
        int best_facet = -1;
        double best_dh = std::numeric_limits<double>::infinity();
        Polytope best_poly;
        for (int j = 0; j < cur.f(); ++j) {
            auto cand = geom::remove_facet(cur, j);
            if (!std::holds_alternative<Polytope>(cand)) continue;
            Polytope& Q = std::get<Polytope>(cand);
            double dh = 0.0;
            for (const auto& v : Q.vertices) dh = std::max(dh, vertex_dist(v));
            // Strict improvement keeps ties at the lowest original index.
            if (dh < best_dh - 1e-15 || (best_facet >= 0 && dh < best_dh + 1e-15 && orig[j] < orig[best_facet])) {
                best_dh = dh;
                best_facet = j;
                best_poly = std::move(Q);
            }
        }
        if (best_facet < 0)
            fail(ErrorCode::Degenerate,
                 "prune_to_subset: boundedness unattainable below " + std::to_string(cur.f()) +
                     " facets (requested k = " + std::to_string(k) +
                     "); every single-facet removal unbounds the body");

        // Consecutive-step distance: new vertices of the enlarged body against
        // the body before this removal.
        std::unordered_set<std::string> prev_keys;
        prev_keys.reserve(cur.vertices.size() * 2);
        for (const auto& v : cur.vertices) prev_keys.insert(vertex_key(v));
        double step_dh = 0.0;
        for (const auto& v : best_poly.vertices)
            if (!prev_keys.count(vertex_key(v))) step_dh = std::max(step_dh, geom::distance_to(cur, v));

        out.trace.schedule.push_back(orig[best_facet]);
        out.trace.dh_per_step.push_back(step_dh);
        out.trace.dh_from_original.push_back(best_dh);
        out.trace.facets_left.push_back(best_poly.f());
        if (phi) {
            double phi_next = phi_value(best_poly, *phi);
            out.trace.phi_per_step.push_back(phi_next - phi_cur);
            phi_cur = phi_next;
        }

        orig = remap_indices(best_poly, cur, orig);
        // remap drops facet `best_facet` and any constraint made redundant.
        cur = std::move(best_poly);
        out.d_h = best_dh;
    }

    out.kept = orig;
    std::sort(out.kept.begin(), out.kept.end());
    out.pruned = std::move(cur);
    return out;
}

ElongatedPruneResult elongated_prune(const Polytope& P, double eps, int i, int j, int k,
                                     const direction::DirectionalDistribution* phi) {
    const int d = P.dim;
    if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "elongated_prune: eps must be positive");
    if (i < 1 || i >= j || j > d) fail(ErrorCode::InvalidArgument, "elongated_prune: need 1 <= i < j <= d");
    ElongatedPruneResult out;
    if (d <= 3) {
        auto iv = geom::intrinsic_volumes_exact(P);
        out.ratio = std::pow(iv.value[j], 1.0 / j) / std::pow(iv.value[i], 1.0 / i);
        out.v1 = iv.value[1];
    } else {
        // One projection pass for V_i, V_j, V_1; a j-frame's leading columns
        // are themselves Haar frames.
        RandomStream rng(0x51a7ed1ceULL);
        const geom::Mat X = detail::vertex_rows(P);
        const int samples = 4096;
        double vi = 0.0, vj = 0.0, v1 = 0.0;
        for (int s = 0; s < samples; ++s) {
            geom::Mat Q = detail::haar_frame(d, j, rng);
            vj += geom::hull_volume(X * Q);
            vi += geom::hull_volume(X * Q.leftCols(i));
            v1 += geom::hull_volume(X * Q.col(0));
        }
        vi = detail::kubota_c(d, i) * vi / samples;
        vj = detail::kubota_c(d, j) * vj / samples;
        out.v1 = detail::kubota_c(d, 1) * v1 / samples;
        if (vi <= 0.0) fail(ErrorCode::Degenerate, "elongated_prune: V_i vanishes");
        out.ratio = std::pow(vj, 1.0 / j) / std::pow(vi, 1.0 / i);
    }
    if (!(out.ratio < eps))
        fail(ErrorCode::InvalidArgument, "elongated_prune: isoperimetric ratio " +
                                             std::to_string(out.ratio) + " is not below eps = " +
                                             std::to_string(eps));
    out.rate_bound = std::pow(eps, 1.0 / (2.0 * d)) * out.v1 * std::pow(double(k), -2.0 / (d - 1));
    out.result = prune_to_subset(P, k, phi);
    return out;
}

RemovableReport removable_set(const Polytope& P, double alpha_dh, double alpha_phi,
                              const direction::DirectionalDistribution& phi) {
    const int d = P.dim;
    const int n = P.f();
    require_simple(P, "removable_set");
    if (phi.dim() != d) fail(ErrorCode::InvalidArgument, "removable_set: phi dimension mismatch");

    RemovableReport rep;
    rep.phi_total = phi_value(P, phi);
    rep.dh_threshold = alpha_dh * rep.phi_total * std::pow(double(n), -2.0 / (d - 1));
    rep.phi_threshold = std::exp(alpha_phi * std::pow(double(n), -double(d + 1) / (d - 1))) * rep.phi_total;
    rep.dh.assign(n, std::numeric_limits<double>::infinity());
    rep.phi_after.assign(n, std::numeric_limits<double>::quiet_NaN());
    rep.unbounding.assign(n, 0);

    for (int j = 0; j < n; ++j) {
        auto cand = geom::remove_facet(P, j);
        if (!std::holds_alternative<Polytope>(cand)) {
            rep.unbounding[j] = 1;
            continue;
        }
        const Polytope& Q = std::get<Polytope>(cand);
        rep.dh[j] = geom::hausdorff_nested(P, Q);
        rep.phi_after[j] = phi_value(Q, phi);
        if (rep.dh[j] < rep.dh_threshold && rep.phi_after[j] < rep.phi_threshold) rep.J.push_back(j);
    }
    return rep;
}

double fit_removable_scale(const std::vector<Polytope>& training,
                           const direction::DirectionalDistribution& phi, double margin) {
    if (training.empty()) fail(ErrorCode::InsufficientData, "fit_removable_scale: empty training corpus");
    double worst = 0.0;
    for (const auto& P : training) {
        const int d = P.dim;
        const int n = P.f();
        // Per-facet normalized scores; |J(s)| >= ceil(n/4) once s exceeds the
        // ceil(n/4)-th smallest of the pairwise maxima.
        RemovableReport rep = removable_set(P, 0.0, 0.0, phi);
        std::vector<double> score(n, std::numeric_limits<double>::infinity());
        for (int j = 0; j < n; ++j) {
            if (rep.unbounding[j]) continue;
            double x = rep.dh[j] * std::pow(double(n), 2.0 / (d - 1)) / rep.phi_total;
            double y = std::log(rep.phi_after[j] / rep.phi_total) * std::pow(double(n), double(d + 1) / (d - 1));
            score[j] = std::max(x, y);
        }
        std::sort(score.begin(), score.end());
        int need = (n + 3) / 4;
        double s = score[need - 1];
        if (!std::isfinite(s))
            fail(ErrorCode::Degenerate, "fit_removable_scale: fewer than n/4 bounded removals in a training body");
        worst = std::max(worst, s);
    }
    return margin * worst * (1.0 + 1e-12);
}

} // namespace hypercell::approx
