#include "approx/circumscribe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "geom/nearest.hpp"
#include "geom/volumes.hpp"

namespace hypercell::approx {

using geom::Mat;
using geom::Polytope;
using geom::Vec;

namespace {

double angle_between(const Vec& a, const Vec& b) {
    return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

// (d-1)-measure of facet j: vertices projected onto an orthonormal basis of
// the facet hyperplane, then hulled.
double facet_measure(const Polytope& K, int j) {
    const int d = K.dim;
    std::vector<int> ids = K.facet_vertices(j);
    if (static_cast<int>(ids.size()) < d) return 0.0;
    Vec normal = K.halfspaces[j].a();
    Mat basis = Eigen::FullPivHouseholderQR<Mat>(normal).matrixQ().rightCols(d - 1);
    Mat pts(static_cast<int>(ids.size()), d - 1);
    for (size_t i = 0; i < ids.size(); ++i)
        pts.row(static_cast<int>(i)) = (basis.transpose() * K.vertices[ids[i]]).transpose();
    return geom::hull_volume(pts);
}

struct Builder {
    const Polytope* K;
    std::vector<Vec> normals;
    std::vector<double> offsets; // support value of K at each normal

    // Q from the selected normals, or nothing when they fail to bound.
    std::optional<Polytope> build(const std::vector<int>& sel) const {
        std::vector<geom::Halfspace> hs;
        hs.reserve(sel.size());
        for (int s : sel) hs.push_back(geom::Halfspace::from_constraint(normals[s], offsets[s]));
        auto res = geom::intersect_halfspaces(hs);
        if (!std::holds_alternative<Polytope>(res)) return std::nullopt;
        return std::get<Polytope>(std::move(res));
    }
};

} // namespace

CircumscribeResult circumscribe(const Polytope& K, int m, int max_swap_passes) {
    const int d = K.dim;
    const int n = K.f();
    if (m < d + 1) fail(ErrorCode::InvalidArgument, "circumscribe: facet budget must be at least d+1");

    CircumscribeResult out;
    if (m >= n) {
        out.Q = K;
        out.chosen.resize(n);
        for (int i = 0; i < n; ++i) out.chosen[i] = i;
        out.d_h = 0.0;
        return out;
    }

    Builder b;
    b.K = &K;
    b.normals.reserve(n);
    b.offsets.reserve(n);
    std::vector<double> weight(n);
    for (int j = 0; j < n; ++j) {
        b.normals.push_back(K.halfspaces[j].a());
        b.offsets.push_back(K.halfspaces[j].b());
        weight[j] = facet_measure(K, j);
    }

    // Farthest-point greedy on the normal sphere, scores weighted by facet
    // measure; ties resolve to the lowest index for determinism.
    std::vector<int> sel;
    std::vector<char> used(n, 0);
    int start = static_cast<int>(std::max_element(weight.begin(), weight.end()) - weight.begin());
    sel.push_back(start);
    used[start] = 1;
    std::vector<double> min_angle(n);
    for (int j = 0; j < n; ++j) min_angle[j] = angle_between(b.normals[j], b.normals[start]);
    while (static_cast<int>(sel.size()) < m) {
        int best = -1;
        double best_score = -1.0;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            double score = weight[j] * min_angle[j];
            if (score > best_score + 1e-15) {
                best_score = score;
                best = j;
            }
        }
        if (best < 0) break;
        sel.push_back(best);
        used[best] = 1;
        for (int j = 0; j < n; ++j)
            min_angle[j] = std::min(min_angle[j], angle_between(b.normals[j], b.normals[best]));
    }

    auto built = b.build(sel);
    if (!built)
        fail(ErrorCode::Degenerate,
             "circumscribe: selected directions do not positively span; budget m = " + std::to_string(m) +
                 " is too small to bound this body");
    double best_dh = geom::hausdorff_nested(K, *built);

    // Single-direction swaps, best improvement per slot, until a full pass
    // leaves the distance unchanged.
    for (int pass = 0; pass < max_swap_passes; ++pass) {
        bool improved = false;
        for (size_t slot = 0; slot < sel.size(); ++slot) {
            int best_cand = -1;
            double cand_dh = best_dh;
            int saved = sel[slot];
            for (int c = 0; c < n; ++c) {
                if (used[c]) continue;
                sel[slot] = c;
                auto trial = b.build(sel);
                if (trial) {
                    double dh = geom::hausdorff_nested(K, *trial);
                    if (dh < cand_dh - 1e-15) {
                        cand_dh = dh;
                        best_cand = c;
                    }
                }
            }
            sel[slot] = saved;
            if (best_cand >= 0) {
                used[saved] = 0;
                used[best_cand] = 1;
                sel[slot] = best_cand;
                best_dh = cand_dh;
                improved = true;
                ++out.swaps;
            }
        }
        if (!improved) break;
    }

    built = b.build(sel);
    if (!built) fail(ErrorCode::Numeric, "circumscribe: accepted swap no longer bounds");
    out.Q = std::move(*built);
    std::sort(sel.begin(), sel.end());
    out.chosen = std::move(sel);
    out.d_h = geom::hausdorff_nested(K, out.Q);
    return out;
}

} // namespace hypercell::approx
