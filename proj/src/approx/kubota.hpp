#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "geom/polytope.hpp"
#include "random.hpp"

// Projection-averaging helpers for intrinsic volumes in d >= 4, shared by the
// continuity probe and the elongation-aware prune.  Callers draw frames once
// and reuse the columns, so paired estimates see identical projections.
namespace hypercell::approx::detail {

inline double kappa(int m) { return std::pow(M_PI, m / 2.0) / std::tgamma(m / 2.0 + 1.0); }

inline double binom(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= double(n - k + i) / double(i);
    return v;
}

// Kubota constant: V_m = c(d,m) * E vol_m(projection onto a random m-space).
inline double kubota_c(int d, int m) { return binom(d, m) * kappa(d) / (kappa(m) * kappa(d - m)); }

inline geom::Mat vertex_rows(const geom::Polytope& P) {
    geom::Mat X(P.vertex_count(), P.dim);
    for (int v = 0; v < P.vertex_count(); ++v) X.row(v) = P.vertices[v].transpose();
    return X;
}

// Haar orthonormal j-frame; its first i columns are a Haar i-frame.
inline geom::Mat haar_frame(int d, int j, RandomStream& rng) {
    geom::Mat G(d, j);
    for (int c = 0; c < j; ++c)
        for (int r = 0; r < d; ++r) G(r, c) = rng.gaussian();
    Eigen::HouseholderQR<geom::Mat> qr(G);
    return qr.householderQ() * geom::Mat::Identity(d, j);
}

} // namespace hypercell::approx::detail
