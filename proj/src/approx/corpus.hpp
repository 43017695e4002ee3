#pragma once

#include "direction/distribution.hpp"
#include "geom/polytope.hpp"
#include "random.hpp"

namespace hypercell::approx {

using geom::Polytope;
using geom::Vec;

// Random many-facet simple polytopes used as training/holdout corpora.  Cells
// conditioned on a large facet count concentrate near circumscribed-ball
// shapes, so offsets are drawn just inside tangency: u ~ phi, t = 1 - jitter*U.
// Retries until the intersection is bounded, simple, and keeps all n facets.
inline Polytope tangent_polytope(int d, int n, double jitter,
                                 const direction::DirectionalDistribution& phi, RandomStream& rng,
                                 int max_attempts = 400) {
    if (phi.dim() != d) throw Error(ErrorCode::InvalidArgument, "tangent_polytope: dimension mismatch");
    if (n < d + 1) throw Error(ErrorCode::InvalidArgument, "tangent_polytope: need n >= d+1 facets");
    if (jitter < 0.0 || jitter >= 1.0)
        throw Error(ErrorCode::InvalidArgument, "tangent_polytope: jitter must lie in [0,1)");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<geom::Halfspace> hs;
        hs.reserve(n);
        for (int i = 0; i < n; ++i) {
            double t = 1.0 - jitter * rng.uniform();
            hs.push_back(geom::Halfspace::make(phi.sample(rng), t, -1));
        }
        auto built = geom::intersect_halfspaces(hs);
        if (!std::holds_alternative<Polytope>(built)) continue;
        Polytope P = std::move(std::get<Polytope>(built));
        if (P.f() != n || !P.simplicity().simple) continue;
        return P;
    }
    throw Error(ErrorCode::Exhausted, "tangent_polytope: no simple full-facet draw in " +
                                          std::to_string(max_attempts) + " attempts");
}

// Same construction around an axis-aligned box of the given half side lengths;
// small half sides give elongated bodies with tiny isoperimetric ratio.
inline Polytope box_tangent_polytope(const Vec& half_sides, int n, double jitter, RandomStream& rng,
                                     int max_attempts = 400) {
    const int d = static_cast<int>(half_sides.size());
    if (d < 2 || half_sides.minCoeff() <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "box_tangent_polytope: half sides must be positive");
    if (n < d + 1) throw Error(ErrorCode::InvalidArgument, "box_tangent_polytope: need n >= d+1 facets");
    auto iso = direction::DirectionalDistribution::isotropic(d);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<geom::Halfspace> hs;
        hs.reserve(n);
        for (int i = 0; i < n; ++i) {
            Vec u = iso.sample(rng);
            double support = u.cwiseAbs().dot(half_sides);
            double t = support * (1.0 - jitter * rng.uniform());
            hs.push_back(geom::Halfspace::make(u, t, -1));
        }
        auto built = geom::intersect_halfspaces(hs);
        if (!std::holds_alternative<Polytope>(built)) continue;
        Polytope P = std::move(std::get<Polytope>(built));
        if (P.f() != n || !P.simplicity().simple) continue;
        return P;
    }
    throw Error(ErrorCode::Exhausted, "box_tangent_polytope: no simple full-facet draw in " +
                                          std::to_string(max_attempts) + " attempts");
}

} // namespace hypercell::approx
