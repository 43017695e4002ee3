#pragma once

#include "direction/distribution.hpp"
#include "geom/polytope.hpp"
#include "random.hpp"

namespace hypercell::geom {

enum class CenterKind { Centroid, Steiner };

// Center map: volume centroid (exact) or Steiner point (exact arc formula in
// d=2, Monte Carlo with `samples` isotropic draws otherwise).
Vec cent(const Polytope& P, CenterKind kind = CenterKind::Centroid, int samples = 200000,
         RandomStream* rng = nullptr);

// shape(P) = (P - cent(P)) / Phi(P): recentered to centroid and rescaled to
// unit Phi-content.
Polytope shape(const Polytope& P, const direction::DirectionalDistribution& phi);

} // namespace hypercell::geom
