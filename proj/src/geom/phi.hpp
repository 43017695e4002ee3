#pragma once

#include "direction/distribution.hpp"
#include "geom/polytope.hpp"
#include "random.hpp"

namespace hypercell::geom {

struct PhiValue {
    double value = 0.0;
    double stderr_ = 0.0; // zero when exact
    bool exact = true;
};

// Phi(K) = E_phi h(K, u).  Exact for discrete phi (finite sum) and for
// isotropic phi with d <= 3 (via the mean-width identity); Monte Carlo with
// antithetic pairs otherwise.  When `rng` is null a fixed internal stream is
// used so results are reproducible.
PhiValue phi_content(const Polytope& K, const direction::DirectionalDistribution& phi, int samples = 20000,
                     RandomStream* rng = nullptr);

} // namespace hypercell::geom
