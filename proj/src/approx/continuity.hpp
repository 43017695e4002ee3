#pragma once

#include <vector>

#include "geom/polytope.hpp"

namespace hypercell::approx {

struct ContinuityProbe {
    double delta = 0.0; // d_H(K, L) / V_1(K)
    double gap = 0.0;   // ratio(L, i, j) - ratio(K, i, j)
};

// Nearness-to-ratio probe for the (i,j) isoperimetric ratio on a nested pair
// K inside L with d_H(K, L) < V_1(K).  Exact volumes for d <= 3; for higher d
// both ratios come from one projection-averaging pass with shared random
// frames, so the frame noise cancels inside the gap.
ContinuityProbe isoperimetric_continuity_probe(const geom::Polytope& K, const geom::Polytope& L,
                                               int i, int j, int mc_samples = 20000);

struct ContinuityExponent {
    double exponent = 0.0;
    double intercept = 0.0;
    int used = 0; // probes with delta > 0 and gap != 0
};

// Log-log fit of |gap| against delta over a batch of probes; the enlargement
// can move the ratio either way, the continuity claim bounds the magnitude.
ContinuityExponent continuity_exponent_fit(const std::vector<ContinuityProbe>& probes);

} // namespace hypercell::approx
