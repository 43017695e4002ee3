#pragma once

#include <vector>

#include "direction/distribution.hpp"
#include "geom/polytope.hpp"
#include "random.hpp"

namespace hypercell::approx {

struct CapPacking {
    std::vector<geom::Vec> centers; // mirrored pairs, stored [z, -z, ...]
    double radius = 0.0;            // chord radius of the packed caps
    double min_angle = 0.0;         // smallest pairwise center angle
    bool saturated = false;
};

// Halfspace family S_i = { H(v, t) : v in the normal cap, t in [t_lo, t_hi] }.
struct WitnessFacetSet {
    geom::Vec center;        // sub-cap center z_i
    double cap_radius = 0.0; // chord radius of the normal cap (rho / 2)
    double t_lo = 0.0;
    double t_hi = 0.0;
    double mu = 0.0; // cap area times window length, exact
};

struct WitnessResult {
    geom::Polytope P;
    CapPacking packing;
    std::vector<WitnessFacetSet> sets;
    double rho = 0.0; // sub-cap chord radius
    int big_caps_used = 0;
    int min_feasible_n = 0;
};

// Saturated mirrored packing of chord-(r/12) caps on the witness cap and its
// mirror, one disjoint halfspace family per requested facet (sub-cap chord
// rho = min(r/12, r/4 * n^{-1/(d-1)})), then one draw per family intersected
// into a polytope.  Certifies f = n and every vertex strictly inside the unit
// ball; any draw from the same families enjoys the same certificates.
WitnessResult witness_construction(int n, double r, const direction::WellSpreadWitness& witness,
                                   RandomStream& rng);

// Fresh draw from previously built facet sets, with the same certificates.
geom::Polytope witness_polytope(const std::vector<WitnessFacetSet>& sets, int d, RandomStream& rng);

} // namespace hypercell::approx
