#pragma once

#include <iosfwd>
#include <vector>

#include "direction/distribution.hpp"
#include "geom/polytope.hpp"

namespace hypercell::approx {

struct PruneTrace {
    std::vector<int> schedule;            // removed facets, original indexing
    std::vector<double> dh_per_step;      // d_H between consecutive bodies
    std::vector<double> phi_per_step;     // Phi increments; empty when untracked
    std::vector<double> dh_from_original; // certified d_H(P, current) per step
    std::vector<int> facets_left;         // facet count after each step

    // Columns k,d_H,Phi with cumulative values per step; the Phi column is
    // present only when Phi was tracked.
    void to_csv(std::ostream& os, double phi_start = 0.0) const;
};

struct PruneResult {
    std::vector<int> kept; // original facet indices, ascending
    double d_h = 0.0;      // certified d_H(P, pruned)
    geom::Polytope pruned;
    PruneTrace trace;
};

// Greedy reverse-deletion: repeatedly drop the facet whose removal least
// increases d_H to the original body, keeping boundedness, until k facets
// remain.  Phi increments are tracked when phi is given.
PruneResult prune_to_subset(const geom::Polytope& P, int k,
                            const direction::DirectionalDistribution* phi = nullptr);

struct ElongatedPruneResult {
    PruneResult result;
    double ratio = 0.0;      // (i,j)-isoperimetric ratio of P at entry
    double v1 = 0.0;         // V_1(P)
    double rate_bound = 0.0; // eps^{1/2d} * V_1(P) * k^{-2/(d-1)}
};

// Pruning under an elongation precondition ratio(P,i,j) < eps; the certificate
// is reported against the elongation-aware rate.
ElongatedPruneResult elongated_prune(const geom::Polytope& P, double eps, int i, int j, int k,
                                     const direction::DirectionalDistribution* phi = nullptr);

struct RemovableReport {
    std::vector<int> J;            // facets passing both removal bounds
    std::vector<double> dh;        // d_H(P, P minus facet); inf when unbounding
    std::vector<double> phi_after; // Phi(P minus facet); nan when unbounding
    std::vector<char> unbounding;
    double phi_total = 0.0;
    double dh_threshold = 0.0;  // alpha_dh * Phi * n^{-2/(d-1)}
    double phi_threshold = 0.0; // exp(alpha_phi * n^{-(d+1)/(d-1)}) * Phi
};

// Exact single-facet removal for every facet; J collects the facets whose
// removal stays below both thresholds.  Unbounding removals are excluded,
// never an error.
RemovableReport removable_set(const geom::Polytope& P, double alpha_dh, double alpha_phi,
                              const direction::DirectionalDistribution& phi);

// Smallest common scale s with |J(alpha_dh = alpha_phi = s)| >= ceil(n/4) for
// every training body, inflated by the envelope margin.
double fit_removable_scale(const std::vector<geom::Polytope>& training,
                           const direction::DirectionalDistribution& phi, double margin = 1.25);

} // namespace hypercell::approx
