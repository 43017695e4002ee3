#pragma once

#include <vector>

#include "geom/polytope.hpp"

namespace hypercell::approx {

struct CircumscribeResult {
    geom::Polytope Q;        // circumscribed body, Q contains K
    std::vector<int> chosen; // facet indices of K whose normals were kept
    double d_h = 0.0;        // certified Hausdorff distance d_H(K, Q)
    int swaps = 0;           // accepted single-direction swap improvements
};

// Few-facet outer approximation: support halfspaces of K at m of its facet
// normals, picked by farthest-point greedy weighted by facet measure, then
// polished by single-direction swaps while the Hausdorff distance improves.
CircumscribeResult circumscribe(const geom::Polytope& K, int m, int max_swap_passes = 4);

} // namespace hypercell::approx
