#pragma once

#include "geom/polytope.hpp"

namespace hypercell::geom {

// Closest point of conv(P.vertices) to p, solved by Wolfe's min-norm-point
// algorithm on the vertex set.  `tol` bounds the duality gap on the distance.
Vec nearest_point(const Polytope& P, const Vec& p, double tol = 1e-10);

double distance_to(const Polytope& P, const Vec& p, double tol = 1e-10);

// Hausdorff distance for nested polytopes.  Requires K to be contained in L
// (every vertex of K satisfies L's constraints within tolerance); under
// nesting d_H(K, L) is attained at a vertex of the outer body.
double hausdorff_nested(const Polytope& K, const Polytope& L, double tol = 1e-10);

} // namespace hypercell::geom
