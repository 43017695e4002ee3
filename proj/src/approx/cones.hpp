#pragma once

#include <vector>

#include "direction/distribution.hpp"
#include "geom/polytope.hpp"
#include "random.hpp"

namespace hypercell::approx {

// Generators of the normal cones of a simple polytope: column l*d..  For
// vertex l the cone is the nonnegative hull of the d outer facet normals
// through it, returned as the columns of one d x d matrix per vertex.
std::vector<geom::Mat> normal_cones(const geom::Polytope& P);

// Vertices on facet j; the facet umbrella U_j is the union of their cones.
std::vector<int> facet_umbrella(const geom::Polytope& P, int j);

struct ConeMassEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    long samples = 0;
};

struct ConeMasses {
    std::vector<ConeMassEstimate> vertex; // phi(N(v_l)) per vertex
    std::vector<ConeMassEstimate> facet;  // phi(U_j) per facet
    double vertex_sum = 0.0;              // exactly 1 up to vertex ties
    double facet_sum = 0.0;               // exactly d for a simple polytope
    long samples = 0;
};

// Monte Carlo masses of all vertex cones and facet umbrellas in one sampling
// pass: u lies in N(v_l) when v_l maximizes <., u> over vertices, and in U_j
// when that vertex lies on facet j.
ConeMasses cone_masses(const geom::Polytope& P, const direction::DirectionalDistribution& phi,
                       long samples, RandomStream& rng);

// phi(U_j) alone, same membership rule.
ConeMassEstimate phi_measure(const geom::Polytope& P, int facet,
                             const direction::DirectionalDistribution& phi, long samples,
                             RandomStream& rng);

} // namespace hypercell::approx
