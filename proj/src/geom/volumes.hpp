#pragma once

#include "geom/polytope.hpp"
#include "random.hpp"

namespace hypercell::geom {

struct VolumeData {
    double volume = 0.0;
    Vec centroid;
};

// Exact volume and volume centroid by pyramid decomposition over the face
// lattice (any dimension).
VolumeData volume_centroid(const Polytope& P);

// j-dimensional volume of the convex hull of points (rows of `pts`).
// Affinely degenerate input gives 0.
double hull_volume(const Mat& pts);

struct IntrinsicVolumes {
    std::vector<double> value;  // index j = 0..d
    std::vector<double> stderr_; // empty in exact mode
};

// Exact intrinsic volumes, d <= 3 only.
IntrinsicVolumes intrinsic_volumes_exact(const Polytope& P);

// Monte Carlo intrinsic volumes for any d: V_j from mean projection volumes
// onto uniformly random j-subspaces.
IntrinsicVolumes intrinsic_volumes_mc(const Polytope& P, int samples, RandomStream& rng);

// V_j(P)^{1/j} / V_i(P)^{1/i}, 1 <= i < j <= d.  Exact for d <= 3, Monte
// Carlo otherwise.
double isoperimetric_ratio(const Polytope& P, int i, int j);

} // namespace hypercell::geom
