#pragma once

#include "process/hits.hpp"
#include "process/records.hpp"

namespace hypercell::process {

struct ArrangementOptions {
    // Inner-window inset on every side, as a fraction of the window side
    // (minus-sampling edge correction: a cell is kept only if its centroid
    // lies in the inner window).
    double margin_fraction = 0.2;
    // Build-region growth beyond the window, as a fraction of the half-side;
    // must be positive so clipped boundary faces never masquerade as cells.
    double enlarge_fraction = 0.2;
    int mc_samples = 2000;
};

struct ArrangementStats {
    size_t vertices = 0;
    size_t edges = 0;
    size_t bounded_faces = 0; // all faces of the clipped arrangement, pre-filter
    double kept_area = 0.0;   // total area of the returned cells
};

// All tessellation cells inside the square window [-half_side, half_side]^2:
// clips the line process to an enlarged box, builds the planar arrangement
// via a doubly-connected edge list, audits Euler's relation V - E + F = 1 on
// the bounded faces, and keeps faces entirely inside the window whose
// centroid falls in the inner window.  Records carry weight 1.
std::vector<CellRecord> planar_arrangement_cells(double half_side, const ProcessConfig& cfg,
                                                 RandomStream& rng, const ArrangementOptions& opts = {},
                                                 ArrangementStats* stats = nullptr);

} // namespace hypercell::process
