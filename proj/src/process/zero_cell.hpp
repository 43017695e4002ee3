#pragma once

#include "process/hits.hpp"
#include "process/records.hpp"

namespace hypercell::process {

struct ZeroCellOptions {
    // Doubling stops with an error once the sampling radius exceeds
    // radius_cap / gamma.
    double radius_cap = 1048576.0; // 2^20
    // Replacement shell sampler; null means the Poisson process itself.
    HitSource* source = nullptr;
    int mc_samples = 2000;
};

// The cell of the tessellation containing the origin.  Samples hits on
// B(0, R) starting at R = 1/gamma and doubles R, adding only the fresh shell
// (R, 2R], until the cell lies in B(0, R/2); the margin makes the truncation
// exact because any hyperplane cutting such a cell has offset at most R/2.
// The record carries weight 1/V_d(cell).
CellRecord zero_cell(const ProcessConfig& cfg, RandomStream& rng, const ZeroCellOptions& opts = {});

// The bare polytope, for callers that do their own bookkeeping.
geom::Polytope zero_cell_polytope(const ProcessConfig& cfg, RandomStream& rng,
                                  const ZeroCellOptions& opts = {});

} // namespace hypercell::process
