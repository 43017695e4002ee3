#pragma once

#include <cstdint>

#include "process/records.hpp"

namespace hypercell::cellstats {

struct DirectShapeOptions {
    // Safety factor on the fitted diameter/content bound; accepted samples
    // certify sufficiency post hoc, so this only trades acceptance rate.
    double cap_inflation = 2.0;
    int calibration_directions = 256;
    int calibration_samples = 4096;
    int mc_samples = 2000;
};

// Rejection sampler for the conditional shape law of cells with exactly n
// facets: draw n halfspaces with directions from phi, a fair side sign and an
// offset uniform on (0, t_cap); accept iff the intersection is a bounded
// polytope with n facets, content < 1 and centroid in [0,1]^d.  Accepted
// samples additionally certify t_i <= h(P, u_i) < t_cap for every facet, so
// an undersized cap fails loudly instead of biasing the law.
class DirectShapeSampler {
  public:
    DirectShapeSampler(int n, const process::ProcessConfig& cfg, DirectShapeOptions opts = {});

    // Throws Exhausted with the running acceptance rate after max_attempts
    // consecutive rejections.
    process::CellRecord sample(RandomStream& rng, std::size_t max_attempts = 1u << 20);

    double t_cap() const { return t_cap_; }
    std::size_t attempts() const { return attempts_; }
    std::size_t accepts() const { return accepts_; }

  private:
    int n_;
    process::ProcessConfig cfg_;
    DirectShapeOptions opts_;
    double t_cap_ = 0.0;
    std::size_t attempts_ = 0;
    std::size_t accepts_ = 0;
};

// One-shot convenience wrapper; prefer the class when drawing many samples,
// the offset cap calibration is then paid once.
process::CellRecord direct_shape_sampler(int n, const process::ProcessConfig& cfg, RandomStream& rng,
                                         std::size_t max_attempts = 1u << 20);

} // namespace hypercell::cellstats
