#pragma once

#include <functional>
#include <vector>

#include "direction/distribution.hpp"
#include "geom/polytope.hpp"
#include "random.hpp"

namespace hypercell::process {

using geom::Vec;

// Stationary Poisson hyperplane process: intensity gamma per unit offset,
// normal law phi.  Sampling always takes an explicit caller-owned stream;
// `seed` is the master seed batch drivers derive substreams from.
struct ProcessConfig {
    int d;
    double gamma;
    direction::DirectionalDistribution phi;
    uint64_t seed;

    ProcessConfig(int d_, double gamma_, direction::DirectionalDistribution phi_, uint64_t seed_ = 0)
        : d(d_), gamma(gamma_), phi(std::move(phi_)), seed(seed_) {}

    void validate() const;
};

// One hyperplane {x : <u,x> = t} of the process, t > 0 almost surely.
struct Hit {
    Vec u;
    double t = 0.0;

    geom::Halfspace origin_side() const { return geom::Halfspace::make(u, t, -1); }
    geom::Halfspace far_side() const { return geom::Halfspace::make(u, t, +1); }
};

// Hits on the ball B(0, radius): count ~ Poisson(gamma * radius) because
// Phi(B(0,R)) = R, directions ~ phi, offsets ~ Uniform(0, radius).
std::vector<Hit> sample_hits(double radius, const ProcessConfig& cfg, RandomStream& rng);

// Hits on the shell {radius_lo < t <= radius_hi}: the increment the doubling
// sampler adds when the window grows; independent of the inner draws.
std::vector<Hit> sample_hits_shell(double radius_lo, double radius_hi, const ProcessConfig& cfg,
                                   RandomStream& rng);

// Hits on a general convex window given by its support function, by thinning
// the circumscribed-ball draw to t <= support(u).  The support function must
// be nonnegative (origin inside) and bounded by `radius`.
std::vector<Hit> sample_hits(double radius, const std::function<double(const Vec&)>& support,
                             const ProcessConfig& cfg, RandomStream& rng);

// Hits on a polytope window containing the origin.
std::vector<Hit> sample_hits(const geom::Polytope& window, const ProcessConfig& cfg, RandomStream& rng);

// Override point for the zero-cell shell sampler; tests inject degenerate
// sources to force the non-termination path.
class HitSource {
  public:
    virtual ~HitSource() = default;
    virtual std::vector<Hit> shell(double radius_lo, double radius_hi, RandomStream& rng) = 0;
};

class PoissonHitSource final : public HitSource {
  public:
    explicit PoissonHitSource(const ProcessConfig& cfg) : cfg_(&cfg) {}
    std::vector<Hit> shell(double radius_lo, double radius_hi, RandomStream& rng) override {
        return sample_hits_shell(radius_lo, radius_hi, *cfg_, rng);
    }

  private:
    const ProcessConfig* cfg_;
};

} // namespace hypercell::process
