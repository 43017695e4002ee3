#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geom/polytope.hpp"
#include "random.hpp"

namespace hypercell::direction {

using geom::Mat;
using geom::Vec;

// Cap C(z, r) = {u on the sphere : <u, z> >= 1 - r}, the height-r cap.
double cap_area(int d, double r);

struct WellSpreadWitness {
    Vec cap_center;
    double r = 0.0;  // cap height parameter in (0, 1)
    double c5 = 0.0; // surface-density lower bound on the cap
};

// Even probability measure on the unit sphere.  Construction symmetrizes and
// validates; instances are immutable and safe to share across threads.
class DirectionalDistribution {
  public:
    enum class Kind { Isotropic, Discrete, CapMixture };

    static DirectionalDistribution isotropic(int d);
    // Atoms are symmetrized (each direction contributes half its weight at
    // -u), merged, and weights normalized.  Rejects sets that do not span.
    static DirectionalDistribution discrete(std::vector<Vec> directions, std::vector<double> weights);
    // cap_mass is the total mass of the symmetrized pair of caps around
    // +-center; the rest follows `background`.
    static DirectionalDistribution cap_mixture(Vec center, double radius, double mass,
                                               DirectionalDistribution background);

    Kind kind() const { return kind_; }
    int dim() const { return d_; }
    // Deviation of the user-supplied weight sum from 1 (Discrete only).
    double input_weight_defect() const { return weight_defect_; }
    const std::vector<Vec>& directions() const;
    const std::vector<double>& weights() const;
    const Vec& cap_center() const;
    double cap_radius() const;
    double cap_mass() const;
    const DirectionalDistribution& background() const;

    Vec sample(RandomStream& rng) const;

    std::optional<WellSpreadWitness> well_spread_witness() const;

    // Distinct unit directions after symmetrization; only Discrete supports
    // a facet-count ceiling.
    int n_max() const;

    // E_phi |<v, u>|, the first absolute moment along v.  Exact for Discrete
    // and Isotropic, Monte Carlo (fixed internal substream) otherwise.
    double abs_moment(const Vec& v, int samples = 20000) const;

    // Segment-based lower bound for c_Phi = sup V_1/Phi: max over candidate
    // segment directions of 2 / E|<v,u>|.  Exact for Isotropic.
    double c_phi_lower_bound(int samples) const;

    std::string to_json() const;
    static DirectionalDistribution from_json(const std::string& text);

  private:
    DirectionalDistribution() = default;

    Kind kind_ = Kind::Isotropic;
    int d_ = 0;
    double weight_defect_ = 0.0;
    std::vector<Vec> dirs_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
    Vec center_;
    double radius_ = 0.0;
    double mass_ = 0.0;
    std::shared_ptr<const DirectionalDistribution> background_;
};

} // namespace hypercell::direction
