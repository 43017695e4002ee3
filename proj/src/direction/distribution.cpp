#include "direction/distribution.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

#include "common.hpp"

namespace hypercell::direction {

namespace {

using nlohmann::json;

Vec json_to_vec(const json& arr, const char* what) {
    if (!arr.is_array() || arr.empty()) fail(ErrorCode::Io, std::string("distribution json: ") + what + " must be a nonempty array");
    Vec v(arr.size());
    for (size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) fail(ErrorCode::Io, std::string("distribution json: ") + what + " entries must be numbers");
        v(i) = arr[i].get<double>();
    }
    return v;
}

json vec_to_json(const Vec& v) {
    auto arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

} // namespace

double cap_area(int d, double r) {
    if (d < 2) fail(ErrorCode::InvalidArgument, "cap_area: d must be >= 2");
    if (r <= 0.0 || r >= 1.0) fail(ErrorCode::InvalidArgument, "cap_area: r must lie in (0,1)");
    const double theta_max = std::acos(1.0 - r);
    // Surface area = area(S^{d-2}) * int_0^theta sin^{d-2}; Simpson quadrature.
    const int panels = 1 << 12;
    const double h = theta_max / panels;
    double acc = 0.0;
    auto f = [&](double t) { return std::pow(std::sin(t), d - 2); };
    for (int i = 0; i < panels; ++i) {
        double a = i * h;
        acc += (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h)) * h / 6.0;
    }
    return sphere_area(d - 1) * acc;
}

DirectionalDistribution DirectionalDistribution::isotropic(int d) {
    if (d < 2) fail(ErrorCode::InvalidArgument, "isotropic: d must be >= 2");
    DirectionalDistribution out;
    out.kind_ = Kind::Isotropic;
    out.d_ = d;
    return out;
}

DirectionalDistribution DirectionalDistribution::discrete(std::vector<Vec> directions,
                                                          std::vector<double> weights) {
    if (directions.empty() || directions.size() != weights.size())
        fail(ErrorCode::InvalidArgument, "discrete: directions and weights must be nonempty and equal length");
    const int d = static_cast<int>(directions[0].size());
    if (d < 2) fail(ErrorCode::InvalidArgument, "discrete: dimension must be >= 2");
    double sum = 0.0;
    for (size_t i = 0; i < directions.size(); ++i) {
        if (directions[i].size() != d) fail(ErrorCode::InvalidArgument, "discrete: mixed dimensions");
        if (!directions[i].allFinite()) fail(ErrorCode::InvalidArgument, "discrete: non-finite direction");
        double n = directions[i].norm();
        if (n < 1e-12) fail(ErrorCode::InvalidArgument, "discrete: zero direction");
        directions[i] /= n;
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
            fail(ErrorCode::InvalidArgument, "discrete: weights must be finite and nonnegative");
        sum += weights[i];
    }
    if (sum <= 0.0) fail(ErrorCode::InvalidArgument, "discrete: total weight must be positive");

    DirectionalDistribution out;
    out.kind_ = Kind::Discrete;
    out.d_ = d;
    out.weight_defect_ = std::abs(sum - 1.0);
    // Symmetrize: half of each atom's mass goes to the antipode, then merge
    // coincident directions.
    for (size_t i = 0; i < directions.size(); ++i) {
        for (int sign : {1, -1}) {
            Vec u = sign * directions[i];
            double w = weights[i] / (2.0 * sum);
            bool merged = false;
            for (size_t k = 0; k < out.dirs_.size(); ++k) {
                if (u.dot(out.dirs_[k]) > 1.0 - 1e-12) {
                    out.weights_[k] += w;
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                out.dirs_.push_back(std::move(u));
                out.weights_.push_back(w);
            }
        }
    }
    Mat m(out.dirs_.size(), d);
    for (size_t i = 0; i < out.dirs_.size(); ++i) m.row(i) = out.dirs_[i].transpose();
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-9 * sv(0)) ++rank;
    if (rank < d)
        fail(ErrorCode::InvalidArgument, "discrete: support lies in a great circle (does not span)");
    double acc = 0.0;
    for (double w : out.weights_) {
        acc += w;
        out.cumulative_.push_back(acc);
    }
    out.cumulative_.back() = 1.0;
    return out;
}

DirectionalDistribution DirectionalDistribution::cap_mixture(Vec center, double radius, double mass,
                                                             DirectionalDistribution background) {
    const int d = static_cast<int>(center.size());
    if (d < 2 || background.dim() != d) fail(ErrorCode::InvalidArgument, "cap_mixture: dimension mismatch");
    double n = center.norm();
    if (!center.allFinite() || n < 1e-12) fail(ErrorCode::InvalidArgument, "cap_mixture: bad cap center");
    if (!(radius > 0.0 && radius < 1.0)) fail(ErrorCode::InvalidArgument, "cap_mixture: radius must lie in (0,1)");
    if (!(mass >= 0.0 && mass <= 1.0)) fail(ErrorCode::InvalidArgument, "cap_mixture: mass must lie in [0,1]");
    DirectionalDistribution out;
    out.kind_ = Kind::CapMixture;
    out.d_ = d;
    out.center_ = center / n;
    out.radius_ = radius;
    out.mass_ = mass;
    out.background_ = std::make_shared<DirectionalDistribution>(std::move(background));
    return out;
}

const std::vector<Vec>& DirectionalDistribution::directions() const {
    if (kind_ != Kind::Discrete) fail(ErrorCode::Unsupported, "directions: only Discrete has atoms");
    return dirs_;
}

const std::vector<double>& DirectionalDistribution::weights() const {
    if (kind_ != Kind::Discrete) fail(ErrorCode::Unsupported, "weights: only Discrete has atoms");
    return weights_;
}

const Vec& DirectionalDistribution::cap_center() const {
    if (kind_ != Kind::CapMixture) fail(ErrorCode::Unsupported, "cap_center: not a cap mixture");
    return center_;
}

double DirectionalDistribution::cap_radius() const {
    if (kind_ != Kind::CapMixture) fail(ErrorCode::Unsupported, "cap_radius: not a cap mixture");
    return radius_;
}

double DirectionalDistribution::cap_mass() const {
    if (kind_ != Kind::CapMixture) fail(ErrorCode::Unsupported, "cap_mass: not a cap mixture");
    return mass_;
}

const DirectionalDistribution& DirectionalDistribution::background() const {
    if (kind_ != Kind::CapMixture) fail(ErrorCode::Unsupported, "background: not a cap mixture");
    return *background_;
}

Vec DirectionalDistribution::sample(RandomStream& rng) const {
    switch (kind_) {
        case Kind::Isotropic: {
            Vec u(d_);
            for (;;) {
                for (int i = 0; i < d_; ++i) u(i) = rng.gaussian();
                double n = u.norm();
                if (n > 1e-12) return u / n;
            }
        }
        case Kind::Discrete: {
            double x = rng.uniform();
            size_t idx = std::upper_bound(cumulative_.begin(), cumulative_.end(), x) - cumulative_.begin();
            if (idx >= dirs_.size()) idx = dirs_.size() - 1;
            return dirs_[idx];
        }
        case Kind::CapMixture: {
            if (rng.uniform() >= mass_) return background_->sample(rng);
            const double theta_max = std::acos(1.0 - radius_);
            double theta;
            if (d_ == 2) {
                theta = (2.0 * rng.uniform() - 1.0) * theta_max;
            } else {
                // Rejection under the flat envelope; sin is increasing on
                // [0, theta_max] because radius < 1 keeps theta_max < pi/2.
                const double top = std::pow(std::sin(theta_max), d_ - 2);
                for (;;) {
                    theta = rng.uniform() * theta_max;
                    if (rng.uniform() * top <= std::pow(std::sin(theta), d_ - 2)) break;
                }
            }
            Vec u;
            if (d_ == 2) {
                double base = std::atan2(center_(1), center_(0));
                u = Vec(2);
                u << std::cos(base + theta), std::sin(base + theta);
            } else {
                Vec g(d_);
                for (;;) {
                    for (int i = 0; i < d_; ++i) g(i) = rng.gaussian();
                    g -= g.dot(center_) * center_;
                    double n = g.norm();
                    if (n > 1e-12) {
                        g /= n;
                        break;
                    }
                }
                u = std::cos(theta) * center_ + std::sin(theta) * g;
            }
            return rng.sign() > 0 ? u : Vec(-u); // even pair of caps
        }
    }
    fail(ErrorCode::InvalidArgument, "sample: corrupt distribution");
}

std::optional<WellSpreadWitness> DirectionalDistribution::well_spread_witness() const {
    switch (kind_) {
        case Kind::Isotropic: {
            WellSpreadWitness w;
            w.cap_center = Vec::Zero(d_);
            w.cap_center(0) = 1.0;
            w.r = 0.5;
            w.c5 = 1.0 / sphere_area(d_); // uniform density 1/(d kappa_d)
            return w;
        }
        case Kind::Discrete:
            return std::nullopt; // atoms admit no surface-density lower bound
        case Kind::CapMixture: {
            WellSpreadWitness w;
            w.cap_center = center_;
            w.r = radius_;
            w.c5 = (mass_ / 2.0) / cap_area(d_, radius_);
            if (background_->kind() == Kind::Isotropic) w.c5 += (1.0 - mass_) / sphere_area(d_);
            return w;
        }
    }
    return std::nullopt;
}

int DirectionalDistribution::n_max() const {
    if (kind_ != Kind::Discrete)
        fail(ErrorCode::Unsupported, "n_max: only discrete distributions bound the facet count");
    return static_cast<int>(dirs_.size());
}

double DirectionalDistribution::abs_moment(const Vec& v, int samples) const {
    if (v.size() != d_) fail(ErrorCode::InvalidArgument, "abs_moment: dimension mismatch");
    Vec vv = v;
    double n = vv.norm();
    if (n < 1e-12) fail(ErrorCode::InvalidArgument, "abs_moment: zero direction");
    vv /= n;
    switch (kind_) {
        case Kind::Discrete: {
            double acc = 0.0;
            for (size_t i = 0; i < dirs_.size(); ++i) acc += weights_[i] * std::abs(vv.dot(dirs_[i]));
            return acc;
        }
        case Kind::Isotropic:
            // E|<v,u>| = 2 kappa_{d-1} / (d kappa_d), independent of v.
            return 2.0 * unit_ball_volume(d_ - 1) / (d_ * unit_ball_volume(d_));
        case Kind::CapMixture: {
            RandomStream rng(0xab5010c4e5ULL);
            double acc = 0.0;
            for (int s = 0; s < samples; ++s) acc += std::abs(vv.dot(sample(rng)));
            return acc / samples;
        }
    }
    fail(ErrorCode::InvalidArgument, "abs_moment: corrupt distribution");
}

double DirectionalDistribution::c_phi_lower_bound(int samples) const {
    if (kind_ == Kind::Isotropic) return d_ * unit_ball_volume(d_) / unit_ball_volume(d_ - 1);
    if (samples < 0) fail(ErrorCode::InvalidArgument, "c_phi_lower_bound: negative sample count");
    std::vector<Vec> candidates;
    if (kind_ == Kind::Discrete) candidates = dirs_;
    if (kind_ == Kind::CapMixture) candidates.push_back(center_);
    RandomStream rng(0xc9f10e5eedULL); // fixed stream keeps the sup monotone in samples
    auto iso = isotropic(d_);
    for (int s = 0; s < samples; ++s) candidates.push_back(iso.sample(rng));
    double best = 0.0;
    for (const auto& v : candidates) {
        double m = abs_moment(v);
        if (m > 1e-12) best = std::max(best, 2.0 / m);
    }
    return best;
}

std::string DirectionalDistribution::to_json() const {
    json j;
    switch (kind_) {
        case Kind::Isotropic:
            j["kind"] = "isotropic";
            j["d"] = d_;
            break;
        case Kind::Discrete: {
            j["kind"] = "discrete";
            auto dirs = json::array();
            for (const auto& u : dirs_) dirs.push_back(vec_to_json(u));
            j["directions"] = dirs;
            j["weights"] = weights_;
            break;
        }
        case Kind::CapMixture:
            j["kind"] = "cap_mixture";
            j["center"] = vec_to_json(center_);
            j["radius"] = radius_;
            j["mass"] = mass_;
            j["background"] = json::parse(background_->to_json());
            break;
    }
    return j.dump();
}

DirectionalDistribution DirectionalDistribution::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorCode::Io, std::string("distribution json: parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        fail(ErrorCode::Io, "distribution json: missing string field 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "isotropic") {
        if (!j.contains("d") || !j["d"].is_number_integer())
            fail(ErrorCode::Io, "distribution json: isotropic needs integer 'd'");
        return isotropic(j["d"].get<int>());
    }
    if (kind == "discrete") {
        if (!j.contains("directions") || !j["directions"].is_array() || j["directions"].empty())
            fail(ErrorCode::Io, "distribution json: discrete needs nonempty 'directions'");
        if (!j.contains("weights") || !j["weights"].is_array())
            fail(ErrorCode::Io, "distribution json: discrete needs 'weights'");
        std::vector<Vec> dirs;
        for (const auto& a : j["directions"]) dirs.push_back(json_to_vec(a, "direction"));
        std::vector<double> ws;
        for (const auto& w : j["weights"]) {
            if (!w.is_number()) fail(ErrorCode::Io, "distribution json: weights must be numbers");
            ws.push_back(w.get<double>());
        }
        return discrete(std::move(dirs), std::move(ws));
    }
    if (kind == "cap_mixture") {
        for (const char* key : {"center", "radius", "mass", "background"})
            if (!j.contains(key)) fail(ErrorCode::Io, std::string("distribution json: cap_mixture needs '") + key + "'");
        return cap_mixture(json_to_vec(j["center"], "center"), j["radius"].get<double>(), j["mass"].get<double>(),
                           from_json(j["background"].dump()));
    }
    fail(ErrorCode::Io, "distribution json: unknown kind '" + kind + "'");
}

} // namespace hypercell::direction
