#include "process/hits.hpp"

#include <cmath>

namespace hypercell::process {

void ProcessConfig::validate() const {
    if (d < 1) fail(ErrorCode::InvalidArgument, "ProcessConfig: dimension must be >= 1");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        fail(ErrorCode::InvalidArgument, "ProcessConfig: gamma must be finite and > 0");
    if (phi.dim() != d) fail(ErrorCode::InvalidArgument, "ProcessConfig: phi dimension mismatch");
}

std::vector<Hit> sample_hits(double radius, const ProcessConfig& cfg, RandomStream& rng) {
    return sample_hits_shell(0.0, radius, cfg, rng);
}

std::vector<Hit> sample_hits_shell(double radius_lo, double radius_hi, const ProcessConfig& cfg,
                                   RandomStream& rng) {
    cfg.validate();
    if (!(radius_lo >= 0.0) || !(radius_hi > radius_lo) || !std::isfinite(radius_hi))
        fail(ErrorCode::InvalidArgument, "sample_hits_shell: need 0 <= radius_lo < radius_hi < inf");
    // The intensity measure factorizes as gamma * dt * phi(du), so the count
    // on the offset band is Poisson(gamma * band width) and (u, t) are
    // independent with t uniform on the band.
    uint64_t n = rng.poisson(cfg.gamma * (radius_hi - radius_lo));
    std::vector<Hit> hits;
    hits.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
        Hit h;
        h.u = cfg.phi.sample(rng);
        h.t = rng.uniform(radius_lo, radius_hi);
        hits.push_back(std::move(h));
    }
    return hits;
}

std::vector<Hit> sample_hits(double radius, const std::function<double(const Vec&)>& support,
                             const ProcessConfig& cfg, RandomStream& rng) {
    if (!support) fail(ErrorCode::InvalidArgument, "sample_hits: null support function");
    std::vector<Hit> ball = sample_hits(radius, cfg, rng);
    std::vector<Hit> kept;
    kept.reserve(ball.size());
    for (auto& h : ball) {
        double s = support(h.u);
        if (!(s >= 0.0) || s > radius * (1.0 + 1e-12))
            fail(ErrorCode::InvalidArgument, "sample_hits: support function outside [0, radius]");
        // A hyperplane at offset t meets the window iff t <= h(K, u); thinning
        // the ball draw keeps exactly intensity gamma * Phi(K).
        if (h.t <= s) kept.push_back(std::move(h));
    }
    return kept;
}

std::vector<Hit> sample_hits(const geom::Polytope& window, const ProcessConfig& cfg, RandomStream& rng) {
    if (window.dim != cfg.d) fail(ErrorCode::InvalidArgument, "sample_hits: window dimension mismatch");
    if (!window.contains(Vec::Zero(window.dim)))
        fail(ErrorCode::InvalidArgument, "sample_hits: window must contain the origin");
    double radius = window.circumradius();
    return sample_hits(radius, [&window](const Vec& u) { return window.support(u); }, cfg, rng);
}

} // namespace hypercell::process
