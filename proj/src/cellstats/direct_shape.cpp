#include "cellstats/direct_shape.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "common.hpp"
#include "geom/polytope.hpp"
#include "geom/volumes.hpp"

namespace hypercell::cellstats {

using geom::Halfspace;
using geom::Polytope;
using geom::Vec;
using process::CellRecord;
using process::SamplerKind;

namespace {

// Any convex K satisfies diam(K) <= 2 Phi(K) / min_v E_phi |<u, v>| because a
// diameter segment already contributes that much width in its own direction.
// The minimum over v is estimated from a fixed stream, so the cap is a
// deterministic function of phi and the options.
double fitted_diameter_bound(const process::ProcessConfig& cfg, const DirectShapeOptions& opts) {
    RandomStream rng(0x5ca1ab1e0dULL);
    std::vector<Vec> batch;
    batch.reserve(static_cast<std::size_t>(opts.calibration_samples));
    for (int i = 0; i < opts.calibration_samples; ++i) batch.push_back(cfg.phi.sample(rng));

    auto mean_abs = [&](const Vec& v) {
        double s = 0.0;
        for (const Vec& u : batch) s += std::abs(u.dot(v));
        return s / static_cast<double>(batch.size());
    };

    double worst = std::numeric_limits<double>::infinity();
    // Candidate directions: uniform on the sphere plus the sampled atoms
    // themselves, which are the minimizers for discrete distributions.
    for (int i = 0; i < opts.calibration_directions; ++i) {
        Vec v(cfg.d);
        do
            for (int k = 0; k < cfg.d; ++k) v[k] = rng.gaussian();
        while (v.norm() < 1e-12);
        worst = std::min(worst, mean_abs(v / v.norm()));
    }
    for (int i = 0; i < std::min(opts.calibration_directions, opts.calibration_samples); ++i)
        worst = std::min(worst, mean_abs(batch[static_cast<std::size_t>(i)]));
    if (!(worst > 0.0))
        fail(ErrorCode::Degenerate, "direct_shape_sampler: directional distribution concentrates "
                                    "on a hyperplane, diameter is unbounded at fixed content");
    return 2.0 / worst;
}

// Cheap planar pre-filter: clip a generous box by the halfplanes and apply
// the geometric acceptance conditions (bounded, every constraint a facet,
// centroid in the unit square).  Accepted candidates are rebuilt through the
// exact kernel, so a false positive here costs time, never correctness; any
// valid candidate lies in B(0, t_cap), far inside the clip box, so polygons
// still touching the box reject outright.
bool planar_candidate(const std::vector<Halfspace>& hs, double t_cap) {
    struct Pt {
        double x, y;
        int edge; // constraint owning the outgoing edge, -1 for the clip box
    };
    const double C = 4.0 * t_cap;
    std::vector<Pt> poly = {{-C, -C, -1}, {C, -C, -1}, {C, C, -1}, {-C, C, -1}};
    std::vector<Pt> next;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const Vec a = hs[i].a();
        const double b = hs[i].b();
        next.clear();
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const Pt& p = poly[k];
            const Pt& q = poly[(k + 1) % poly.size()];
            double sp = a[0] * p.x + a[1] * p.y - b;
            double sq = a[0] * q.x + a[1] * q.y - b;
            if (sp <= 0.0) next.push_back(p);
            if ((sp <= 0.0) != (sq <= 0.0)) {
                double f = sp / (sp - sq);
                Pt cut{p.x + f * (q.x - p.x), p.y + f * (q.y - p.y), sp <= 0.0 ? static_cast<int>(i) : p.edge};
                next.push_back(cut);
            }
        }
        poly.swap(next);
        if (poly.size() < 3) return false;
    }

    const double len_eps = 1e-12 * t_cap;
    std::vector<char> seen(hs.size(), 0);
    int distinct = 0;
    double area2 = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Pt& p = poly[k];
        const Pt& q = poly[(k + 1) % poly.size()];
        if (std::hypot(q.x - p.x, q.y - p.y) <= len_eps) continue;
        if (p.edge < 0) return false; // still touching the clip box
        if (!seen[static_cast<std::size_t>(p.edge)]) {
            seen[static_cast<std::size_t>(p.edge)] = 1;
            ++distinct;
        }
        double cross = p.x * q.y - q.x * p.y;
        area2 += cross;
        cx += (p.x + q.x) * cross;
        cy += (p.y + q.y) * cross;
    }
    if (distinct != static_cast<int>(hs.size())) return false;
    if (area2 <= len_eps * len_eps) return false;
    cx /= 3.0 * area2;
    cy /= 3.0 * area2;
    return cx >= 0.0 && cx <= 1.0 && cy >= 0.0 && cy <= 1.0;
}

} // namespace

DirectShapeSampler::DirectShapeSampler(int n, const process::ProcessConfig& cfg, DirectShapeOptions opts)
    : n_(n), cfg_(cfg), opts_(opts) {
    cfg_.validate();
    if (n < cfg.d + 1)
        fail(ErrorCode::InvalidArgument, "direct_shape_sampler: need n >= d+1, got n = " + std::to_string(n));
    if (!(opts.cap_inflation >= 1.0))
        fail(ErrorCode::InvalidArgument, "direct_shape_sampler: cap_inflation below 1");
    t_cap_ = std::sqrt(static_cast<double>(cfg.d)) + opts.cap_inflation * fitted_diameter_bound(cfg_, opts_);
}

CellRecord DirectShapeSampler::sample(RandomStream& rng, std::size_t max_attempts) {
    if (max_attempts == 0) fail(ErrorCode::InvalidArgument, "direct_shape_sampler: zero attempts");
    std::vector<Halfspace> hs;
    for (std::size_t local = 0; local < max_attempts; ++local) {
        ++attempts_;
        hs.clear();
        for (int i = 0; i < n_; ++i) {
            Vec u = cfg_.phi.sample(rng);
            int side = rng.sign();
            double t = rng.uniform(0.0, t_cap_);
            hs.push_back(Halfspace::make(u, t, side));
        }
        if (cfg_.d == 2 && !planar_candidate(hs, t_cap_)) continue;
        Polytope p;
        try {
            geom::BuildResult built = geom::intersect_halfspaces(hs);
            if (!std::holds_alternative<Polytope>(built)) continue;
            p = std::get<Polytope>(std::move(built));
        } catch (const Error&) {
            // Ill-conditioned draws (near-parallel constraints) fail the
            // kernel's certificate audits; they are rejections, not errors.
            continue;
        }
        if (p.f() != n_) continue;

        geom::VolumeData vc = geom::volume_centroid(p);
        bool inside = true;
        for (int k = 0; k < cfg_.d && inside; ++k) inside = vc.centroid[k] >= 0.0 && vc.centroid[k] <= 1.0;
        if (!inside) continue;

        CellRecord rec = process::make_record(std::move(p), cfg_, SamplerKind::DirectShape, 1.0, &rng,
                                              opts_.mc_samples);
        if (!(rec.phi_content < 1.0)) continue;

        for (const Halfspace& h : hs) {
            double support = rec.polytope.support(h.u);
            if (h.t > support + 1e-9 * std::max(1.0, support) || support >= t_cap_)
                fail(ErrorCode::Numeric, "direct_shape_sampler: offset cap certificate failed, "
                                         "support " + std::to_string(support) + " vs cap " +
                                             std::to_string(t_cap_));
        }
        ++accepts_;
        return rec;
    }
    double rate = attempts_ ? static_cast<double>(accepts_) / static_cast<double>(attempts_) : 0.0;
    fail(ErrorCode::Exhausted, "direct_shape_sampler: no acceptance in " + std::to_string(max_attempts) +
                                   " attempts (lifetime acceptance rate " + std::to_string(rate) + ")");
}

CellRecord direct_shape_sampler(int n, const process::ProcessConfig& cfg, RandomStream& rng,
                                std::size_t max_attempts) {
    DirectShapeSampler sampler(n, cfg);
    return sampler.sample(rng, max_attempts);
}

} // namespace hypercell::cellstats
