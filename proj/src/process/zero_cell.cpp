#include "process/zero_cell.hpp"

#include <cmath>

#include "geom/volumes.hpp"

namespace hypercell::process {

geom::Polytope zero_cell_polytope(const ProcessConfig& cfg, RandomStream& rng,
                                  const ZeroCellOptions& opts) {
    cfg.validate();
    if (!(opts.radius_cap > 0.0)) fail(ErrorCode::InvalidArgument, "zero_cell: radius_cap must be > 0");

    PoissonHitSource poisson(cfg);
    HitSource& source = opts.source ? *opts.source : poisson;

    double radius = 1.0 / cfg.gamma;
    const double max_radius = opts.radius_cap / cfg.gamma;
    std::vector<Hit> hits = source.shell(0.0, radius, rng);

    for (;;) {
        // All offsets are positive a.s., so the origin is strictly interior
        // and the intersection is full-dimensional whenever it is bounded.
        if (hits.size() >= static_cast<size_t>(cfg.d) + 1) {
            std::vector<geom::Halfspace> hs;
            hs.reserve(hits.size());
            for (const auto& h : hits) hs.push_back(h.origin_side());
            auto res = geom::intersect_halfspaces(hs);
            if (auto* p = std::get_if<geom::Polytope>(&res)) {
                double reach = 0.0;
                for (const auto& v : p->vertices) reach = std::max(reach, v.norm());
                // Containment in B(0, R/2) certifies the cell: a hyperplane
                // cutting it would have offset <= sup h(cell) <= R/2, hence
                // was already drawn.
                if (reach <= 0.5 * radius) return std::move(*p);
            } else {
                auto& deg = std::get<geom::Degenerate>(res);
                if (deg.kind != geom::DegenerateKind::Unbounded)
                    fail(ErrorCode::Numeric, std::string("zero_cell: unexpected degeneracy: ") + deg.detail);
            }
        }
        if (2.0 * radius > max_radius)
            fail(ErrorCode::NonTermination,
                 "zero_cell: cell still unresolved at radius " + to_str(radius) + ", cap " + to_str(max_radius));
        std::vector<Hit> shell = source.shell(radius, 2.0 * radius, rng);
        for (auto& h : shell) hits.push_back(std::move(h));
        radius *= 2.0;
    }
}

CellRecord zero_cell(const ProcessConfig& cfg, RandomStream& rng, const ZeroCellOptions& opts) {
    geom::Polytope cell = zero_cell_polytope(cfg, rng, opts);
    double volume = geom::volume_centroid(cell).volume;
    if (!(volume > 0.0)) fail(ErrorCode::Numeric, "zero_cell: nonpositive cell volume");
    return make_record(std::move(cell), cfg, SamplerKind::ZeroCell, 1.0 / volume, &rng, opts.mc_samples);
}

} // namespace hypercell::process
