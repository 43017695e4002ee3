#include "process/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hypercell::process {

namespace {

struct Line {
    Vec n;       // unit normal, <n,x> = t
    double t;
    Vec v;       // unit direction, n rotated +90 degrees
    double lo;   // parameter range after clipping, s = <v,x>
    double hi;
    std::vector<std::pair<double, int>> pts; // (parameter, vertex id) on the line
};

Vec make2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

// Convex ccw polygon to a Polytope, bypassing the incremental kernel: the
// cycle already is the exact vertex/facet structure, facet k joining vertex k
// to k+1.
geom::Polytope polygon_to_polytope(const std::vector<Vec>& cycle) {
    const int m = static_cast<int>(cycle.size());
    geom::Polytope p;
    p.dim = 2;
    p.vertices = cycle;
    p.halfspaces.reserve(m);
    p.vertex_facets.assign(m, {});
    for (int k = 0; k < m; ++k) {
        const Vec& a = cycle[k];
        const Vec& b = cycle[(k + 1) % m];
        Vec e = b - a;
        double len = e.norm();
        if (!(len > 0.0)) fail(ErrorCode::Numeric, "arrangement: zero-length face edge");
        Vec out = make2(e(1) / len, -e(0) / len); // right of the ccw direction
        p.halfspaces.push_back(geom::Halfspace::from_constraint(out, out.dot(a)));
        int kn = (k + 1) % m;
        p.vertex_facets[k].push_back(k);
        p.vertex_facets[kn].push_back(k);
    }
    for (auto& inc : p.vertex_facets) std::sort(inc.begin(), inc.end());
    return p;
}

} // namespace

std::vector<CellRecord> planar_arrangement_cells(double half_side, const ProcessConfig& cfg,
                                                 RandomStream& rng, const ArrangementOptions& opts,
                                                 ArrangementStats* stats) {
    cfg.validate();
    if (cfg.d != 2) fail(ErrorCode::Unsupported, "planar_arrangement_cells: requires d = 2");
    if (!(half_side > 0.0) || !std::isfinite(half_side))
        fail(ErrorCode::InvalidArgument, "planar_arrangement_cells: half_side must be finite and > 0");
    if (!(opts.margin_fraction >= 0.0) || !(opts.margin_fraction < 0.5))
        fail(ErrorCode::InvalidArgument, "planar_arrangement_cells: margin_fraction must lie in [0, 0.5)");
    if (!(opts.enlarge_fraction > 0.0))
        fail(ErrorCode::InvalidArgument, "planar_arrangement_cells: enlarge_fraction must be > 0");

    const double S = half_side * (1.0 + opts.enlarge_fraction); // build-box half-side
    const double w_in = half_side * (1.0 - 2.0 * opts.margin_fraction);
    const double eps_s = 1e-9 * S;  // parameter slack for on-segment tests
    const double tol_in = 1e-12 * S;

    // Build box first (indices 0..3), then the process lines clipped to it.
    std::vector<Line> lines;
    for (int axis = 0; axis < 2; ++axis)
        for (int sgn : {1, -1}) {
            Line L;
            L.n = make2(axis == 0 ? sgn : 0.0, axis == 1 ? sgn : 0.0);
            L.t = S;
            L.v = make2(-L.n(1), L.n(0));
            L.lo = -S;
            L.hi = S;
            lines.push_back(std::move(L));
        }

    std::vector<geom::Halfspace> box_hs;
    for (int i = 0; i < 4; ++i) box_hs.push_back(geom::Halfspace::make(lines[i].n, S, -1));
    geom::Polytope box = geom::intersect_or_throw(box_hs);

    for (const Hit& h : sample_hits(box, cfg, rng)) {
        Line L;
        L.n = h.u;
        L.t = h.t;
        L.v = make2(-h.u(1), h.u(0));
        Vec p0 = h.t * h.u;
        L.lo = -std::numeric_limits<double>::infinity();
        L.hi = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4; ++i) {
            double a = lines[i].n.dot(L.v);
            double c = S - lines[i].n.dot(p0);
            if (std::abs(a) < 1e-14) {
                if (c < 0.0) L.hi = L.lo - 1.0; // parallel and outside
            } else if (a > 0.0) {
                L.hi = std::min(L.hi, c / a);
            } else {
                L.lo = std::max(L.lo, c / a);
            }
        }
        if (L.hi - L.lo > eps_s) lines.push_back(std::move(L)); // drop tangent grazes
    }

    // Vertices are pairwise line intersections inside both parameter ranges.
    const size_t nl = lines.size();
    std::vector<Vec> vpos;
    for (size_t i = 0; i < nl; ++i)
        for (size_t j = i + 1; j < nl; ++j) {
            double det = lines[i].n(0) * lines[j].n(1) - lines[i].n(1) * lines[j].n(0);
            if (std::abs(det) < 1e-12) continue; // parallel
            Vec x = make2((lines[i].t * lines[j].n(1) - lines[j].t * lines[i].n(1)) / det,
                          (lines[i].n(0) * lines[j].t - lines[j].n(0) * lines[i].t) / det);
            double si = lines[i].v.dot(x) - lines[i].v.dot(lines[i].t * lines[i].n);
            double sj = lines[j].v.dot(x) - lines[j].v.dot(lines[j].t * lines[j].n);
            if (si < lines[i].lo - eps_s || si > lines[i].hi + eps_s) continue;
            if (sj < lines[j].lo - eps_s || sj > lines[j].hi + eps_s) continue;
            int id = static_cast<int>(vpos.size());
            vpos.push_back(x);
            lines[i].pts.emplace_back(std::clamp(si, lines[i].lo, lines[i].hi), id);
            lines[j].pts.emplace_back(std::clamp(sj, lines[j].lo, lines[j].hi), id);
        }

    // Half-edges 2m (a -> b) and 2m+1 (b -> a) per segment between
    // consecutive points along a line.
    std::vector<int> he_tail, he_head;
    std::vector<int> degree(vpos.size(), 0);
    for (auto& L : lines) {
        std::sort(L.pts.begin(), L.pts.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (size_t k = 0; k + 1 < L.pts.size(); ++k) {
            if (L.pts[k + 1].first - L.pts[k].first <= eps_s) {
                if (L.pts[k + 1].second == L.pts[k].second) continue;
                fail(ErrorCode::Degenerate, "planar_arrangement_cells: near-concurrent lines");
            }
            int a = L.pts[k].second, b = L.pts[k + 1].second;
            he_tail.push_back(a);
            he_head.push_back(b);
            he_tail.push_back(b);
            he_head.push_back(a);
            ++degree[a];
            ++degree[b];
        }
    }
    const size_t nhe = he_tail.size();

    // next(h) = the outgoing edge at head(h) immediately clockwise of
    // twin(h); traced faces keep their interior on the left.
    std::vector<std::vector<int>> outgoing(vpos.size());
    for (size_t h = 0; h < nhe; ++h) outgoing[he_tail[h]].push_back(static_cast<int>(h));
    std::vector<double> he_angle(nhe);
    for (size_t h = 0; h < nhe; ++h) {
        Vec dir = vpos[he_head[h]] - vpos[he_tail[h]];
        he_angle[h] = std::atan2(dir(1), dir(0));
    }
    std::vector<int> he_rank(nhe);
    for (auto& out : outgoing) {
        std::sort(out.begin(), out.end(), [&](int a, int b) { return he_angle[a] < he_angle[b]; });
        for (size_t k = 0; k < out.size(); ++k) he_rank[out[k]] = static_cast<int>(k);
    }
    auto next_he = [&](int h) {
        int twin = h ^ 1;
        const auto& out = outgoing[he_tail[twin]];
        return out[(he_rank[twin] + out.size() - 1) % out.size()];
    };

    size_t used_vertices = 0;
    for (int dg : degree) {
        if (dg == 0) fail(ErrorCode::Numeric, "planar_arrangement_cells: isolated vertex");
        ++used_vertices;
    }

    std::vector<CellRecord> records;
    std::vector<char> visited(nhe, 0);
    size_t bounded_faces = 0, outer_faces = 0;
    double kept_area = 0.0;
    for (size_t h0 = 0; h0 < nhe; ++h0) {
        if (visited[h0]) continue;
        std::vector<Vec> cycle;
        int h = static_cast<int>(h0);
        double area2 = 0.0;
        do {
            visited[h] = 1;
            const Vec& a = vpos[he_tail[h]];
            const Vec& b = vpos[he_head[h]];
            area2 += a(0) * b(1) - b(0) * a(1);
            cycle.push_back(a);
            h = next_he(h);
        } while (h != static_cast<int>(h0));
        if (area2 <= 0.0) {
            ++outer_faces;
            continue;
        }
        ++bounded_faces;

        bool inside = true;
        for (const Vec& p : cycle)
            if (std::abs(p(0)) > half_side + tol_in || std::abs(p(1)) > half_side + tol_in) {
                inside = false;
                break;
            }
        if (!inside) continue;

        // Polygon centroid; faces of a line arrangement are convex and ccw.
        double cx = 0.0, cy = 0.0;
        const size_t m = cycle.size();
        for (size_t k = 0; k < m; ++k) {
            const Vec& a = cycle[k];
            const Vec& b = cycle[(k + 1) % m];
            double cross = a(0) * b(1) - b(0) * a(1);
            cx += (a(0) + b(0)) * cross;
            cy += (a(1) + b(1)) * cross;
        }
        cx /= 3.0 * area2;
        cy /= 3.0 * area2;
        if (std::abs(cx) > w_in || std::abs(cy) > w_in) continue;

        records.push_back(make_record(polygon_to_polytope(cycle), cfg, SamplerKind::Arrangement, 1.0,
                                      &rng, opts.mc_samples));
        kept_area += 0.5 * area2;
    }

    if (outer_faces != 1)
        fail(ErrorCode::Numeric, "planar_arrangement_cells: expected one unbounded face, got " +
                                     std::to_string(outer_faces));
    // Euler's relation for the connected planar graph, counting bounded faces.
    if (used_vertices + bounded_faces != nhe / 2 + 1)
        fail(ErrorCode::Numeric, "planar_arrangement_cells: Euler check failed");

    if (stats) {
        stats->vertices = used_vertices;
        stats->edges = nhe / 2;
        stats->bounded_faces = bounded_faces;
        stats->kept_area = kept_area;
    }
    return records;
}

} // namespace hypercell::process
