#include "geom/polytope.hpp"

#ifdef HC_DEBUG_AUDIT
#include <iostream>
#endif

#include <algorithm>
#include <limits>

#include "random.hpp"

namespace hypercell::geom {

namespace {

constexpr double kRankTol = 1e-7;

int shared_count(const std::vector<int>& a, const std::vector<int>& b) {
    // Both sorted ascending.
    int n = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

std::vector<int> shared_ids(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Rank of the row span of M with a relative singular-value cutoff.
int numeric_rank(const Mat& m, double rel_tol) {
    if (m.rows() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(m);
    double top = svd.singularValues()(0);
    if (top <= 0.0) return 0;
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > rel_tol * top) ++r;
    return r;
}

struct Constraint {
    Vec a;
    double b = 0.0;
    bool pseudo = false; // bounding-box helper, not part of the input
    int input_id = -1;
};

// Incremental cut state: vertex coordinates plus sorted incident-constraint ids.
struct Builder {
    int d;
    double tol;
    std::vector<Constraint> cons;
    std::vector<Vec> verts;
    std::vector<std::vector<int>> inc;

    Builder(int dim, double tolerance) : d(dim), tol(tolerance) {}

    void seed_box(double radius) {
        // Constraint ids 0..2d-1: even = lower bound on coordinate, odd = upper.
        for (int j = 0; j < d; ++j) {
            Constraint lo, hi;
            lo.a = Vec::Zero(d);
            lo.a(j) = -1.0;
            lo.b = radius;
            lo.pseudo = true;
            hi.a = Vec::Zero(d);
            hi.a(j) = 1.0;
            hi.b = radius;
            hi.pseudo = true;
            cons.push_back(lo);
            cons.push_back(hi);
        }
        int corners = 1 << d;
        for (int mask = 0; mask < corners; ++mask) {
            Vec v(d);
            std::vector<int> ids(d);
            for (int j = 0; j < d; ++j) {
                bool high = (mask >> j) & 1;
                v(j) = high ? radius : -radius;
                ids[j] = 2 * j + (high ? 1 : 0);
            }
            std::sort(ids.begin(), ids.end());
            verts.push_back(v);
            inc.push_back(ids);
        }
    }

    // Inserts constraint `cid` (already in cons).  Returns a degeneracy when the
    // feasible set loses full dimension, nullopt otherwise.
    std::optional<Degenerate> insert(int cid) {
        const Constraint& c = cons[cid];
        const size_t nv = verts.size();
        std::vector<double> slack(nv);
        bool any_above = false, any_below = false;
        for (size_t i = 0; i < nv; ++i) {
            slack[i] = c.b - c.a.dot(verts[i]);
            if (slack[i] < -tol) any_above = true;
            if (slack[i] > tol) any_below = true;
        }
        if (!any_above) return std::nullopt; // redundant at this stage, stays redundant
        if (!any_below) {
            bool any_on = false;
            for (size_t i = 0; i < nv; ++i)
                if (slack[i] >= -tol) any_on = true;
            if (!any_on) return Degenerate{DegenerateKind::Empty, "all vertices violate a constraint"};
            return Degenerate{DegenerateKind::LowerDimensional, "feasible set collapses onto a hyperplane"};
        }

        std::vector<size_t> below, above;
        for (size_t i = 0; i < nv; ++i) {
            if (slack[i] < -tol) {
                above.push_back(i);
            } else if (slack[i] > tol) {
                below.push_back(i);
            } else {
                // Grazing vertex: stays, gains the new incidence.
                inc[i].insert(std::lower_bound(inc[i].begin(), inc[i].end(), cid), cid);
            }
        }

        std::vector<Vec> fresh;
        std::vector<std::vector<int>> fresh_inc;
        for (size_t ib : below) {
            for (size_t ia : above) {
                if (shared_count(inc[ib], inc[ia]) < d - 1) continue; // cheap prefilter
                std::vector<int> shared = shared_ids(inc[ib], inc[ia]);
                // Adjacency by combinatorial maximality: the pair spans an edge
                // iff no third vertex lies on every plane the pair shares.  The
                // incidence-count prefilter alone admits spurious cut points in
                // near-degenerate positions (features close to tolerance).
                bool edge = true;
                for (size_t k = 0; k < nv && edge; ++k) {
                    if (k == ib || k == ia) continue;
                    if (std::includes(inc[k].begin(), inc[k].end(), shared.begin(), shared.end())) edge = false;
                }
                if (!edge) continue;
                double s = slack[ib] / (slack[ib] - slack[ia]); // denominator > 2*tol
                Vec w = verts[ib] + s * (verts[ia] - verts[ib]);
                shared.insert(std::lower_bound(shared.begin(), shared.end(), cid), cid);
                merge_vertex(fresh, fresh_inc, w, std::move(shared));
            }
        }

        // Drop the cut-off vertices, append the section vertices.
        std::vector<Vec> kept;
        std::vector<std::vector<int>> kept_inc;
        kept.reserve(nv);
        for (size_t i = 0; i < nv; ++i) {
            if (slack[i] >= -tol) {
                kept.push_back(std::move(verts[i]));
                kept_inc.push_back(std::move(inc[i]));
            }
        }
        for (size_t i = 0; i < fresh.size(); ++i) {
            merge_vertex(kept, kept_inc, fresh[i], fresh_inc[i]);
        }
        verts = std::move(kept);
        inc = std::move(kept_inc);
        return std::nullopt;
    }

    void merge_vertex(std::vector<Vec>& vs, std::vector<std::vector<int>>& ics, const Vec& w,
                      std::vector<int> wids) {
        double merge_tol = tol * std::max(1.0, w.norm());
        for (size_t i = 0; i < vs.size(); ++i) {
            if ((vs[i] - w).norm() <= merge_tol) {
                std::vector<int> u;
                std::set_union(ics[i].begin(), ics[i].end(), wids.begin(), wids.end(), std::back_inserter(u));
                ics[i] = std::move(u);
                return;
            }
        }
        vs.push_back(w);
        ics.push_back(std::move(wids));
    }

    bool pseudo_active() const {
        for (const auto& ids : inc)
            for (int id : ids)
                if (cons[id].pseudo) return true;
        return false;
    }
};

// True when { v : <a_i,v> <= 0 for all i } contains a nonzero direction.  The
// cone is inflated by a small slack so lower-dimensional rays stay detectable.
bool has_recession_direction(const std::vector<Constraint>& real_cons, int d, double tol) {
    Builder b(d, tol);
    b.seed_box(1.0);
    for (const auto& c : real_cons) {
        Constraint r;
        r.a = c.a;
        r.b = 1e-7;
        b.cons.push_back(r);
        auto deg = b.insert(static_cast<int>(b.cons.size()) - 1);
        if (deg) return false; // inflated cone never collapses unless numerically trivial
    }
    double reach = 0.0;
    for (const auto& v : b.verts) reach = std::max(reach, v.lpNorm<Eigen::Infinity>());
    return reach > 0.5;
}

struct Assembled {
    Polytope poly;
    std::vector<int> dropped;
};

// Shared final stage: irredundancy fixpoint, vertex rank filter, audit.
// `verts`/`inc` use constraint ids indexing `cons`; only non-pseudo constraints
// can become facets.  `scale` maps internal coordinates back to input scale.
std::variant<Assembled, Degenerate> assemble(int d, double tol, const std::vector<Constraint>& cons,
                                             std::vector<Vec> verts, std::vector<std::vector<int>> inc,
                                             const std::vector<Halfspace>& input, double scale) {
    const int nc = static_cast<int>(cons.size());
    std::vector<bool> facet(nc, false);
    std::vector<bool> vertex_ok(verts.size(), true);

    bool changed = true;
    while (changed) {
        changed = false;
        // Facet test: >= d incident valid vertices spanning an affine (d-1)-flat.
        std::vector<std::vector<int>> members(nc);
        for (size_t i = 0; i < verts.size(); ++i) {
            if (!vertex_ok[i]) continue;
            for (int id : inc[i])
                if (!cons[id].pseudo) members[id].push_back(static_cast<int>(i));
        }
        for (int c = 0; c < nc; ++c) {
            if (cons[c].pseudo) continue;
            bool ok = false;
            if (static_cast<int>(members[c].size()) >= d) {
                Mat m(members[c].size() - 1, d);
                const Vec& v0 = verts[members[c][0]];
                for (size_t r = 1; r < members[c].size(); ++r) m.row(r - 1) = (verts[members[c][r]] - v0).transpose();
                ok = numeric_rank(m, kRankTol) >= d - 1;
            }
            if (facet[c] != ok) changed = true;
            facet[c] = ok;
        }
        // Vertex test: incident facet normals must span R^d (a true 0-face).
        for (size_t i = 0; i < verts.size(); ++i) {
            if (!vertex_ok[i]) continue;
            std::vector<int> ids;
            for (int id : inc[i])
                if (!cons[id].pseudo && facet[id]) ids.push_back(id);
            bool ok = static_cast<int>(ids.size()) >= d;
            if (ok) {
                Mat m(ids.size(), d);
                for (size_t r = 0; r < ids.size(); ++r) m.row(r) = cons[ids[r]].a.transpose();
                ok = numeric_rank(m, kRankTol) == d;
            }
            if (ok != vertex_ok[i]) changed = true;
            vertex_ok[i] = ok;
            if (ok) inc[i] = std::move(ids);
        }
    }

    std::vector<int> facet_ids;
    for (int c = 0; c < nc; ++c)
        if (facet[c]) facet_ids.push_back(c);
    std::sort(facet_ids.begin(), facet_ids.end(),
              [&](int x, int y) { return cons[x].input_id < cons[y].input_id; });

    size_t nverts = 0;
    for (bool ok : vertex_ok)
        if (ok) ++nverts;
    if (facet_ids.size() < static_cast<size_t>(d) + 1 || nverts < static_cast<size_t>(d) + 1)
        return Degenerate{DegenerateKind::LowerDimensional, "no full-dimensional feasible set at tolerance"};

    std::vector<int> remap(nc, -1);
    Assembled out;
    out.poly.dim = d;
    for (size_t k = 0; k < facet_ids.size(); ++k) {
        remap[facet_ids[k]] = static_cast<int>(k);
        out.poly.halfspaces.push_back(input[cons[facet_ids[k]].input_id]);
    }
    for (size_t i = 0; i < verts.size(); ++i) {
        if (!vertex_ok[i]) continue;
        std::vector<int> ids;
        for (int id : inc[i])
            if (remap[id] >= 0) ids.push_back(remap[id]);
        std::sort(ids.begin(), ids.end());
        out.poly.vertices.push_back(verts[i] * scale);
        out.poly.vertex_facets.push_back(std::move(ids));
    }
    for (const auto& c : cons) {
        if (!c.pseudo && c.input_id >= 0 && remap.at(&c - cons.data()) < 0) out.dropped.push_back(c.input_id);
    }
    std::sort(out.dropped.begin(), out.dropped.end());

    // Audit: every vertex satisfies every facet constraint and lies on each
    // incident facet hyperplane.  A failure means the cut arithmetic cannot be
    // trusted (ill-conditioned input), never a silent wrong polytope.
    for (size_t i = 0; i < out.poly.vertices.size(); ++i) {
        const Vec& v = out.poly.vertices[i];
        double vtol = 8.0 * tol * scale * std::max(1.0, v.norm() / scale);
        for (int k = 0; k < out.poly.f(); ++k) {
            double s = out.poly.halfspaces[k].b() - out.poly.halfspaces[k].a().dot(v);
            bool on = std::binary_search(out.poly.vertex_facets[i].begin(), out.poly.vertex_facets[i].end(), k);
            if (s < -vtol || (on && std::abs(s) > vtol)) {
#ifdef HC_DEBUG_AUDIT
                std::cerr << "AUDIT vertex " << i << " coords " << v.transpose() << "\n  inc:";
                for (int id : out.poly.vertex_facets[i]) std::cerr << " " << id;
                std::cerr << "\n  slacks:";
                for (int kk = 0; kk < out.poly.f(); ++kk)
                    std::cerr << " " << (out.poly.halfspaces[kk].b() - out.poly.halfspaces[kk].a().dot(v));
                std::cerr << "\n  failing facet " << k << " a=" << out.poly.halfspaces[k].a().transpose()
                          << " b=" << out.poly.halfspaces[k].b() << "\n";
#endif
                fail(ErrorCode::Numeric, "vertex certificate failed audit (ill-conditioned constraints): slack " +
                                             to_str(s) + " vs tolerance " + to_str(vtol) +
                                             (on ? " on incident facet" : " on violated facet"));
            }
        }
    }
    return out;
}

std::vector<Constraint> to_constraints(const std::vector<Halfspace>& hs, double scale) {
    std::vector<Constraint> cons;
    cons.reserve(hs.size());
    for (size_t i = 0; i < hs.size(); ++i) {
        Constraint c;
        c.a = hs[i].a();
        c.b = hs[i].b() / scale;
        c.input_id = static_cast<int>(i);
        cons.push_back(std::move(c));
    }
    return cons;
}

BuildResult build_once(const std::vector<Halfspace>& hs, const BuildOptions& opts, BuildReport* report,
                       double box_radius, bool* need_bigger_box) {
    const int d = static_cast<int>(hs[0].u.size());
    double bmax = 0.0;
    for (const auto& h : hs) bmax = std::max(bmax, std::abs(h.b()));
    const double scale = std::max(1.0, bmax / 10.0);

    Builder b(d, opts.tol);
    b.seed_box(box_radius);
    auto cons = to_constraints(hs, scale);
    for (auto& c : cons) b.cons.push_back(std::move(c));
    for (int cid = 2 * d; cid < static_cast<int>(b.cons.size()); ++cid) {
        auto deg = b.insert(cid);
        if (deg) return *deg;
    }

    if (b.pseudo_active()) {
        std::vector<Constraint> real(b.cons.begin() + 2 * d, b.cons.end());
        if (has_recession_direction(real, d, opts.tol))
            return Degenerate{DegenerateKind::Unbounded, "input halfspaces admit a recession direction"};
        *need_bigger_box = true;
        return Degenerate{DegenerateKind::Unbounded, "bounding box too small"}; // caller retries
    }

    auto res = assemble(d, opts.tol, b.cons, std::move(b.verts), std::move(b.inc), hs, scale);
    if (std::holds_alternative<Degenerate>(res)) return std::get<Degenerate>(res);
    auto& a = std::get<Assembled>(res);
    if (report) report->dropped = std::move(a.dropped);
    return std::move(a.poly);
}

} // namespace

BuildResult intersect_halfspaces(const std::vector<Halfspace>& hs, const BuildOptions& opts, BuildReport* report) {
    if (hs.empty()) fail(ErrorCode::InvalidArgument, "intersect_halfspaces: no halfspaces");
    const int d = static_cast<int>(hs[0].u.size());
    if (d < 1) fail(ErrorCode::InvalidArgument, "intersect_halfspaces: dimension must be >= 1");
    for (const auto& h : hs) {
        if (h.u.size() != d) fail(ErrorCode::InvalidArgument, "intersect_halfspaces: mixed dimensions");
        if (!h.u.allFinite() || !std::isfinite(h.t)) fail(ErrorCode::InvalidArgument, "non-finite halfspace");
        if (h.eps != -1 && h.eps != 1) fail(ErrorCode::InvalidArgument, "halfspace eps must be -1 or +1");
        if (h.t < 0.0) fail(ErrorCode::InvalidArgument, "halfspace offset must be >= 0");
    }

    double box = opts.initial_box;
    for (int attempt = 0; attempt < 4; ++attempt) {
        bool grow = false;
        BuildResult res = build_once(hs, opts, report, box, &grow);
        if (grow) {
            box *= 64.0;
            continue;
        }
        if (opts.require_simple && std::holds_alternative<Polytope>(res)) {
            const auto& p = std::get<Polytope>(res);
            if (!p.simplicity().simple) {
                // Seeded offset jitter puts the input in simple position.
                RandomStream rng(opts.jitter_seed ^ 0x5eeded5eULL);
                double bmax = 0.0;
                for (const auto& h : hs) bmax = std::max(bmax, std::abs(h.b()));
                double amp = 1e-12 * std::max(1.0, bmax);
                std::vector<Halfspace> jittered = hs;
                for (auto& h : jittered) h.t = std::max(0.0, h.t + amp * (2.0 * rng.uniform() - 1.0));
                BuildOptions o2 = opts;
                o2.require_simple = false;
                // The rebuild must resolve features the jitter created, which
                // live at scale amp: classify at amp/8, and start from a box
                // sized by the certified first pass so cut arithmetic on box
                // corners stays below that band (rounding grows with radius).
                double s2 = std::max(1.0, bmax / 10.0);
                o2.tol = std::min(opts.tol, amp / (8.0 * s2));
                o2.initial_box = std::max(1.0, 4.0 * p.circumradius() / s2);
                BuildResult res2 = intersect_halfspaces(jittered, o2, report);
                if (std::holds_alternative<Polytope>(res2) && std::get<Polytope>(res2).simplicity().simple) {
                    if (report) report->jittered = true;
                    return res2;
                }
                fail(ErrorCode::Numeric, "jitter failed to reach simple position");
            }
        }
        return res;
    }
    fail(ErrorCode::Numeric, "could not certify boundedness within box growth limit");
}

Polytope intersect_or_throw(const std::vector<Halfspace>& hs, const BuildOptions& opts, BuildReport* report) {
    BuildResult res = intersect_halfspaces(hs, opts, report);
    if (std::holds_alternative<Degenerate>(res)) {
        const auto& deg = std::get<Degenerate>(res);
        fail(ErrorCode::Degenerate,
             std::string("halfspace intersection degenerate (") + degenerate_kind_name(deg.kind) + "): " + deg.detail);
    }
    return std::move(std::get<Polytope>(res));
}

namespace {

BuildResult remove_facet_scratch(const Polytope& p, int facet) {
    std::vector<Halfspace> hs;
    hs.reserve(p.halfspaces.size() - 1);
    for (int k = 0; k < p.f(); ++k)
        if (k != facet) hs.push_back(p.halfspaces[k]);
    return intersect_halfspaces(hs);
}

// Local patch: rebuild only the region opened by the removed facet, bounded by
// the facets around the hole; the rim set expands until every patch vertex is
// feasible for all remaining constraints.
BuildResult remove_facet_patch(const Polytope& p, int facet) {
    const int d = p.dim;
    const double tol = 1e-9;
    const int n = p.f();
    std::vector<Vec> as(n);
    std::vector<double> bs(n);
    for (int k = 0; k < n; ++k) {
        as[k] = p.halfspaces[k].a();
        bs[k] = p.halfspaces[k].b();
    }

    std::vector<bool> in_rim(n, false);
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        if (!std::binary_search(p.vertex_facets[i].begin(), p.vertex_facets[i].end(), facet)) continue;
        for (int id : p.vertex_facets[i])
            if (id != facet) in_rim[id] = true;
    }

    const double box = 64.0 * std::max(1.0, p.circumradius());
    const double scale = std::max(1.0, p.circumradius() / 10.0);
    for (int round = 0; round < n; ++round) {
        std::vector<int> rim_ids;
        std::vector<Halfspace> sub;
        for (int k = 0; k < n; ++k) {
            if (k == facet || !in_rim[k]) continue;
            rim_ids.push_back(k);
            sub.push_back(p.halfspaces[k]);
        }
        for (int j = 0; j < d; ++j) {
            Vec e = Vec::Zero(d);
            e(j) = 1.0;
            sub.push_back(Halfspace::from_constraint(e, box));
            sub.push_back(Halfspace::from_constraint(-e, box));
        }
        BuildOptions opts;
        Polytope q = intersect_or_throw(sub, opts);

        // Patch vertices: q-vertices at or beyond the removed hyperplane.
        std::vector<Vec> patch;
        std::vector<std::vector<int>> patch_inc;
        bool expanded = false;
        for (size_t i = 0; i < q.vertices.size(); ++i) {
            const Vec& w = q.vertices[i];
            double reach = bs[facet] - as[facet].dot(w);
            if (reach > tol * scale) continue;
            bool on_box = false;
            std::vector<int> ids;
            for (int sid : q.vertex_facets[i]) {
                if (sid < static_cast<int>(rim_ids.size())) {
                    ids.push_back(rim_ids[sid]);
                } else {
                    on_box = true;
                }
            }
            for (int k = 0; k < n; ++k) {
                if (k == facet || in_rim[k]) continue;
                if (bs[k] - as[k].dot(w) < -tol * scale) {
                    in_rim[k] = true;
                    expanded = true;
                }
            }
            if (expanded) continue;
            if (on_box) return Degenerate{DegenerateKind::Unbounded, "facet removal unbounds the polytope"};
            std::sort(ids.begin(), ids.end());
            patch.push_back(w);
            patch_inc.push_back(std::move(ids));
        }
        if (expanded) continue;

        // Stitch: survivors are vertices whose incidences without `facet` still
        // pin a 0-face; the patch supplies the rest.
        std::vector<Constraint> cons;
        std::vector<Halfspace> input;
        std::vector<int> old_to_new(n, -1);
        for (int k = 0; k < n; ++k) {
            if (k == facet) continue;
            old_to_new[k] = static_cast<int>(input.size());
            Constraint c;
            c.a = as[k];
            c.b = bs[k] / scale;
            c.input_id = static_cast<int>(input.size());
            input.push_back(p.halfspaces[k]);
            cons.push_back(std::move(c));
        }
        std::vector<Vec> verts;
        std::vector<std::vector<int>> inc;
        for (size_t i = 0; i < p.vertices.size(); ++i) {
            std::vector<int> ids;
            for (int id : p.vertex_facets[i])
                if (id != facet) ids.push_back(old_to_new[id]);
            verts.push_back(p.vertices[i] / scale);
            inc.push_back(std::move(ids));
        }
        for (size_t i = 0; i < patch.size(); ++i) {
            std::vector<int> ids;
            for (int id : patch_inc[i]) ids.push_back(old_to_new[id]);
            std::sort(ids.begin(), ids.end());
            bool dup = false;
            for (size_t j = 0; j < verts.size() && !dup; ++j) {
                if ((verts[j] - patch[i] / scale).norm() <= tol * std::max(1.0, verts[j].norm())) {
                    std::vector<int> u;
                    std::set_union(inc[j].begin(), inc[j].end(), ids.begin(), ids.end(), std::back_inserter(u));
                    inc[j] = std::move(u);
                    dup = true;
                }
            }
            if (dup) continue;
            verts.push_back(patch[i] / scale);
            inc.push_back(std::move(ids));
        }
        auto res = assemble(d, tol, cons, std::move(verts), std::move(inc), input, scale);
        if (std::holds_alternative<Degenerate>(res)) return std::get<Degenerate>(res);
        return std::move(std::get<Assembled>(res).poly);
    }
    fail(ErrorCode::Numeric, "facet removal patch did not stabilize");
}

} // namespace

BuildResult remove_facet(const Polytope& p, int facet, bool incremental) {
    if (facet < 0 || facet >= p.f()) fail(ErrorCode::InvalidArgument, "remove_facet: facet index out of range");
    if (p.f() <= p.dim + 1) return Degenerate{DegenerateKind::Unbounded, "removing a facet of a simplex"};
    return incremental ? remove_facet_patch(p, facet) : remove_facet_scratch(p, facet);
}

const char* degenerate_kind_name(DegenerateKind kind) {
    switch (kind) {
        case DegenerateKind::Empty: return "empty";
        case DegenerateKind::Unbounded: return "unbounded";
        case DegenerateKind::LowerDimensional: return "lower-dimensional";
    }
    return "unknown";
}

} // namespace hypercell::geom
