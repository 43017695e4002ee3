#include "geom/polytope.hpp"

#include <algorithm>

#include <json.hpp>

namespace hypercell::geom {

Halfspace Halfspace::make(const Vec& u, double t, int eps, double norm_tol) {
    if (!u.allFinite() || !std::isfinite(t)) fail(ErrorCode::InvalidArgument, "halfspace entries must be finite");
    if (eps != -1 && eps != 1) fail(ErrorCode::InvalidArgument, "halfspace eps must be -1 or +1");
    if (t < 0.0) fail(ErrorCode::InvalidArgument, "halfspace offset must be >= 0");
    double norm = u.norm();
    if (std::abs(norm - 1.0) > norm_tol)
        fail(ErrorCode::InvalidArgument, "halfspace normal must be unit length (deviation " + to_str(std::abs(norm - 1.0)) + ")");
    Halfspace h;
    h.u = u; // preserved bit-exact; deviation is below every predicate tolerance
    h.t = t;
    h.eps = eps;
    return h;
}

Halfspace Halfspace::from_constraint(const Vec& a, double b) {
    double norm = a.norm();
    if (norm <= 0.0 || !a.allFinite() || !std::isfinite(b))
        fail(ErrorCode::InvalidArgument, "constraint normal must be nonzero and finite");
    Halfspace h;
    if (b >= 0.0) {
        h.u = a / norm;
        h.t = b / norm;
        h.eps = -1;
    } else {
        h.u = -a / norm;
        h.t = -b / norm;
        h.eps = 1;
    }
    return h;
}

double Polytope::support(const Vec& direction) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : vertices) best = std::max(best, direction.dot(v));
    return best;
}

int Polytope::support_argmax(const Vec& direction) const {
    int arg = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < vertices.size(); ++i) {
        double s = direction.dot(vertices[i]);
        if (s > best) {
            best = s;
            arg = static_cast<int>(i);
        }
    }
    return arg;
}

bool Polytope::contains(const Vec& x, double tol) const {
    for (const auto& h : halfspaces)
        if (h.a().dot(x) > h.b() + tol) return false;
    return true;
}

double Polytope::circumradius() const {
    double r = 0.0;
    for (const auto& v : vertices) r = std::max(r, v.norm());
    return r;
}

SimplicityCertificate Polytope::simplicity() const {
    SimplicityCertificate cert;
    for (size_t i = 0; i < vertex_facets.size(); ++i) {
        if (static_cast<int>(vertex_facets[i].size()) != dim) {
            cert.simple = false;
            cert.offending_vertices.push_back(static_cast<int>(i));
        }
    }
    return cert;
}

std::vector<int> Polytope::facet_vertices(int facet) const {
    std::vector<int> out;
    for (size_t i = 0; i < vertex_facets.size(); ++i)
        if (std::binary_search(vertex_facets[i].begin(), vertex_facets[i].end(), facet))
            out.push_back(static_cast<int>(i));
    return out;
}

Polytope Polytope::translated(const Vec& shift) const {
    Polytope q = *this;
    for (auto& h : q.halfspaces) {
        // Offset moves by <shift,a>; from_constraint restores the t >= 0 form.
        Vec a = h.a();
        h = Halfspace::from_constraint(a, h.b() + a.dot(shift));
    }
    for (auto& v : q.vertices) v += shift;
    return q;
}

Polytope Polytope::scaled(double factor) const {
    if (!(factor > 0.0)) fail(ErrorCode::InvalidArgument, "scale factor must be positive");
    Polytope q = *this;
    for (auto& h : q.halfspaces) h.t *= factor;
    for (auto& v : q.vertices) v *= factor;
    return q;
}

std::string Polytope::to_json() const {
    nlohmann::json j;
    j["d"] = dim;
    auto hs = nlohmann::json::array();
    for (const auto& h : halfspaces) {
        auto u = nlohmann::json::array();
        for (int k = 0; k < dim; ++k) u.push_back(h.u(k));
        hs.push_back(nlohmann::json::array({u, h.t, h.eps}));
    }
    j["halfspaces"] = hs;
    auto vs = nlohmann::json::array();
    for (const auto& v : vertices) {
        auto row = nlohmann::json::array();
        for (int k = 0; k < dim; ++k) row.push_back(v(k));
        vs.push_back(row);
    }
    j["vertices"] = vs;
    return j.dump();
}

Polytope Polytope::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("polytope JSON parse: ") + e.what());
    }
    if (!j.contains("d") || !j["d"].is_number_integer())
        fail(ErrorCode::InvalidArgument, "polytope JSON: field 'd' must be an integer");
    int d = j["d"].get<int>();
    if (d < 1) fail(ErrorCode::InvalidArgument, "polytope JSON: field 'd' must be >= 1");
    if (!j.contains("halfspaces") || !j["halfspaces"].is_array())
        fail(ErrorCode::InvalidArgument, "polytope JSON: field 'halfspaces' must be an array");

    std::vector<Halfspace> hs;
    for (const auto& row : j["halfspaces"]) {
        if (!row.is_array() || row.size() != 3 || !row[0].is_array() || row[0].size() != static_cast<size_t>(d))
            fail(ErrorCode::InvalidArgument, "polytope JSON: each halfspace must be [[u...], t, eps]");
        Vec u(d);
        for (int k = 0; k < d; ++k) u(k) = row[0][k].get<double>();
        hs.push_back(Halfspace::make(u, row[1].get<double>(), row[2].get<int>()));
    }

    if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].size() < static_cast<size_t>(d) + 1)
        fail(ErrorCode::InvalidArgument, "polytope JSON: field 'vertices' must be an array of >= d+1 points");

    // Stored coordinates are kept bit-exact; the incidence structure is rebuilt
    // by tolerance and validated so a corrupted file cannot load silently.
    Polytope p;
    p.dim = d;
    p.halfspaces = std::move(hs);
    for (const auto& row : j["vertices"]) {
        if (!row.is_array() || row.size() != static_cast<size_t>(d))
            fail(ErrorCode::InvalidArgument, "polytope JSON: each vertex must have d coordinates");
        Vec v(d);
        for (int k = 0; k < d; ++k) v(k) = row[k].get<double>();
        if (!v.allFinite()) fail(ErrorCode::InvalidArgument, "polytope JSON: non-finite vertex");
        p.vertices.push_back(v);
    }
    std::vector<int> facet_hits(p.f(), 0);
    for (const auto& v : p.vertices) {
        double tol = 1e-7 * std::max(1.0, v.norm());
        std::vector<int> ids;
        for (int k = 0; k < p.f(); ++k) {
            double s = p.halfspaces[k].b() - p.halfspaces[k].a().dot(v);
            if (s < -tol) fail(ErrorCode::InvalidArgument, "polytope JSON: vertex violates a halfspace");
            if (std::abs(s) <= tol) {
                ids.push_back(k);
                ++facet_hits[k];
            }
        }
        if (static_cast<int>(ids.size()) < d)
            fail(ErrorCode::InvalidArgument, "polytope JSON: vertex lies on fewer than d facets");
        p.vertex_facets.push_back(std::move(ids));
    }
    for (int k = 0; k < p.f(); ++k)
        if (facet_hits[k] < d) fail(ErrorCode::InvalidArgument, "polytope JSON: halfspace is not facet-defining");
    return p;
}

} // namespace hypercell::geom
