#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "common.hpp"

namespace hypercell::geom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Halfspace of the hyperplane H(u,t) = {x : <u,x> = t} with unit normal u and
// offset t >= 0.  eps = -1 selects the side containing the origin (<u,x> <= t),
// eps = +1 the other side.  Canonically the constraint is <a,x> <= b.
struct Halfspace {
    Vec u;
    double t = 0.0;
    int eps = -1;

    Vec a() const { return eps < 0 ? u : Vec(-u); }
    double b() const { return eps < 0 ? t : -t; }

    // Validating constructor used by parsers and samplers.
    static Halfspace make(const Vec& u, double t, int eps, double norm_tol = 1e-12);
    // Canonical constraint <a,x> <= b mapped back to the (u, t, eps) form.
    static Halfspace from_constraint(const Vec& a, double b);
};

struct SimplicityCertificate {
    bool simple = true;
    std::vector<int> offending_vertices; // vertices lying on more than dim facets
};

enum class DegenerateKind { Empty, Unbounded, LowerDimensional };

struct Degenerate {
    DegenerateKind kind;
    std::string detail;
};

// Bounded full-dimensional intersection of halfspaces.  halfspaces is the
// irredundant facet-defining subset of the input; vertex_facets[i] lists the
// facets through vertices[i] (sorted, >= dim entries each).
struct Polytope {
    int dim = 0;
    std::vector<Halfspace> halfspaces;
    std::vector<Vec> vertices;
    std::vector<std::vector<int>> vertex_facets;

    int f() const { return static_cast<int>(halfspaces.size()); }
    int vertex_count() const { return static_cast<int>(vertices.size()); }

    double support(const Vec& direction) const;
    int support_argmax(const Vec& direction) const;
    bool contains(const Vec& x, double tol = 1e-9) const;
    double circumradius() const;
    SimplicityCertificate simplicity() const;
    std::vector<int> facet_vertices(int facet) const;

    Polytope translated(const Vec& shift) const;
    Polytope scaled(double factor) const; // factor > 0, about the origin

    std::string to_json() const;
    static Polytope from_json(const std::string& text);
};

struct BuildOptions {
    double tol = 1e-9;            // predicate tolerance at unit scale
    bool require_simple = false;  // jitter offsets by 1e-12*scale when degenerate
    uint64_t jitter_seed = 0;
    double initial_box = 1e4;     // bounding-box radius at internal scale
};

struct BuildReport {
    std::vector<int> dropped;  // input indices that are not facet-defining
    bool jittered = false;
};

using BuildResult = std::variant<Polytope, Degenerate>;

// Incremental vertex enumeration.  Returns the polytope or a degeneracy
// classification; throws Error(Numeric) when the result cannot be certified.
BuildResult intersect_halfspaces(const std::vector<Halfspace>& hs, const BuildOptions& opts = {},
                                 BuildReport* report = nullptr);

// The bounded polytope or an exception for any degenerate outcome.
Polytope intersect_or_throw(const std::vector<Halfspace>& hs, const BuildOptions& opts = {},
                            BuildReport* report = nullptr);

// P with facet j removed.  Degenerate(Unbounded) when the rest no longer bounds.
// `incremental` patches the hole locally; both routes agree to kernel tolerance.
BuildResult remove_facet(const Polytope& p, int facet, bool incremental = true);

const char* degenerate_kind_name(DegenerateKind kind);

} // namespace hypercell::geom
