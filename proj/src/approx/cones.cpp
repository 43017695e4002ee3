#include "approx/cones.hpp"

#include <cmath>
#include <string>

namespace hypercell::approx {

using geom::Mat;
using geom::Polytope;
using geom::Vec;

namespace {

void require_simple(const Polytope& P, const char* who) {
    if (!P.simplicity().simple)
        throw Error(ErrorCode::Unsupported, std::string(who) + ": requires a simple polytope");
}

ConeMassEstimate binomial_estimate(long hits, long samples) {
    ConeMassEstimate e;
    e.samples = samples;
    e.value = double(hits) / double(samples);
    e.stderr_ = std::sqrt(e.value * (1.0 - e.value) / double(samples));
    return e;
}

} // namespace

std::vector<Mat> normal_cones(const Polytope& P) {
    require_simple(P, "normal_cones");
    const int d = P.dim;
    std::vector<Mat> cones;
    cones.reserve(P.vertices.size());
    for (const auto& facets : P.vertex_facets) {
        Mat gen(d, d);
        for (int c = 0; c < d; ++c) gen.col(c) = P.halfspaces[facets[c]].a();
        cones.push_back(std::move(gen));
    }
    return cones;
}

std::vector<int> facet_umbrella(const Polytope& P, int j) {
    require_simple(P, "facet_umbrella");
    if (j < 0 || j >= P.f()) throw Error(ErrorCode::InvalidArgument, "facet_umbrella: facet index out of range");
    return P.facet_vertices(j);
}

ConeMasses cone_masses(const Polytope& P, const direction::DirectionalDistribution& phi,
                       long samples, RandomStream& rng) {
    require_simple(P, "cone_masses");
    if (phi.dim() != P.dim) throw Error(ErrorCode::InvalidArgument, "cone_masses: phi dimension mismatch");
    if (samples < 1) throw Error(ErrorCode::InvalidArgument, "cone_masses: samples must be positive");

    std::vector<long> vertex_hits(P.vertices.size(), 0);
    std::vector<long> facet_hits(P.f(), 0);
    for (long s = 0; s < samples; ++s) {
        Vec u = phi.sample(rng);
        int l = P.support_argmax(u);
        ++vertex_hits[l];
        // Simple polytope: exactly d facets through v_l, so each sample
        // contributes d to the umbrella total.
        for (int j : P.vertex_facets[l]) ++facet_hits[j];
    }

    ConeMasses out;
    out.samples = samples;
    out.vertex.reserve(vertex_hits.size());
    for (long h : vertex_hits) {
        out.vertex.push_back(binomial_estimate(h, samples));
        out.vertex_sum += out.vertex.back().value;
    }
    out.facet.reserve(facet_hits.size());
    for (long h : facet_hits) {
        out.facet.push_back(binomial_estimate(h, samples));
        out.facet_sum += out.facet.back().value;
    }
    return out;
}

ConeMassEstimate phi_measure(const Polytope& P, int facet,
                             const direction::DirectionalDistribution& phi, long samples,
                             RandomStream& rng) {
    require_simple(P, "phi_measure");
    if (facet < 0 || facet >= P.f()) throw Error(ErrorCode::InvalidArgument, "phi_measure: facet index out of range");
    if (phi.dim() != P.dim) throw Error(ErrorCode::InvalidArgument, "phi_measure: phi dimension mismatch");
    if (samples < 1) throw Error(ErrorCode::InvalidArgument, "phi_measure: samples must be positive");

    long hits = 0;
    for (long s = 0; s < samples; ++s) {
        Vec u = phi.sample(rng);
        int l = P.support_argmax(u);
        for (int j : P.vertex_facets[l])
            if (j == facet) {
                ++hits;
                break;
            }
    }
    return binomial_estimate(hits, samples);
}

} // namespace hypercell::approx
