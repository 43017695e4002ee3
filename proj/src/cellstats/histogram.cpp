#include "cellstats/histogram.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "common.hpp"
#include "random.hpp"

namespace hypercell::cellstats {

using process::CellRecord;
using process::SamplerKind;

void FacetHistogram::to_csv(std::ostream& os) const {
    os << "n,q,q_stderr,r\n";
    char buf[128];
    for (const auto& [n, entry] : q) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", n, entry.q, entry.stderr_, r.at(n));
        os << buf;
    }
}

nlohmann::json FacetHistogram::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [n, entry] : q)
        rows.push_back({{"n", n}, {"q", entry.q}, {"q_stderr", entry.stderr_}, {"r", r.at(n)}});
    return nlohmann::json{{"total_samples", total_samples}, {"bins", rows}};
}

FacetHistogram facet_histogram(const std::vector<CellRecord>& records, bool weighted,
                               int bootstrap_resamples, uint64_t seed) {
    if (records.empty()) fail(ErrorCode::InsufficientData, "facet_histogram: no records");
    if (bootstrap_resamples < 0) fail(ErrorCode::InvalidArgument, "facet_histogram: negative resamples");

    const int d = records.front().polytope.dim;
    int lo = records.front().f, hi = records.front().f;
    for (const auto& rec : records) {
        if (rec.polytope.dim != d)
            fail(ErrorCode::InvalidArgument, "facet_histogram: mixed ambient dimensions");
        if (rec.f < d + 1) fail(ErrorCode::InvalidArgument, "facet_histogram: record with f < d+1");
        if (!(rec.weight > 0.0)) fail(ErrorCode::InvalidArgument, "facet_histogram: nonpositive weight");
        lo = std::min(lo, rec.f);
        hi = std::max(hi, rec.f);
    }
    if (!weighted) {
        for (const auto& rec : records) {
            if (rec.sampler == SamplerKind::ZeroCell)
                fail(ErrorCode::InvalidArgument,
                     "facet_histogram: zero-cell records are volume biased, use weighted=true");
            if (rec.sampler != records.front().sampler)
                fail(ErrorCode::InvalidArgument,
                     "facet_histogram: mixed sampler kinds need importance weights");
        }
    }

    const int bins = hi - lo + 1;
    auto weight_of = [&](const CellRecord& rec) { return weighted ? rec.weight : 1.0; };

    // Tail-first construction: r[n] = (suffix weight sum) / (total weight) is
    // nonincreasing by construction, and q[n] := r[n] - r[n+1] keeps the
    // telescoping identities exact in floating point.
    std::vector<double> group(bins, 0.0);
    for (const auto& rec : records) group[rec.f - lo] += weight_of(rec);
    double total = 0.0;
    for (double g : group) total += g;

    FacetHistogram out;
    out.total_samples = records.size();
    double suffix = 0.0, r_above = 0.0;
    std::vector<double> qv(bins, 0.0);
    for (int b = bins - 1; b >= 0; --b) {
        suffix += group[b];
        double r_here = suffix / total;
        qv[b] = r_here - r_above;
        out.r[lo + b] = r_here;
        r_above = r_here;
    }
    for (int b = 0; b < bins; ++b) out.q[lo + b].q = qv[b];

    if (bootstrap_resamples > 0) {
        std::vector<double> mean(bins, 0.0), m2(bins, 0.0), qb(bins);
        std::size_t used = 0;
        for (int rep = 0; rep < bootstrap_resamples; ++rep) {
            RandomStream rng(derive_seed(seed, static_cast<uint64_t>(rep)));
            std::fill(qb.begin(), qb.end(), 0.0);
            double tot = 0.0;
            for (const auto& rec : records) {
                double m = static_cast<double>(rng.poisson(1.0));
                if (m == 0.0) continue;
                double w = m * weight_of(rec);
                qb[rec.f - lo] += w;
                tot += w;
            }
            if (!(tot > 0.0)) continue;
            ++used;
            for (int b = 0; b < bins; ++b) {
                double v = qb[b] / tot;
                double delta = v - mean[b];
                mean[b] += delta / static_cast<double>(used);
                m2[b] += delta * (v - mean[b]);
            }
        }
        if (used >= 2)
            for (int b = 0; b < bins; ++b)
                out.q[lo + b].stderr_ = std::sqrt(m2[b] / static_cast<double>(used - 1));
    }
    return out;
}

} // namespace hypercell::cellstats
