#include "cellstats/complementary.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "common.hpp"
#include "stats/special.hpp"

namespace hypercell::cellstats {

using process::CellRecord;

namespace {

// The conditional laws below describe the typical cell, so every record must
// enter with the same weight; volume-biased samples would need a weighted
// test we do not provide.
void require_equal_weights(const std::vector<CellRecord>& records, const char* who) {
    double w0 = records.front().weight;
    for (const auto& rec : records)
        if (std::abs(rec.weight - w0) > 1e-12 * std::max(1.0, std::abs(w0)))
            fail(ErrorCode::InvalidArgument,
                 std::string(who) + ": records carry unequal weights; conditional tests need "
                                    "equal-weight typical-cell samples");
}

std::vector<std::size_t> matching(const std::vector<CellRecord>& records, int n, int* d_out) {
    if (records.empty()) fail(ErrorCode::InsufficientData, "no records");
    int d = records.front().polytope.dim;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].polytope.dim != d) fail(ErrorCode::InvalidArgument, "mixed ambient dimensions");
        if (records[i].f == n) idx.push_back(i);
    }
    *d_out = d;
    return idx;
}

} // namespace

stats::TestReport gamma_fit_test(const std::vector<CellRecord>& records, int n, double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        fail(ErrorCode::InvalidArgument, "gamma_fit_test: rate must be positive");
    int d = 0;
    std::vector<std::size_t> idx = matching(records, n, &d);
    if (n < d + 1) fail(ErrorCode::InvalidArgument, "gamma_fit_test: n below d+1");
    if (idx.size() < kGammaFitMinSamples)
        fail(ErrorCode::InsufficientData,
             "gamma_fit_test: need >= " + std::to_string(kGammaFitMinSamples) + " records with f = " +
                 std::to_string(n) + ", have " + std::to_string(idx.size()));
    require_equal_weights(records, "gamma_fit_test");

    std::vector<double> values;
    values.reserve(idx.size());
    for (std::size_t i : idx) values.push_back(records[i].phi_content);
    const double shape = n - d;
    stats::TestReport report =
        stats::ks_test(values, [shape, gamma](double x) { return stats::gamma_cdf(x, shape, gamma); });
    report.method = "gamma-ks";
    return report;
}

stats::TestReport independence_test(const std::vector<CellRecord>& records, int n,
                                    const std::function<double(const CellRecord&)>& shape_statistic,
                                    int permutations, uint64_t seed) {
    int d = 0;
    std::vector<std::size_t> idx = matching(records, n, &d);
    if (idx.size() < kIndependenceMinSamples)
        fail(ErrorCode::InsufficientData,
             "independence_test: need >= " + std::to_string(kIndependenceMinSamples) +
                 " records with f = " + std::to_string(n) + ", have " + std::to_string(idx.size()));
    require_equal_weights(records, "independence_test");

    std::vector<double> content, shape;
    content.reserve(idx.size());
    shape.reserve(idx.size());
    for (std::size_t i : idx) {
        content.push_back(records[i].phi_content);
        shape.push_back(shape_statistic(records[i]));
    }
    return stats::dcor_permutation_test(content, shape, permutations, seed);
}

} // namespace hypercell::cellstats
