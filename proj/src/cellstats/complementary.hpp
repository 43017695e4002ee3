#pragma once

#include <cstdint>
#include <functional>

#include "geom/volumes.hpp"
#include "process/records.hpp"
#include "stats/tests.hpp"

namespace hypercell::cellstats {

// Conditioning bins below these counts are unreliable for the asymptotic
// tests and are rejected with InsufficientData naming the requirement.
inline constexpr std::size_t kGammaFitMinSamples = 200;
inline constexpr std::size_t kIndependenceMinSamples = 500;

// Kolmogorov-Smirnov test of { phi_content | f = n } against
// Gamma(shape n - d, rate gamma), the conditional content law of the typical
// cell.  Records must carry equal weights (unweighted typical-cell samples);
// volume-biased zero-cell records are rejected.
stats::TestReport gamma_fit_test(const std::vector<process::CellRecord>& records, int n, double gamma);

// Distance-correlation permutation test between phi_content and a shape
// statistic, conditional on f = n.  The conditional content and shape of the
// typical cell are independent, so the null should hold on real cell data.
stats::TestReport independence_test(const std::vector<process::CellRecord>& records, int n,
                                    const std::function<double(const process::CellRecord&)>& shape_statistic,
                                    int permutations = 2000, uint64_t seed = 0x51a7e0fULL);

// Scale-invariant shape statistic used as the default conditioning target.
inline double isoperimetric_statistic(const process::CellRecord& rec) {
    return geom::isoperimetric_ratio(rec.polytope, 1, 2);
}

} // namespace hypercell::cellstats
