#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hypercell::stats {

struct TestReport {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t sample_size = 0;
    std::string method;
};

// One-sample Kolmogorov-Smirnov test against a continuous CDF.
TestReport ks_test(std::vector<double> values, const std::function<double(double)>& cdf);

// Goodness of fit against expected counts; df defaults to bins - 1, callers
// fitting parameters pass the reduced value.
TestReport chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected,
                          int df = -1);

// Two-sample homogeneity chi-square on binned counts.
TestReport chi_square_two_sample(const std::vector<double>& counts_a, const std::vector<double>& counts_b);

// Distance correlation in [0, 1]; 0 iff empirically uncorrelated in the
// energy metric.  Throws Degenerate when either marginal is constant.
double distance_correlation(const std::vector<double>& x, const std::vector<double>& y);

// Permutation test of independence using distance correlation.  Samples
// larger than subsample_cap are thinned deterministically from `seed` before
// the O(n^2) statistic.
TestReport dcor_permutation_test(const std::vector<double>& x, const std::vector<double>& y,
                                 int permutations, uint64_t seed, std::size_t subsample_cap = 1000);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval for a binomial proportion at normal quantile z.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

// Least-squares line with the usual homoskedastic slope standard error.
LineFit ols_fit(const std::vector<double>& x, const std::vector<double>& y);

// Standard error of the ratio estimator sum(w g)/sum(w) by Poisson bootstrap
// (independent Poisson(1) multipliers per record, `resamples` rounds).
double poisson_bootstrap_ratio_stderr(const std::vector<double>& g, const std::vector<double>& w,
                                      int resamples, uint64_t seed);

} // namespace hypercell::stats
