#pragma once

#include <cstddef>

namespace hypercell::stats {

// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a); series
// expansion for x < a+1, continued fraction otherwise.  a > 0, x >= 0.
double reg_lower_gamma(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double reg_upper_gamma(double a, double x);

// CDF of Gamma(shape, rate) at x.
double gamma_cdf(double x, double shape, double rate);

// Survival function of the Kolmogorov distribution, 2 sum (-1)^{k-1}
// exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

// Finite-sample KS p-value for statistic d at sample size n (Stephens'
// transform of the Kolmogorov limit).
double ks_p_value(double d, std::size_t n);

} // namespace hypercell::stats
