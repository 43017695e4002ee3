#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "common.hpp"
#include "random.hpp"
#include "stats/special.hpp"
#include "stats/tests.hpp"

using hypercell::Error;
using hypercell::ErrorCode;
using hypercell::RandomStream;
using namespace hypercell::stats;

namespace {

double ks_stat_uniform(std::vector<double> p) {
    std::sort(p.begin(), p.end());
    double d = 0.0;
    const double n = static_cast<double>(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        d = std::max(d, std::max((i + 1) / n - p[i], p[i] - i / n));
    return d;
}

} // namespace

TEST_CASE("regularized incomplete gamma against independent identities") {
    // P(1/2, x) = erf(sqrt(x)); the C library erf is the oracle.
    for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0})
        CHECK(reg_lower_gamma(0.5, x) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-13));

    // P(1, x) = 1 - e^{-x}.
    for (double x : {0.3, 1.0, 4.0, 11.0})
        CHECK(reg_lower_gamma(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-13));

    // Integer shape: Q(k, x) is the Poisson(x) CDF at k-1.
    double poisson_cdf = 0.0, term = std::exp(-3.0);
    for (int k = 0; k < 7; ++k) {
        poisson_cdf += term;
        term *= 3.0 / (k + 1);
    }
    CHECK(reg_upper_gamma(7.0, 3.0) == doctest::Approx(poisson_cdf).epsilon(1e-12));

    // Complementarity and monotonicity across the series/fraction switch.
    double prev = -1.0;
    for (double x = 0.0; x <= 30.0; x += 0.25) {
        double p = reg_lower_gamma(6.5, x);
        CHECK(p + reg_upper_gamma(6.5, x) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p >= prev - 1e-14);
        prev = p;
    }

    CHECK(gamma_cdf(2.0, 1.0, 1.5) == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-13));
    CHECK(gamma_cdf(-1.0, 2.0, 1.0) == 0.0);
    CHECK_THROWS_AS(reg_lower_gamma(0.0, 1.0), Error);
}

TEST_CASE("kolmogorov survival function hits the classical critical points") {
    CHECK(kolmogorov_sf(1.3581) == doctest::Approx(0.05).epsilon(2e-3));
    CHECK(kolmogorov_sf(1.6276) == doctest::Approx(0.01).epsilon(2e-3));
    CHECK(kolmogorov_sf(0.0) == 1.0);
    CHECK(kolmogorov_sf(3.0) < 1e-7);
    // Monotone decreasing.
    for (double a = 0.2; a < 2.5; a += 0.1) CHECK(kolmogorov_sf(a) > kolmogorov_sf(a + 0.1));
}

TEST_CASE("ks test: null calibration and power") {
    RandomStream rng(2001);
    auto identity = [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); };
    std::vector<double> pvals;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> xs(200);
        for (auto& x : xs) x = rng.uniform();
        pvals.push_back(ks_test(xs, identity).p_value);
    }
    // Uniformity of null p-values within the Kolmogorov 1% band.
    CHECK(ks_stat_uniform(pvals) < 1.63 / std::sqrt(100.0));

    std::vector<double> shifted(200);
    for (auto& x : shifted) x = 0.5 + 0.5 * rng.uniform();
    CHECK(ks_test(shifted, identity).p_value < 1e-6);

    CHECK_THROWS_AS(ks_test({}, identity), Error);
}

TEST_CASE("chi-square: exact quantiles and two-sample behaviour") {
    // Observed stat equal to the 95% quantile must give p = 0.05.
    std::vector<double> o = {10, 10, 10}, e = {10, 10, 10};
    CHECK(chi_square_gof(o, e).p_value == doctest::Approx(1.0));
    TestReport r = chi_square_gof({15, 5, 10}, {10, 10, 10});
    CHECK(r.statistic == doctest::Approx(5.0));
    CHECK(r.p_value == doctest::Approx(reg_upper_gamma(1.0, 2.5)).epsilon(1e-12));

    // Literature chi-square quantiles through the gamma tail.
    CHECK(reg_upper_gamma(1.0, 5.991465 / 2.0) == doctest::Approx(0.05).epsilon(1e-5));
    CHECK(reg_upper_gamma(5.0, 18.307038 / 2.0) == doctest::Approx(0.05).epsilon(1e-5));

    RandomStream rng(2002);
    std::vector<double> a(6, 0.0), b(6, 0.0);
    for (int i = 0; i < 3000; ++i) ++a[rng.below(6)];
    for (int i = 0; i < 4500; ++i) ++b[rng.below(6)];
    CHECK(chi_square_two_sample(a, b).p_value > 0.01);

    std::vector<double> c = {800, 100, 100, 0, 0, 0};
    CHECK(chi_square_two_sample(c, b).p_value < 1e-10);
    CHECK_THROWS_AS(chi_square_gof({1.0}, {1.0}), Error);
}

TEST_CASE("distance correlation: identities, degeneracy, permutation test") {
    RandomStream rng(2003);
    std::vector<double> x(80), y(80), z(80);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.gaussian();
        y[i] = rng.gaussian();
        z[i] = std::abs(x[i]) + 0.1 * rng.gaussian(); // dependent but uncorrelated
    }
    CHECK(distance_correlation(x, x) == doctest::Approx(1.0).epsilon(1e-12));
    // Affine invariance in each marginal.
    std::vector<double> y2(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) y2[i] = -3.0 * y[i] + 7.0;
    CHECK(distance_correlation(x, y2) == doctest::Approx(distance_correlation(x, y)).epsilon(1e-10));

    std::vector<double> cst(80, 2.0);
    CHECK_THROWS_AS(distance_correlation(x, cst), Error);
    CHECK_THROWS_AS(dcor_permutation_test(x, cst, 200, 1), Error);

    CHECK(dcor_permutation_test(x, z, 400, 11).p_value < 0.01);
    TestReport indep = dcor_permutation_test(x, y, 400, 12);
    CHECK(indep.p_value > 0.01);

    // Null calibration: p-values are roughly uniform.
    std::vector<double> pvals;
    for (int rep = 0; rep < 40; ++rep) {
        std::vector<double> u(60), v(60);
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = rng.uniform();
            v[i] = rng.uniform();
        }
        pvals.push_back(dcor_permutation_test(u, v, 300, 100 + rep).p_value);
    }
    CHECK(ks_stat_uniform(pvals) < 1.63 / std::sqrt(40.0));

    // Subsample cap keeps the statistic usable on large inputs and is
    // deterministic in the seed.
    std::vector<double> bx(3000), by(3000);
    for (std::size_t i = 0; i < bx.size(); ++i) {
        bx[i] = rng.gaussian();
        by[i] = bx[i] * bx[i] + rng.gaussian();
    }
    TestReport big1 = dcor_permutation_test(bx, by, 200, 5, 400);
    TestReport big2 = dcor_permutation_test(bx, by, 200, 5, 400);
    CHECK(big1.sample_size == 400);
    CHECK(big1.statistic == big2.statistic);
    CHECK(big1.p_value == big2.p_value);
    CHECK(big1.p_value < 0.01);
}

TEST_CASE("wilson interval: containment and simulated coverage") {
    Interval iv = wilson_interval(8, 10);
    CHECK(iv.lo > 0.0);
    CHECK(iv.hi < 1.0);
    CHECK(iv.lo < 0.8);
    CHECK(iv.hi > 0.8);
    CHECK(wilson_interval(0, 10).lo == 0.0);
    CHECK(wilson_interval(10, 10).hi == 1.0);
    // Narrows with sample size at fixed proportion.
    Interval small = wilson_interval(30, 100), large = wilson_interval(300, 1000);
    CHECK(large.hi - large.lo < small.hi - small.lo);

    RandomStream rng(2004);
    int covered = 0;
    const int reps = 2000;
    for (int rep = 0; rep < reps; ++rep) {
        std::size_t s = 0;
        for (int i = 0; i < 60; ++i) s += rng.uniform() < 0.25 ? 1 : 0;
        Interval w = wilson_interval(s, 60);
        if (w.lo <= 0.25 && 0.25 <= w.hi) ++covered;
    }
    CHECK(covered / static_cast<double>(reps) > 0.93);
    CHECK_THROWS_AS(wilson_interval(3, 0), Error);
}

TEST_CASE("ols fit: exact line, hand-checked noisy fit") {
    std::vector<double> x = {0, 1, 2, 3, 4}, y;
    for (double v : x) y.push_back(2.0 * v + 1.0);
    LineFit f = ols_fit(x, y);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(f.slope_stderr < 1e-13);

    LineFit g = ols_fit({0, 1, 2, 3}, {1, 3, 5, 6});
    CHECK(g.slope == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(g.intercept == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(g.slope_stderr == doctest::Approx(std::sqrt(0.03)).epsilon(1e-12));

    CHECK_THROWS_AS(ols_fit({1, 1, 1}, {1, 2, 3}), Error);
}

TEST_CASE("poisson bootstrap stderr tracks the analytic standard error") {
    RandomStream rng(2005);
    std::vector<double> g(500), w(500, 1.0);
    for (auto& v : g) v = rng.exponential(0.5);
    double m = 0.0;
    for (double v : g) m += v;
    m /= g.size();
    double s2 = 0.0;
    for (double v : g) s2 += (v - m) * (v - m);
    double analytic = std::sqrt(s2 / (g.size() - 1.0) / g.size());
    double boot = poisson_bootstrap_ratio_stderr(g, w, 1000, 7);
    CHECK(boot == doctest::Approx(analytic).epsilon(0.15));
    CHECK(poisson_bootstrap_ratio_stderr(g, w, 1000, 7) == boot); // seeded determinism
}
