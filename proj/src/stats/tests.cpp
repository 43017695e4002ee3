#include "stats/tests.hpp"

#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "random.hpp"
#include "stats/special.hpp"

namespace hypercell::stats {

TestReport ks_test(std::vector<double> values, const std::function<double(double)>& cdf) {
    if (values.empty()) fail(ErrorCode::InsufficientData, "ks_test: empty sample");
    if (!cdf) fail(ErrorCode::InvalidArgument, "ks_test: null CDF");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double u = cdf(values[i]);
        if (!(u >= 0.0) || !(u <= 1.0)) fail(ErrorCode::InvalidArgument, "ks_test: CDF outside [0,1]");
        d = std::max(d, std::max((i + 1) / n - u, u - i / n));
    }
    TestReport r;
    r.statistic = d;
    r.p_value = ks_p_value(d, values.size());
    r.sample_size = values.size();
    r.method = "ks";
    return r;
}

TestReport chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected,
                          int df) {
    if (observed.size() != expected.size() || observed.size() < 2)
        fail(ErrorCode::InvalidArgument, "chi_square_gof: need matching bins, at least 2");
    double stat = 0.0, total = 0.0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        if (!(expected[k] > 0.0)) fail(ErrorCode::InvalidArgument, "chi_square_gof: expected counts must be > 0");
        double diff = observed[k] - expected[k];
        stat += diff * diff / expected[k];
        total += observed[k];
    }
    TestReport r;
    r.statistic = stat;
    int dof = df >= 0 ? df : static_cast<int>(observed.size()) - 1;
    if (dof < 1) fail(ErrorCode::InvalidArgument, "chi_square_gof: degrees of freedom must be >= 1");
    r.p_value = reg_upper_gamma(dof / 2.0, stat / 2.0);
    r.sample_size = static_cast<std::size_t>(total);
    r.method = "chi-square";
    return r;
}

TestReport chi_square_two_sample(const std::vector<double>& counts_a, const std::vector<double>& counts_b) {
    if (counts_a.size() != counts_b.size() || counts_a.size() < 2)
        fail(ErrorCode::InvalidArgument, "chi_square_two_sample: need matching bins, at least 2");
    double na = 0.0, nb = 0.0;
    for (double c : counts_a) na += c;
    for (double c : counts_b) nb += c;
    if (!(na > 0.0) || !(nb > 0.0)) fail(ErrorCode::InsufficientData, "chi_square_two_sample: empty sample");
    double ra = std::sqrt(nb / na), rb = std::sqrt(na / nb);
    double stat = 0.0;
    int used = 0;
    for (std::size_t k = 0; k < counts_a.size(); ++k) {
        double tot = counts_a[k] + counts_b[k];
        if (tot <= 0.0) continue;
        double diff = ra * counts_a[k] - rb * counts_b[k];
        stat += diff * diff / tot;
        ++used;
    }
    if (used < 2) fail(ErrorCode::InsufficientData, "chi_square_two_sample: fewer than 2 occupied bins");
    TestReport r;
    r.statistic = stat;
    r.p_value = reg_upper_gamma((used - 1) / 2.0, stat / 2.0);
    r.sample_size = static_cast<std::size_t>(na + nb);
    r.method = "chi-square-2s";
    return r;
}

namespace {

// Double-centered pairwise distance matrix, row-major.
std::vector<double> centered_distances(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> m(n * n);
    std::vector<double> row_mean(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double d = std::abs(x[i] - x[j]);
            m[i * n + j] = d;
            row_mean[i] += d;
        }
    for (std::size_t i = 0; i < n; ++i) {
        row_mean[i] /= n;
        grand += row_mean[i];
    }
    grand /= n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] += grand - row_mean[i] - row_mean[j];
    return m;
}

double matrix_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s / a.size();
}

double dcor_from_centered(const std::vector<double>& A, const std::vector<double>& B,
                          double var_a, double var_b) {
    double cov = matrix_dot(A, B);
    if (cov < 0.0) cov = 0.0;
    return std::sqrt(cov / std::sqrt(var_a * var_b));
}

} // namespace

double distance_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 4)
        fail(ErrorCode::InvalidArgument, "distance_correlation: need matching samples of size >= 4");
    auto A = centered_distances(x);
    auto B = centered_distances(y);
    double va = matrix_dot(A, A), vb = matrix_dot(B, B);
    if (!(va > 0.0) || !(vb > 0.0))
        fail(ErrorCode::Degenerate, "distance_correlation: constant marginal");
    return dcor_from_centered(A, B, va, vb);
}

TestReport dcor_permutation_test(const std::vector<double>& x, const std::vector<double>& y,
                                 int permutations, uint64_t seed, std::size_t subsample_cap) {
    if (x.size() != y.size() || x.size() < 8)
        fail(ErrorCode::InsufficientData, "dcor_permutation_test: need matching samples of size >= 8");
    if (permutations < 100) fail(ErrorCode::InvalidArgument, "dcor_permutation_test: need >= 100 permutations");
    RandomStream rng(seed);

    std::vector<double> xs = x, ys = y;
    if (xs.size() > subsample_cap) {
        // Deterministic thinning: a seeded partial Fisher-Yates selection.
        std::vector<std::size_t> idx(x.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (std::size_t i = 0; i < subsample_cap; ++i)
            std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
        xs.resize(subsample_cap);
        ys.resize(subsample_cap);
        for (std::size_t i = 0; i < subsample_cap; ++i) {
            xs[i] = x[idx[i]];
            ys[i] = y[idx[i]];
        }
    }
    const std::size_t n = xs.size();

    auto A = centered_distances(xs);
    auto B = centered_distances(ys);
    double va = matrix_dot(A, A), vb = matrix_dot(B, B);
    if (!(va > 0.0) || !(vb > 0.0))
        fail(ErrorCode::Degenerate, "dcor_permutation_test: constant marginal");
    double observed = dcor_from_centered(A, B, va, vb);

    // Permuting y permutes rows and columns of the centered matrix; the
    // centering itself is permutation invariant, so B is reused.
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    int at_least = 0;
    for (int p = 0; p < permutations; ++p) {
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        double cov = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* arow = &A[i * n];
            const double* brow = &B[perm[i] * n];
            for (std::size_t j = 0; j < n; ++j) cov += arow[j] * brow[perm[j]];
        }
        cov /= static_cast<double>(n * n);
        if (cov < 0.0) cov = 0.0;
        double d = std::sqrt(cov / std::sqrt(va * vb));
        if (d >= observed - 1e-15) ++at_least;
    }

    TestReport r;
    r.statistic = observed;
    r.p_value = (1.0 + at_least) / (1.0 + permutations);
    r.sample_size = n;
    r.method = "dcor-permutation";
    return r;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) fail(ErrorCode::InsufficientData, "wilson_interval: zero trials");
    if (successes > trials) fail(ErrorCode::InvalidArgument, "wilson_interval: successes exceed trials");
    double n = static_cast<double>(trials);
    double p = successes / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    Interval iv;
    // At the boundary proportions the Wilson endpoints are exactly 0 and 1;
    // snap them so roundoff from the sqrt does not leave them a few ulps off.
    iv.lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
    iv.hi = successes == trials ? 1.0 : std::min(1.0, center + half);
    return iv;
}

LineFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        fail(ErrorCode::InsufficientData, "ols_fit: need matching samples of size >= 3");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) fail(ErrorCode::Degenerate, "ols_fit: constant abscissa");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double resid = y[i] - fit.intercept - fit.slope * x[i];
        ss += resid * resid;
    }
    fit.slope_stderr = std::sqrt(ss / (n - 2.0) / sxx);
    return fit;
}

double poisson_bootstrap_ratio_stderr(const std::vector<double>& g, const std::vector<double>& w,
                                      int resamples, uint64_t seed) {
    if (g.size() != w.size() || g.empty())
        fail(ErrorCode::InvalidArgument, "poisson_bootstrap_ratio_stderr: mismatched inputs");
    if (resamples < 2) fail(ErrorCode::InvalidArgument, "poisson_bootstrap_ratio_stderr: need >= 2 resamples");
    RandomStream rng(seed);
    std::vector<double> reps;
    reps.reserve(resamples);
    for (int r = 0; r < resamples; ++r) {
        double sw = 0.0, swg = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            double m = static_cast<double>(rng.poisson(1.0));
            sw += m * w[i];
            swg += m * w[i] * g[i];
        }
        if (sw > 0.0) reps.push_back(swg / sw);
    }
    if (reps.size() < 2) fail(ErrorCode::InsufficientData, "poisson_bootstrap_ratio_stderr: degenerate resamples");
    double m = 0.0;
    for (double v : reps) m += v;
    m /= reps.size();
    double ss = 0.0;
    for (double v : reps) ss += (v - m) * (v - m);
    return std::sqrt(ss / (reps.size() - 1.0));
}

} // namespace hypercell::stats
