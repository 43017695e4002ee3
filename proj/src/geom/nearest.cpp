#include "geom/nearest.hpp"

#include <algorithm>
#include <limits>

#include "common.hpp"

namespace hypercell::geom {

namespace {

// Min-norm point of the affine hull of the columns indexed by `corral`.
// Solves min ||Q lambda||^2 subject to sum(lambda) = 1 via the KKT system.
Vec affine_minimizer(const Mat& q, const std::vector<int>& corral, Vec& lambda) {
    const int m = static_cast<int>(corral.size());
    Mat g(m + 1, m + 1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g(i, j) = q.col(corral[i]).dot(q.col(corral[j]));
    for (int i = 0; i < m; ++i) {
        g(i, m) = 1.0;
        g(m, i) = 1.0;
    }
    g(m, m) = 0.0;
    Vec rhs = Vec::Zero(m + 1);
    rhs(m) = 1.0;
    Vec sol = g.completeOrthogonalDecomposition().solve(rhs); // min-norm even if affinely dependent
    lambda = sol.head(m);
    Vec y = Vec::Zero(q.rows());
    for (int i = 0; i < m; ++i) y += lambda(i) * q.col(corral[i]);
    return y;
}

} // namespace

Vec nearest_point(const Polytope& P, const Vec& p, double tol) {
    if (p.size() != P.dim) fail(ErrorCode::InvalidArgument, "nearest_point: dimension mismatch");
    if (P.vertices.empty()) fail(ErrorCode::InvalidArgument, "nearest_point: polytope has no vertices");
    const int n = P.vertex_count();
    Mat q(P.dim, n);
    for (int i = 0; i < n; ++i) q.col(i) = P.vertices[i] - p;

    // Start from the single closest translate.
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (q.col(i).squaredNorm() < q.col(best).squaredNorm()) best = i;
    std::vector<int> corral{best};
    Vec lambda = Vec::Ones(1);
    Vec x = q.col(best);

    const int max_major = 16 * (n + P.dim) + 64;
    bool converged = false;
    for (int major = 0; major < max_major; ++major) {
        double xx = x.squaredNorm();
        if (xx <= tol * tol) { // distance below tolerance, p is effectively inside
            converged = true;
            break;
        }
        // Linear minimization oracle over the translated vertices.
        int m = 0;
        double mdot = q.col(0).dot(x);
        for (int i = 1; i < n; ++i) {
            double dot = q.col(i).dot(x);
            if (dot < mdot) {
                mdot = dot;
                m = i;
            }
        }
        // Duality gap on the distance: ||x|| - <x, q_m>/||x|| <= tol.
        if (xx - mdot <= tol * std::sqrt(xx)) {
            converged = true;
            break;
        }
        if (std::find(corral.begin(), corral.end(), m) == corral.end()) {
            corral.push_back(m);
            lambda.conservativeResize(lambda.size() + 1);
            lambda(lambda.size() - 1) = 0.0; // enters with zero weight, line search raises it
        }

        // Minor cycle: pull x to the affine minimizer, trimming the corral
        // whenever the minimizer leaves the simplex.
        for (;;) {
            Vec mu;
            Vec y = affine_minimizer(q, corral, mu);
            if (mu.minCoeff() > -1e-14) {
                x = y;
                lambda = mu;
                break;
            }
            // Largest step from lambda toward mu keeping all weights >= 0.
            double theta = 1.0;
            for (int i = 0; i < static_cast<int>(corral.size()); ++i)
                if (mu(i) < lambda(i)) theta = std::min(theta, lambda(i) / (lambda(i) - mu(i)));
            Vec mixed = lambda + theta * (mu - lambda);
            std::vector<int> next;
            Vec next_lambda(corral.size());
            int kept = 0;
            for (int i = 0; i < static_cast<int>(corral.size()); ++i) {
                if (mixed(i) > 1e-14) {
                    next.push_back(corral[i]);
                    next_lambda(kept++) = mixed(i);
                }
            }
            if (next.empty()) {
                // Degenerate trim; keep the heaviest point to stay well posed.
                int h = 0;
                for (int i = 1; i < static_cast<int>(corral.size()); ++i)
                    if (mixed(i) > mixed(h)) h = i;
                next.push_back(corral[h]);
                next_lambda(0) = 1.0;
                kept = 1;
            }
            corral = std::move(next);
            lambda = next_lambda.head(kept);
            lambda /= lambda.sum();
            x = Vec::Zero(P.dim);
            for (int i = 0; i < static_cast<int>(corral.size()); ++i) x += lambda(i) * q.col(corral[i]);
        }
    }
    if (!converged) fail(ErrorCode::Numeric, "nearest_point: projection did not reach the duality gap target");
    return p + x;
}

double distance_to(const Polytope& P, const Vec& p, double tol) {
    return (nearest_point(P, p, tol) - p).norm();
}

double hausdorff_nested(const Polytope& K, const Polytope& L, double tol) {
    if (K.dim != L.dim) fail(ErrorCode::InvalidArgument, "hausdorff_nested: dimension mismatch");
    double scale = 1.0;
    for (const auto& v : K.vertices) scale = std::max(scale, v.norm());
    for (const auto& v : K.vertices) {
        if (!L.contains(v, 1e-9 * scale))
            fail(ErrorCode::InvalidArgument, "hausdorff_nested: inner polytope is not contained in the outer one");
    }
    // Under K within L, sup_{x in L} dist(x, K) is attained at a vertex of L,
    // and sup_{x in K} dist(x, L) = 0.
    double worst = 0.0;
    for (const auto& v : L.vertices) worst = std::max(worst, distance_to(K, v, tol));
    return worst;
}

} // namespace hypercell::geom
