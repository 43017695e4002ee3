#include "geom/volumes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "common.hpp"

namespace hypercell::geom {

namespace {

constexpr double kRankTol = 1e-7;

// Orthonormal basis of the affine hull of the rows of `pts` (columns of the
// returned matrix); rank_out gets the affine rank.
Mat affine_basis(const Mat& pts, int& rank_out) {
    const int k = static_cast<int>(pts.rows());
    const int m = static_cast<int>(pts.cols());
    if (k <= 1) {
        rank_out = 0;
        return Mat::Zero(m, 0);
    }
    Mat diff(k - 1, m);
    for (int r = 1; r < k; ++r) diff.row(r - 1) = pts.row(r) - pts.row(0);
    Eigen::JacobiSVD<Mat> svd(diff, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > kRankTol * sv(0)) ++rank;
    rank_out = rank;
    return svd.matrixV().leftCols(rank);
}

struct AreaCentroid {
    double measure = 0.0;
    Vec centroid;
};

// Polygon area and centroid for points in convex position (any order).
AreaCentroid polygon_area_centroid(const Mat& pts) {
    const int n = static_cast<int>(pts.rows());
    Vec mean = pts.colwise().mean();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::atan2(pts(a, 1) - mean(1), pts(a, 0) - mean(0)) <
               std::atan2(pts(b, 1) - mean(1), pts(b, 0) - mean(0));
    });
    double area2 = 0.0;
    double cx = 0.0, cy = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto& a = pts.row(order[i]);
        const auto& b = pts.row(order[(i + 1) % n]);
        double cross = a(0) * b(1) - b(0) * a(1);
        area2 += cross;
        cx += (a(0) + b(0)) * cross;
        cy += (a(1) + b(1)) * cross;
    }
    AreaCentroid out;
    out.measure = 0.5 * std::abs(area2);
    out.centroid = mean;
    if (std::abs(area2) > 1e-300) {
        out.centroid = Vec(2);
        out.centroid << cx / (3.0 * area2), cy / (3.0 * area2);
    }
    return out;
}

// m-volume and centroid of a face given by points in R^m with per-point
// facet-label sets; sub-faces are recovered from shared labels.
AreaCentroid face_measure(const Mat& pts, const std::vector<std::vector<int>>& labels, int m) {
    const int n = static_cast<int>(pts.rows());
    AreaCentroid out;
    out.centroid = pts.colwise().mean();
    if (m == 1) {
        double lo = pts.col(0).minCoeff(), hi = pts.col(0).maxCoeff();
        out.measure = hi - lo;
        out.centroid = Vec(1);
        out.centroid << 0.5 * (lo + hi);
        return out;
    }
    if (m == 2) return polygon_area_centroid(pts);

    Vec apex = pts.colwise().mean();
    std::map<int, std::vector<int>> by_label;
    for (int i = 0; i < n; ++i)
        for (int l : labels[i]) by_label[l].push_back(i);

    double total = 0.0;
    Vec weighted = Vec::Zero(m);
    std::set<std::vector<int>> seen; // dedup sub-faces found under two labels
    for (auto& [l, members] : by_label) {
        if (static_cast<int>(members.size()) < m || static_cast<int>(members.size()) == n) continue;
        if (!seen.insert(members).second) continue;
        Mat sub(members.size(), m);
        std::vector<std::vector<int>> sub_labels;
        for (size_t r = 0; r < members.size(); ++r) {
            sub.row(r) = pts.row(members[r]);
            sub_labels.push_back(labels[members[r]]);
        }
        int rank = 0;
        Mat basis = affine_basis(sub, rank);
        if (rank != m - 1) continue;
        Mat local(members.size(), m - 1);
        for (size_t r = 0; r < members.size(); ++r)
            local.row(r) = (sub.row(r) - sub.row(0)) * basis;
        AreaCentroid child = face_measure(local, sub_labels, m - 1);
        if (child.measure <= 0.0) continue;
        Vec child_center = sub.row(0).transpose() + basis * child.centroid;
        Vec rel = apex - sub.row(0).transpose();
        double height = (rel - basis * (basis.transpose() * rel)).norm();
        double pyramid = height * child.measure / m;
        if (pyramid <= 0.0) continue;
        Vec pyramid_center = apex + (double(m) / (m + 1)) * (child_center - apex);
        total += pyramid;
        weighted += pyramid * pyramid_center;
    }
    out.measure = total;
    if (total > 0.0) out.centroid = weighted / total;
    return out;
}

double hull_area_2d(std::vector<std::array<double, 2>> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    const int n = static_cast<int>(p.size());
    if (n < 3) return 0.0;
    auto cross = [](const std::array<double, 2>& o, const std::array<double, 2>& a, const std::array<double, 2>& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<std::array<double, 2>> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    double area2 = 0.0;
    for (size_t i = 0; i < h.size(); ++i) {
        const auto& a = h[i];
        const auto& b = h[(i + 1) % h.size()];
        area2 += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * std::abs(area2);
}

// Ordered facet areas of a 3-polytope plus edge data for the mean width.
double surface_area_3d(const Polytope& P) {
    double total = 0.0;
    for (int k = 0; k < P.f(); ++k) {
        auto ids = P.facet_vertices(k);
        Mat pts(ids.size(), 3);
        for (size_t r = 0; r < ids.size(); ++r) pts.row(r) = P.vertices[ids[r]].transpose();
        int rank = 0;
        Mat basis = affine_basis(pts, rank);
        if (rank != 2) continue;
        Mat local(ids.size(), 2);
        for (size_t r = 0; r < ids.size(); ++r) local.row(r) = (pts.row(r) - pts.row(0)) * basis;
        total += polygon_area_centroid(local).measure;
    }
    return total;
}

double mean_width_sum_3d(const Polytope& P) {
    // Sum over edges of length times exterior dihedral angle; edges are the
    // facet pairs sharing exactly two vertices.
    double sum = 0.0;
    std::vector<std::vector<int>> fv(P.f());
    for (int k = 0; k < P.f(); ++k) {
        fv[k] = P.facet_vertices(k);
        std::sort(fv[k].begin(), fv[k].end());
    }
    for (int k = 0; k < P.f(); ++k) {
        for (int k2 = k + 1; k2 < P.f(); ++k2) {
            std::vector<int> common;
            std::set_intersection(fv[k].begin(), fv[k].end(), fv[k2].begin(), fv[k2].end(),
                                  std::back_inserter(common));
            if (common.size() != 2) continue;
            double len = (P.vertices[common[0]] - P.vertices[common[1]]).norm();
            double c = P.halfspaces[k].a().normalized().dot(P.halfspaces[k2].a().normalized());
            double angle = std::acos(std::clamp(c, -1.0, 1.0));
            sum += len * angle;
        }
    }
    return sum;
}

} // namespace

VolumeData volume_centroid(const Polytope& P) {
    if (P.vertices.empty()) fail(ErrorCode::InvalidArgument, "volume_centroid: no vertices");
    const int d = P.dim;
    Mat pts(P.vertex_count(), d);
    for (int i = 0; i < P.vertex_count(); ++i) pts.row(i) = P.vertices[i].transpose();
    AreaCentroid ac = face_measure(pts, P.vertex_facets, d);
    VolumeData out;
    out.volume = ac.measure;
    out.centroid = ac.centroid;
    return out;
}

double hull_volume(const Mat& pts) {
    const int j = static_cast<int>(pts.cols());
    const int n = static_cast<int>(pts.rows());
    if (j == 0 || n == 0) return 0.0;
    if (j == 1) return pts.col(0).maxCoeff() - pts.col(0).minCoeff();
    if (j == 2) {
        std::vector<std::array<double, 2>> p(n);
        for (int i = 0; i < n; ++i) p[i] = {pts(i, 0), pts(i, 1)};
        return hull_area_2d(std::move(p));
    }
    int rank = 0;
    affine_basis(pts, rank);
    if (rank < j) return 0.0;
    Vec mean = pts.colwise().mean();
    double spread = 0.0;
    for (int i = 0; i < n; ++i) spread = std::max(spread, (pts.row(i).transpose() - mean).norm());
    // Polar dual: each centered point gives a constraint; the dual's vertices
    // are the hull's facet normals (scaled), so a second kernel build on those
    // recovers the hull as a halfspace intersection.
    std::vector<Halfspace> dual;
    for (int i = 0; i < n; ++i) {
        Vec c = (pts.row(i).transpose() - mean) / spread;
        if (c.norm() < 1e-12) continue;
        dual.push_back(Halfspace::from_constraint(c, 1.0));
    }
    Polytope D = intersect_or_throw(dual);
    std::vector<Halfspace> primal;
    for (const auto& y : D.vertices) primal.push_back(Halfspace::from_constraint(y, 1.0));
    Polytope H = intersect_or_throw(primal);
    return volume_centroid(H).volume * std::pow(spread, j);
}

IntrinsicVolumes intrinsic_volumes_exact(const Polytope& P) {
    const int d = P.dim;
    if (d > 3) fail(ErrorCode::Unsupported, "intrinsic_volumes: exact mode requires d <= 3");
    IntrinsicVolumes out;
    out.value.assign(d + 1, 0.0);
    out.value[0] = 1.0;
    if (d == 2) {
        Mat pts(P.vertex_count(), 2);
        for (int i = 0; i < P.vertex_count(); ++i) pts.row(i) = P.vertices[i].transpose();
        Vec mean = pts.colwise().mean();
        std::vector<int> order(P.vertex_count());
        for (int i = 0; i < P.vertex_count(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return std::atan2(pts(a, 1) - mean(1), pts(a, 0) - mean(0)) <
                   std::atan2(pts(b, 1) - mean(1), pts(b, 0) - mean(0));
        });
        double perim = 0.0;
        for (size_t i = 0; i < order.size(); ++i)
            perim += (P.vertices[order[i]] - P.vertices[order[(i + 1) % order.size()]]).norm();
        out.value[1] = perim / 2.0;
        out.value[2] = polygon_area_centroid(pts).measure;
        return out;
    }
    if (d == 3) {
        out.value[1] = mean_width_sum_3d(P) / (2.0 * kPi);
        out.value[2] = surface_area_3d(P) / 2.0;
        out.value[3] = volume_centroid(P).volume;
        return out;
    }
    fail(ErrorCode::Unsupported, "intrinsic_volumes: exact mode requires d in {2,3}");
}

IntrinsicVolumes intrinsic_volumes_mc(const Polytope& P, int samples, RandomStream& rng) {
    const int d = P.dim;
    if (samples < 2) fail(ErrorCode::InvalidArgument, "intrinsic_volumes: need at least 2 samples");
    IntrinsicVolumes out;
    out.value.assign(d + 1, 0.0);
    out.stderr_.assign(d + 1, 0.0);
    out.value[0] = 1.0;
    out.value[d] = volume_centroid(P).volume; // j = d projects onto everything
    const int n = P.vertex_count();
    Mat verts(n, d);
    for (int i = 0; i < n; ++i) verts.row(i) = P.vertices[i].transpose();
    for (int j = 1; j < d; ++j) {
        double factor = 1.0;
        { // C(d,j) * kappa_d / (kappa_j * kappa_{d-j})
            double logc = std::lgamma(d + 1) - std::lgamma(j + 1) - std::lgamma(d - j + 1);
            factor = std::exp(logc) * unit_ball_volume(d) / (unit_ball_volume(j) * unit_ball_volume(d - j));
        }
        double sum = 0.0, sumsq = 0.0;
        for (int s = 0; s < samples; ++s) {
            Mat g(d, j);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < j; ++c) g(r, c) = rng.gaussian();
            Eigen::HouseholderQR<Mat> qr(g);
            Mat q = qr.householderQ() * Mat::Identity(d, j);
            double v = hull_volume(verts * q) * factor;
            sum += v;
            sumsq += v * v;
        }
        out.value[j] = sum / samples;
        double var = std::max(0.0, sumsq / samples - out.value[j] * out.value[j]);
        out.stderr_[j] = std::sqrt(var / samples);
    }
    return out;
}

double isoperimetric_ratio(const Polytope& P, int i, int j) {
    const int d = P.dim;
    if (i < 1 || i >= j || j > d) fail(ErrorCode::InvalidArgument, "isoperimetric_ratio: need 1 <= i < j <= d");
    IntrinsicVolumes iv;
    if (d <= 3) {
        iv = intrinsic_volumes_exact(P);
    } else {
        RandomStream rng(0x150cfe11dULL);
        iv = intrinsic_volumes_mc(P, 20000, rng);
    }
    if (iv.value[i] <= 0.0) fail(ErrorCode::Degenerate, "isoperimetric_ratio: V_i vanishes");
    return std::pow(iv.value[j], 1.0 / j) / std::pow(iv.value[i], 1.0 / i);
}

} // namespace hypercell::geom
