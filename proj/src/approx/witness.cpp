#include "approx/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hypercell::approx {

using geom::Halfspace;
using geom::Polytope;
using geom::Vec;

namespace {

// Angular radius of a cap with chord radius t: 2 asin(t/2).
double chord_angle(double t) { return 2.0 * std::asin(0.5 * t); }

double angle_between(const Vec& a, const Vec& b) {
    return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

// Uniform direction within angular distance theta_max of z.  The flat
// rejection envelope needs theta_max < pi/2, which every caller satisfies
// because witness caps have height below 1.
Vec uniform_in_cap(const Vec& z, double theta_max, RandomStream& rng) {
    const int d = static_cast<int>(z.size());
    if (theta_max <= 0.0) return z;
    double theta;
    if (d == 2) {
        theta = (2.0 * rng.uniform() - 1.0) * theta_max;
        double base = std::atan2(z(1), z(0));
        Vec u(2);
        u << std::cos(base + theta), std::sin(base + theta);
        return u;
    }
    const double top = std::pow(std::sin(theta_max), d - 2);
    for (;;) {
        theta = rng.uniform() * theta_max;
        if (rng.uniform() * top <= std::pow(std::sin(theta), d - 2)) break;
    }
    Vec g(d);
    for (;;) {
        for (int i = 0; i < d; ++i) g(i) = rng.gaussian();
        g -= g.dot(z) * z;
        double n = g.norm();
        if (n > 1e-12) {
            g /= n;
            break;
        }
    }
    return std::cos(theta) * z + std::sin(theta) * g;
}

double min_angle_to(const Vec& z, const std::vector<Vec>& centers) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : centers) best = std::min(best, angle_between(z, y));
    return best;
}

// Mirrored farthest-point insertion: per round the best of 10 * pairs random
// candidates goes in together with its mirror; a whole rejected batch
// declares saturation.
CapPacking saturated_packing(const Vec& c0, double domain_radius, double cap_chord,
                             RandomStream& rng) {
    CapPacking packing;
    packing.radius = cap_chord;
    packing.centers.push_back(c0);
    packing.centers.push_back(-c0);
    const double sep = 2.0 * chord_angle(cap_chord);
    for (;;) {
        const int pairs = static_cast<int>(packing.centers.size()) / 2;
        const int batch = 10 * pairs;
        Vec best;
        double best_gap = -1.0;
        for (int b = 0; b < batch; ++b) {
            Vec z = uniform_in_cap(c0, domain_radius, rng);
            double gap = min_angle_to(z, packing.centers);
            if (gap > best_gap) {
                best_gap = gap;
                best = z;
            }
        }
        if (best_gap < sep) break;
        packing.centers.push_back(best);
        packing.centers.push_back(-best);
    }
    packing.saturated = true;
    packing.min_angle = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < packing.centers.size(); ++a)
        for (size_t b = a + 1; b < packing.centers.size(); ++b)
            packing.min_angle =
                std::min(packing.min_angle, angle_between(packing.centers[a], packing.centers[b]));
    return packing;
}

// Greedy k-center order over mirror pairs; the representative's angle set to
// the symmetric selection equals its mirror's.
std::vector<int> spread_pair_order(const std::vector<Vec>& centers) {
    const int pairs = static_cast<int>(centers.size()) / 2;
    std::vector<int> order{0};
    std::vector<char> taken(pairs, 0);
    taken[0] = 1;
    std::vector<Vec> selected{centers[0], centers[1]};
    while (static_cast<int>(order.size()) < pairs) {
        int best = -1;
        double best_gap = -1.0;
        for (int p = 0; p < pairs; ++p) {
            if (taken[p]) continue;
            double gap = min_angle_to(centers[2 * p], selected);
            if (gap > best_gap) {
                best_gap = gap;
                best = p;
            }
        }
        taken[best] = 1;
        order.push_back(best);
        selected.push_back(centers[2 * best]);
        selected.push_back(centers[2 * best + 1]);
    }
    return order;
}

// Farthest-point fill of one big cap with sub-cap centers, starting at its
// center.  quota < 0 fills to capacity.
std::vector<Vec> fill_cap(const Vec& y, double inner_radius, double sub_sep, int quota,
                          RandomStream& rng) {
    std::vector<Vec> placed{y};
    while (quota < 0 || static_cast<int>(placed.size()) < quota) {
        const int batch = 30 * std::max<int>(4, quota > 0 ? quota : static_cast<int>(placed.size()));
        Vec best;
        double best_gap = -1.0;
        for (int b = 0; b < batch; ++b) {
            Vec z = uniform_in_cap(y, inner_radius, rng);
            double gap = min_angle_to(z, placed);
            if (gap > best_gap) {
                best_gap = gap;
                best = z;
            }
        }
        if (best_gap < sub_sep) break;
        placed.push_back(best);
    }
    return placed;
}

WitnessFacetSet make_set(const Vec& z, double rho, double r, int d) {
    WitnessFacetSet s;
    s.center = z;
    s.cap_radius = 0.5 * rho;
    s.t_hi = 0.25 * r;
    s.t_lo = 0.25 * r * (1.0 - rho * rho / 8.0);
    s.mu = direction::cap_area(d, rho * rho / 8.0) * (s.t_hi - s.t_lo);
    return s;
}

} // namespace

WitnessResult witness_construction(int n, double r, const direction::WellSpreadWitness& witness,
                                   RandomStream& rng) {
    const int d = static_cast<int>(witness.cap_center.size());
    if (d < 2 || !(witness.r > 0.0 && witness.r < 1.0) ||
        std::abs(witness.cap_center.norm() - 1.0) > 1e-9)
        fail(ErrorCode::InvalidArgument, "witness_construction: malformed witness cap");
    if (!(r > 0.0 && r < 1.0)) fail(ErrorCode::InvalidArgument, "witness_construction: r must lie in (0,1)");
    const int min_n = 2 * d;
    if (n < min_n)
        fail(ErrorCode::InvalidArgument, "witness_construction: n must be at least " +
                                             std::to_string(min_n) + " so the normals positively span");

    const double theta_c = std::acos(1.0 - witness.r); // below pi/2 since r < 1
    const double big_angle = chord_angle(r / 12.0);
    const double domain = theta_c - big_angle;
    if (domain <= 0.0)
        fail(ErrorCode::InvalidArgument,
             "witness_construction: caps of chord " + std::to_string(r / 12.0) +
                 " do not fit inside the witness cap");

    WitnessResult out;
    out.min_feasible_n = min_n;
    out.rho = std::min(r / 12.0, 0.25 * r * std::pow(double(n), -1.0 / (d - 1)));
    out.packing = saturated_packing(witness.cap_center, domain, r / 12.0, rng);

    const int M = static_cast<int>(out.packing.centers.size());
    const double sub_sep = 2.0 * chord_angle(out.rho);
    std::vector<Vec> sub_centers;
    if (n <= M) {
        auto order = spread_pair_order(out.packing.centers);
        for (int p : order) {
            sub_centers.push_back(out.packing.centers[2 * p]);
            if (static_cast<int>(sub_centers.size()) == n) break;
            sub_centers.push_back(out.packing.centers[2 * p + 1]);
            if (static_cast<int>(sub_centers.size()) == n) break;
        }
        out.big_caps_used = n;
    } else {
        const double inner = big_angle - chord_angle(out.rho);
        const int base = n / M;
        const int extra = n % M;
        bool short_fall = false;
        for (int c = 0; c < M && !short_fall; ++c) {
            int quota = base + (c < extra ? 1 : 0);
            auto placed = fill_cap(out.packing.centers[c], inner, sub_sep, quota, rng);
            if (static_cast<int>(placed.size()) < quota) short_fall = true;
            for (auto& z : placed) sub_centers.push_back(std::move(z));
        }
        if (short_fall) {
            long capacity = 0;
            for (int c = 0; c < M; ++c)
                capacity += static_cast<long>(
                    fill_cap(out.packing.centers[c], inner, sub_sep, -1, rng).size());
            fail(ErrorCode::Exhausted, "witness_construction: packing infeasible for n = " +
                                           std::to_string(n) +
                                           "; achievable maximum for these parameters is about " +
                                           std::to_string(capacity));
        }
        out.big_caps_used = M;
    }

    out.sets.reserve(n);
    for (const auto& z : sub_centers) out.sets.push_back(make_set(z, out.rho, r, d));
    out.P = witness_polytope(out.sets, d, rng);
    return out;
}

Polytope witness_polytope(const std::vector<WitnessFacetSet>& sets, int d, RandomStream& rng) {
    if (sets.empty()) fail(ErrorCode::InvalidArgument, "witness_polytope: empty facet-set family");
    std::vector<Halfspace> hs;
    hs.reserve(sets.size());
    for (const auto& s : sets) {
        Vec v = uniform_in_cap(s.center, chord_angle(s.cap_radius), rng);
        double t = s.t_lo + (s.t_hi - s.t_lo) * rng.uniform();
        hs.push_back(Halfspace::make(v, t, -1));
    }
    Polytope P = geom::intersect_or_throw(hs);
    if (P.f() != static_cast<int>(sets.size()))
        fail(ErrorCode::Numeric, "witness facet certificate failed: expected " +
                                     std::to_string(sets.size()) + " facets, built " +
                                     std::to_string(P.f()));
    for (const auto& v : P.vertices)
        if (!(v.norm() < 1.0))
            fail(ErrorCode::Numeric, "witness containment certificate failed: vertex norm " +
                                         std::to_string(v.norm()));
    return P;
}

} // namespace hypercell::approx
