#include <doctest.h>

#include <cmath>
#include <sstream>

#include "approx/circumscribe.hpp"
#include "approx/cones.hpp"
#include "approx/continuity.hpp"
#include "approx/corpus.hpp"
#include "approx/prune.hpp"
#include "approx/witness.hpp"
#include "geom/phi.hpp"
#include "geom/volumes.hpp"
#include "random.hpp"
#include "stats/tests.hpp"

using namespace hypercell;
using namespace hypercell::approx;
using geom::Halfspace;
using geom::Polytope;
using geom::Vec;

namespace {

Vec vec2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

Vec vec3(double x, double y, double z) {
    Vec v(3);
    v << x, y, z;
    return v;
}

// Vertices on the unit circle; halfspace offsets equal the inradius.
Polytope regular_ngon(int n) {
    std::vector<Halfspace> hs;
    for (int k = 0; k < n; ++k) {
        double a = 2.0 * M_PI * k / n;
        hs.push_back(Halfspace::make(vec2(std::cos(a), std::sin(a)), std::cos(M_PI / n), -1));
    }
    return geom::intersect_or_throw(hs);
}

Polytope box2(double hx, double hy) {
    std::vector<Halfspace> hs;
    hs.push_back(Halfspace::from_constraint(vec2(1, 0), hx));
    hs.push_back(Halfspace::from_constraint(vec2(-1, 0), hx));
    hs.push_back(Halfspace::from_constraint(vec2(0, 1), hy));
    hs.push_back(Halfspace::from_constraint(vec2(0, -1), hy));
    return geom::intersect_or_throw(hs);
}

// Apex on four slant facets, so not simple.
Polytope square_pyramid() {
    const double s = std::sqrt(0.5);
    std::vector<Halfspace> hs;
    hs.push_back(Halfspace::from_constraint(vec3(0, 0, -1), 0.0));
    hs.push_back(Halfspace::from_constraint(vec3(s, 0, s), s));
    hs.push_back(Halfspace::from_constraint(vec3(-s, 0, s), s));
    hs.push_back(Halfspace::from_constraint(vec3(0, s, s), s));
    hs.push_back(Halfspace::from_constraint(vec3(0, -s, s), s));
    return geom::intersect_or_throw(hs);
}

const direction::DirectionalDistribution& iso2() {
    static const auto phi = direction::DirectionalDistribution::isotropic(2);
    return phi;
}

const direction::DirectionalDistribution& iso3() {
    static const auto phi = direction::DirectionalDistribution::isotropic(3);
    return phi;
}

// Shared many-facet body for the two rate tests.
const Polytope& bumpy200() {
    static const Polytope P = [] {
        RandomStream rng(4242);
        return tangent_polytope(3, 200, 0.003, iso3(), rng);
    }();
    return P;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i) {
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    return stats::ols_fit(lx, ly).slope;
}

double chord_angle(double t) { return 2.0 * std::asin(0.5 * t); }

} // namespace

TEST_CASE("circumscribe returns the body itself when the budget covers it") {
    Polytope sq = box2(1.0, 1.0);
    auto res = circumscribe(sq, 4);
    CHECK(res.d_h == 0.0);
    CHECK(res.chosen == std::vector<int>{0, 1, 2, 3});
    CHECK(res.Q.f() == 4);
    CHECK_THROWS_AS(circumscribe(sq, 2), Error);
}

TEST_CASE("circumscribe matches equally spaced subsets of the regular 64-gon") {
    Polytope K = regular_ngon(64);
    std::vector<double> ms, dhs;
    for (int m : {8, 16, 32}) {
        auto res = circumscribe(K, m);
        double oracle = std::cos(M_PI / 64) * (1.0 / std::cos(M_PI / m) - 1.0);
        CHECK(res.d_h == doctest::Approx(oracle).epsilon(1e-9));
        CHECK(res.swaps == 0); // equally spaced is already optimal
        CHECK(res.Q.f() == m);
        ms.push_back(m);
        dhs.push_back(res.d_h);
    }
    CHECK(fit_slope(ms, dhs) == doctest::Approx(-2.0).epsilon(0.15));
}

TEST_CASE("circumscribe reports a budget that cannot bound the body") {
    Polytope thin = box2(10.0, 0.1);
    CHECK_THROWS_WITH_AS(circumscribe(thin, 3), doctest::Contains("positively span"), Error);
}

TEST_CASE("circumscribe rate on a many-facet three dimensional body") {
    const Polytope& K = bumpy200();
    REQUIRE(K.f() == 200);
    std::vector<double> ms, dhs;
    for (int m : {10, 20, 40}) {
        auto res = circumscribe(K, m, 0);
        CHECK(res.Q.f() <= m);
        for (const auto& v : K.vertices) CHECK(res.Q.contains(v, 1e-7));
        ms.push_back(m);
        dhs.push_back(res.d_h);
    }
    double slope = fit_slope(ms, dhs);
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.3));
}

TEST_CASE("circumscribe swap polish never worsens the greedy pick") {
    RandomStream rng(51);
    Polytope K = tangent_polytope(3, 40, 0.02, iso3(), rng);
    auto greedy = circumscribe(K, 8, 0);
    auto polished = circumscribe(K, 8, 3);
    CHECK(polished.d_h <= greedy.d_h + 1e-12);
}

TEST_CASE("prune keeps alternating facets of the regular 32-gon") {
    Polytope K = regular_ngon(32);
    auto res = prune_to_subset(K, 16);
    std::vector<int> expect_sched, expect_kept;
    for (int j = 0; j < 32; j += 2) expect_sched.push_back(j);
    for (int j = 1; j < 32; j += 2) expect_kept.push_back(j);
    CHECK(res.trace.schedule == expect_sched);
    CHECK(res.kept == expect_kept);
    double oracle = std::cos(M_PI / 32) * (1.0 / std::cos(2.0 * M_PI / 32) - 1.0);
    CHECK(res.d_h == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(res.pruned.f() == 16);
    for (size_t s = 0; s < res.trace.schedule.size(); ++s) {
        CHECK(res.trace.dh_per_step[s] >= 0.0);
        if (s > 0) CHECK(res.trace.dh_from_original[s] >= res.trace.dh_from_original[s - 1]);
        CHECK(res.trace.facets_left[s] == 31 - static_cast<int>(s));
    }
}

TEST_CASE("prune follows the exact halving oracle from 64 facets") {
    auto res = prune_to_subset(regular_ngon(64), 8);
    std::vector<double> ks, dhs;
    for (size_t s = 0; s < res.trace.facets_left.size(); ++s) {
        int k = res.trace.facets_left[s];
        if (k == 32 || k == 16 || k == 8) {
            double oracle = std::cos(M_PI / 64) * (1.0 / std::cos(M_PI / k) - 1.0);
            CHECK(res.trace.dh_from_original[s] == doctest::Approx(oracle).epsilon(1e-9));
            ks.push_back(k);
            dhs.push_back(res.trace.dh_from_original[s]);
        }
    }
    REQUIRE(ks.size() == 3);
    CHECK(fit_slope(ks, dhs) == doctest::Approx(-2.0).epsilon(0.15));
}

TEST_CASE("prune trivial and error paths") {
    Polytope K = regular_ngon(12);
    auto all = prune_to_subset(K, 12);
    CHECK(all.d_h == 0.0);
    CHECK(all.kept.size() == 12);
    CHECK(all.trace.schedule.empty());

    CHECK_THROWS_AS(prune_to_subset(K, 2), Error);
    CHECK_THROWS_WITH_AS(prune_to_subset(box2(1, 1), 3), doctest::Contains("unbounds"), Error);
    CHECK_THROWS_WITH_AS(prune_to_subset(square_pyramid(), 4), doctest::Contains("simple"), Error);
}

TEST_CASE("prune tracks direction content along the trace") {
    Polytope K = regular_ngon(8);
    auto res = prune_to_subset(K, 5, &iso2());
    REQUIRE(res.trace.phi_per_step.size() == 3);
    double phi0 = geom::phi_content(K, iso2()).value;
    double acc = phi0;
    for (double dphi : res.trace.phi_per_step) {
        CHECK(dphi >= 0.0); // enlargement never shrinks the content
        acc += dphi;
    }
    CHECK(acc == doctest::Approx(geom::phi_content(res.pruned, iso2()).value).epsilon(1e-12));

    std::ostringstream csv;
    res.trace.to_csv(csv, phi0);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "k,d_H,Phi");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 3);

    auto bare = prune_to_subset(K, 5);
    std::ostringstream csv2;
    bare.trace.to_csv(csv2);
    CHECK(csv2.str().substr(0, 6) == "k,d_H\n");
}

TEST_CASE("prune envelope fitted on training cells holds on holdout cells") {
    const int k = 12;
    RandomStream train_rng(802);
    double c_hat = 0.0;
    for (int c = 0; c < 25; ++c) {
        Polytope P = tangent_polytope(2, 24, 0.01, iso2(), train_rng);
        double phi = geom::phi_content(P, iso2()).value;
        double ratio = prune_to_subset(P, k).d_h / (phi * std::pow(k, -2.0));
        c_hat = std::max(c_hat, ratio);
    }
    c_hat *= 1.25;
    RandomStream hold_rng(803);
    int pass = 0;
    for (int c = 0; c < 40; ++c) {
        Polytope P = tangent_polytope(2, 24, 0.01, iso2(), hold_rng);
        double phi = geom::phi_content(P, iso2()).value;
        if (prune_to_subset(P, k).d_h <= c_hat * phi * std::pow(k, -2.0)) ++pass;
    }
    CHECK(pass >= 39);
}

TEST_CASE("prune rate on a many-facet three dimensional body") {
    auto res = prune_to_subset(bumpy200(), 12);
    std::vector<double> ks, dhs;
    for (size_t s = 0; s < res.trace.facets_left.size(); ++s) {
        int k = res.trace.facets_left[s];
        if (k <= 100 && k >= 12 && k % 4 == 0) {
            ks.push_back(k);
            dhs.push_back(res.trace.dh_from_original[s]);
        }
    }
    REQUIRE(ks.size() >= 10);
    double slope = fit_slope(ks, dhs);
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.3));
}

TEST_CASE("removable set respects regular polygon symmetry") {
    Polytope K = regular_ngon(16);
    auto wide = removable_set(K, 50.0, 50.0, iso2());
    CHECK(wide.J.size() == 16);
    for (int j = 1; j < 16; ++j) {
        CHECK(wide.dh[j] == doctest::Approx(wide.dh[0]).epsilon(1e-9));
        CHECK(wide.phi_after[j] == doctest::Approx(wide.phi_after[0]).epsilon(1e-12));
    }
    auto narrow = removable_set(K, 1e-4, 1e-4, iso2());
    CHECK(narrow.J.empty());

    auto sq = removable_set(box2(1, 1), 50.0, 50.0, iso2());
    CHECK(sq.J.empty());
    for (int j = 0; j < 4; ++j) {
        CHECK(sq.unbounding[j] == 1);
        CHECK(std::isinf(sq.dh[j]));
        CHECK(std::isnan(sq.phi_after[j]));
    }
}

TEST_CASE("removable scale fitted on training keeps a quarter removable on holdout") {
    RandomStream train_rng(804);
    std::vector<Polytope> train;
    for (int c = 0; c < 25; ++c) train.push_back(tangent_polytope(2, 20, 0.01, iso2(), train_rng));
    double s = fit_removable_scale(train, iso2());
    CHECK(s > 0.0);
    for (const auto& P : train) {
        auto rep = removable_set(P, s, s, iso2());
        CHECK(rep.J.size() >= 5);
    }
    RandomStream hold_rng(805);
    int pass = 0;
    for (int c = 0; c < 40; ++c) {
        Polytope P = tangent_polytope(2, 20, 0.01, iso2(), hold_rng);
        if (removable_set(P, s, s, iso2()).J.size() >= 5) ++pass;
    }
    CHECK(pass >= 39);
}

TEST_CASE("removable set validates inputs") {
    CHECK_THROWS_WITH_AS(removable_set(square_pyramid(), 1.0, 1.0, iso3()),
                         doctest::Contains("simple"), Error);
    CHECK_THROWS_WITH_AS(removable_set(regular_ngon(8), 1.0, 1.0, iso3()),
                         doctest::Contains("dimension"), Error);
}

TEST_CASE("normal cones and umbrellas of the square") {
    Polytope sq = box2(1, 1);
    auto cones = normal_cones(sq);
    REQUIRE(cones.size() == 4);
    for (int v = 0; v < 4; ++v) {
        for (int c = 0; c < 2; ++c) {
            Vec expect = sq.halfspaces[sq.vertex_facets[v][c]].a();
            CHECK((cones[v].col(c) - expect).norm() == doctest::Approx(0.0));
        }
    }
    for (int j = 0; j < 4; ++j) {
        auto umb = facet_umbrella(sq, j);
        CHECK(umb == sq.facet_vertices(j));
        CHECK(umb.size() == 2);
    }
    CHECK_THROWS_AS(facet_umbrella(sq, 4), Error);
}

TEST_CASE("cone masses: exact identities and square umbrella values") {
    Polytope sq = box2(1, 1);
    RandomStream rng(900);
    auto masses = cone_masses(sq, iso2(), 40000, rng);
    CHECK(masses.vertex_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(masses.facet_sum == doctest::Approx(2.0).epsilon(1e-12));
    for (const auto& est : masses.facet) {
        CHECK(std::abs(est.value - 0.5) <= 3.5 * est.stderr_);
    }
    for (const auto& est : masses.vertex) {
        CHECK(std::abs(est.value - 0.25) <= 3.5 * est.stderr_);
    }
    RandomStream rng2(901);
    auto one = phi_measure(sq, 0, iso2(), 20000, rng2);
    CHECK(std::abs(one.value - 0.5) <= 3.5 * one.stderr_);
}

TEST_CASE("cone masses on a random three dimensional body with discrete directions") {
    RandomStream rng(902);
    Polytope P = tangent_polytope(3, 14, 0.02, iso3(), rng);
    std::vector<Vec> dirs;
    std::vector<double> w;
    for (int i = 0; i < 9; ++i) {
        Vec g(3);
        for (int c = 0; c < 3; ++c) g(c) = rng.gaussian();
        dirs.push_back(g.normalized());
        w.push_back(0.5 + rng.uniform());
    }
    auto phi = direction::DirectionalDistribution::discrete(dirs, w);
    auto masses = cone_masses(P, phi, 30000, rng);
    CHECK(masses.vertex_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(masses.facet_sum == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("cone operations require simple polytopes") {
    Polytope pyr = square_pyramid();
    RandomStream rng(903);
    CHECK_THROWS_AS(normal_cones(pyr), Error);
    CHECK_THROWS_AS(cone_masses(pyr, iso3(), 100, rng), Error);
    CHECK_THROWS_AS(phi_measure(pyr, 0, iso3(), 100, rng), Error);
}

TEST_CASE("elongated prune validates the elongation precondition") {
    Polytope sq = box2(1, 1);
    CHECK_THROWS_WITH_AS(elongated_prune(sq, 0.4, 1, 2, 3), doctest::Contains("not below"), Error);
    CHECK_THROWS_AS(elongated_prune(sq, -1.0, 1, 2, 3), Error);
    CHECK_THROWS_AS(elongated_prune(sq, 0.4, 2, 1, 3), Error);
}

TEST_CASE("elongated prune on a thin rectangle with a trivial budget") {
    Polytope thin = box2(5.0, 0.05);
    auto res = elongated_prune(thin, 0.2, 1, 2, 4);
    CHECK(res.result.d_h == 0.0);
    CHECK(res.v1 == doctest::Approx(10.1).epsilon(1e-12));
    CHECK(res.ratio == doctest::Approx(1.0 / 10.1).epsilon(1e-12));
    CHECK(res.rate_bound ==
          doctest::Approx(std::pow(0.2, 0.25) * 10.1 * std::pow(4.0, -2.0)).epsilon(1e-12));
}

TEST_CASE("elongated prune beats an isotropic control and fits the thin-box rate") {
    const int n = 24, k = 10;
    Vec half(4);
    half << 1.0, 0.01, 0.01, 0.01;
    RandomStream rng(806);
    double thin_score = 0.0, iso_score = 0.0;
    for (int rep = 0; rep < 2; ++rep) {
        Polytope P = box_tangent_polytope(half, n, 0.05, rng);
        auto el = elongated_prune(P, 0.3, 1, 2, k);
        CHECK(el.ratio < 0.3);
        thin_score += el.result.d_h / el.v1;
    }
    auto iso4 = direction::DirectionalDistribution::isotropic(4);
    for (int rep = 0; rep < 2; ++rep) {
        Polytope P = tangent_polytope(4, n, 0.05, iso4, rng);
        auto res = prune_to_subset(P, k);
        RandomStream vr(807);
        double v1 = geom::intrinsic_volumes_mc(P, 2000, vr).value[1];
        iso_score += res.d_h / v1;
    }
    CHECK(thin_score < iso_score);

    // Rate along one trace; d = 4 targets -2/(d-1) = -2/3.
    Polytope P = box_tangent_polytope(half, n, 0.05, rng);
    auto res = elongated_prune(P, 0.3, 1, 2, 6);
    std::vector<double> ks, dhs;
    for (size_t s = 0; s < res.result.trace.facets_left.size(); ++s) {
        int left = res.result.trace.facets_left[s];
        if (left <= 16) {
            ks.push_back(left);
            dhs.push_back(res.result.trace.dh_from_original[s]);
        }
    }
    REQUIRE(ks.size() >= 6);
    CHECK(fit_slope(ks, dhs) == doctest::Approx(-2.0 / 3.0).epsilon(0.6));
}

TEST_CASE("continuity probe on identical bodies and rounded squares") {
    Polytope sq = box2(1, 1);
    auto same = isoperimetric_continuity_probe(sq, sq, 1, 2);
    CHECK(same.delta == 0.0);
    CHECK(same.gap == 0.0);

    double prev_gap = std::numeric_limits<double>::infinity();
    for (double r : {0.2, 0.1, 0.05}) {
        std::vector<Halfspace> hs;
        for (int kk = 0; kk < 64; ++kk) {
            double a = 2.0 * M_PI * kk / 64;
            Vec u = vec2(std::cos(a), std::sin(a));
            hs.push_back(Halfspace::from_constraint(u, std::abs(u(0)) + std::abs(u(1)) + r));
        }
        Polytope L = geom::intersect_or_throw(hs);
        auto probe = isoperimetric_continuity_probe(sq, L, 1, 2);
        CHECK(probe.gap > 0.0); // rounding toward the ball raises the ratio
        CHECK(probe.gap < prev_gap);
        CHECK(probe.delta > 0.0);
        prev_gap = probe.gap;
    }

    Polytope far = sq.translated(vec2(5.0, 0.0));
    CHECK_THROWS_WITH_AS(isoperimetric_continuity_probe(far, sq, 1, 2),
                         doctest::Contains("contained"), Error);
    Polytope huge = box2(20.0, 20.0);
    CHECK_THROWS_WITH_AS(isoperimetric_continuity_probe(sq, huge, 1, 2),
                         doctest::Contains("not below"), Error);
}

TEST_CASE("continuity exponent on nested prune pairs in dimension four") {
    auto iso4 = direction::DirectionalDistribution::isotropic(4);
    RandomStream rng(808);
    std::vector<ContinuityProbe> probes;
    for (int body = 0; body < 2; ++body) {
        Polytope K = tangent_polytope(4, 24, 0.05, iso4, rng);
        for (int k : {20, 16, 12, 10}) {
            Polytope L = prune_to_subset(K, k).pruned;
            probes.push_back(isoperimetric_continuity_probe(K, L, 1, 2, 6000));
        }
    }
    auto fit = continuity_exponent_fit(probes);
    CHECK(fit.used >= 6);
    CHECK(fit.exponent >= 0.5 - 0.15);
    CHECK_THROWS_AS(continuity_exponent_fit({}), Error);
}

TEST_CASE("witness construction certificates and cap geometry") {
    auto witness = iso2().well_spread_witness();
    REQUIRE(witness.has_value());
    const double r = 0.85;
    RandomStream rng(809);
    auto res = witness_construction(16, r, *witness, rng);

    CHECK(res.P.f() == 16);
    for (const auto& v : res.P.vertices) CHECK(v.norm() < 1.0);
    CHECK(res.rho == doctest::Approx(0.25 * r / 16.0));
    CHECK(res.min_feasible_n == 4);
    CHECK(res.packing.saturated);
    CHECK(res.packing.centers.size() % 2 == 0);
    CHECK(res.packing.radius == doctest::Approx(r / 12.0));
    CHECK(res.packing.min_angle >= 2.0 * chord_angle(r / 12.0) - 1e-9);

    const double theta_c = std::acos(1.0 - witness->r);
    for (const auto& z : res.packing.centers) {
        double to_center = std::acos(std::clamp(z.dot(witness->cap_center), -1.0, 1.0));
        CHECK(std::min(to_center, M_PI - to_center) <= theta_c - chord_angle(r / 12.0) + 1e-9);
    }

    REQUIRE(res.sets.size() == 16);
    for (size_t a = 0; a < res.sets.size(); ++a) {
        const auto& s = res.sets[a];
        CHECK(s.cap_radius == doctest::Approx(res.rho / 2.0));
        CHECK(s.t_hi == doctest::Approx(r / 4.0));
        CHECK(s.t_lo == doctest::Approx((r / 4.0) * (1.0 - res.rho * res.rho / 8.0)));
        CHECK(s.mu ==
              doctest::Approx(direction::cap_area(2, res.rho * res.rho / 8.0) * (s.t_hi - s.t_lo)));
        for (size_t b = a + 1; b < res.sets.size(); ++b) {
            double ang =
                std::acos(std::clamp(s.center.dot(res.sets[b].center), -1.0, 1.0));
            CHECK(ang >= 2.0 * chord_angle(res.rho) - 1e-9);
        }
    }
}

TEST_CASE("witness resampling keeps the certificates") {
    auto witness = iso2().well_spread_witness();
    RandomStream rng(810);
    auto res = witness_construction(16, 0.85, *witness, rng);
    for (int draw = 0; draw < 300; ++draw) {
        Polytope P = witness_polytope(res.sets, 2, rng);
        CHECK(P.f() == 16);
        double max_norm = 0.0;
        for (const auto& v : P.vertices) max_norm = std::max(max_norm, v.norm());
        CHECK(max_norm < 1.0);
    }
}

TEST_CASE("witness set measure scales with the facet-count exponent") {
    for (int d : {2, 3}) {
        auto witness = (d == 2 ? iso2() : iso3()).well_spread_witness();
        RandomStream rng(811 + d);
        std::vector<double> ns, mus;
        for (int n : {16, 32, 64}) {
            auto res = witness_construction(n, 0.85, *witness, rng);
            CHECK(res.P.f() == n);
            ns.push_back(n);
            mus.push_back(res.sets[0].mu);
        }
        double target = -double(d + 1) / (d - 1);
        CHECK(std::abs(fit_slope(ns, mus) - target) <= 0.2);
    }
}

TEST_CASE("witness determinism and error reporting") {
    auto witness = iso2().well_spread_witness();
    RandomStream a(812), b(812);
    auto ra = witness_construction(12, 0.8, *witness, a);
    auto rb = witness_construction(12, 0.8, *witness, b);
    CHECK(ra.P.to_json() == rb.P.to_json());
    CHECK(ra.packing.centers.size() == rb.packing.centers.size());

    RandomStream rng(813);
    CHECK_THROWS_WITH_AS(witness_construction(3, 0.8, *witness, rng), doctest::Contains("at least"),
                         Error);
    CHECK_THROWS_AS(witness_construction(16, 1.2, *witness, rng), Error);

    direction::WellSpreadWitness tiny;
    tiny.cap_center = vec2(1.0, 0.0);
    tiny.r = 0.0008;
    tiny.c5 = 0.1;
    CHECK_THROWS_WITH_AS(witness_construction(16, 0.9, tiny, rng), doctest::Contains("do not fit"),
                         Error);

    direction::WellSpreadWitness narrow;
    narrow.cap_center = vec2(1.0, 0.0);
    narrow.r = 0.015;
    narrow.c5 = 0.1;
    CHECK_THROWS_WITH_AS(witness_construction(12, 0.8, narrow, rng),
                         doctest::Contains("achievable maximum"), Error);
}

TEST_CASE("corpus draws are simple with the full facet count") {
    RandomStream rng(814);
    Polytope P = tangent_polytope(2, 20, 0.01, iso2(), rng);
    CHECK(P.f() == 20);
    CHECK(P.simplicity().simple);
    CHECK(P.contains(vec2(0, 0)));
    CHECK_THROWS_AS(tangent_polytope(2, 2, 0.01, iso2(), rng), Error);
    CHECK_THROWS_AS(tangent_polytope(2, 20, 1.5, iso2(), rng), Error);

    Vec half(4);
    half << 1.0, 1.0, 0.01, 0.01;
    Polytope B = box_tangent_polytope(half, 24, 0.05, rng);
    CHECK(B.f() == 24);
    CHECK(B.simplicity().simple);
}
