#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "helpers.hpp"

using namespace coneminq;
using testutil::orthant2;
using testutil::p1;
using testutil::polar_dir2;

namespace {
const double kSqrt2 = std::numbers::sqrt2;
}

TEST_CASE("wulff shape basics") {
    const Cone cone = orthant2();
    const Vec u1 = normalized(make_vec({-1.0, -1.0}));
    const CPolytope P = wulff_shape(cone, {{u1, 1.0}});
    CHECK(P.facets()[0].h == doctest::Approx(-1.0));
    // the triangle complement {x, y >= 0, x + y >= sqrt 2}
    CHECK(P.radial(normalized(make_vec({1.0, 1.0}))).rho ==
          doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(wulff_shape(cone, {}), InputError);
    CHECK_THROWS_AS(wulff_shape(cone, {{u1, -0.5}}), NonPositive);
    CHECK_THROWS_AS(wulff_shape(cone, {{normalized(make_vec({1.0, 1.0})), 1.0}}),
                    InvalidDirection);
}

TEST_CASE("inactive facet in a wulff shape") {
    const Cone cone = orthant2();
    const Vec u1 = normalized(make_vec({-1.0, -1.0}));
    const Vec u2 = make_vec({-0.8, -0.6});
    const CPolytope P = wulff_shape(cone, {{u1, 1.0}, {u2, 0.1}});
    // support of the first set at u2 is -0.6 sqrt2 < -0.1: facet 1 redundant
    CHECK(P.support(u2) == doctest::Approx(-0.6 * kSqrt2).epsilon(1e-10));
    CHECK_FALSE(P.facet_active(1));
    CHECK(P.facet_active(0));
}

TEST_CASE("radial closed form on the single-facet set") {
    const CPolytope P = p1();
    const RadialResult r0 = P.radial(normalized(make_vec({1.0, 1.0})));
    CHECK(r0.rho == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r0.facet == 0);
    const Vec v = make_vec({std::cos(0.2), std::sin(0.2)});
    CHECK(P.radial(v).rho ==
          doctest::Approx(kSqrt2 / (std::cos(0.2) + std::sin(0.2)))
              .epsilon(1e-14));
    CHECK_THROWS_AS(P.radial(normalized(make_vec({-1.0, 1.0}))), OutsideOmega);
}

TEST_CASE("radial facet switch for a two-facet set") {
    const Cone cone = orthant2();
    const Vec u1 = normalized(make_vec({-1.0, -1.0}));
    const Vec u2 = make_vec({-0.8, -0.6});
    const CPolytope P(cone, {{u1, -1.0}, {u2, -1.0}});
    const double theta_star = std::atan((0.8 * kSqrt2 - 1.0) / (1.0 - 0.6 * kSqrt2));
    CHECK(theta_star == doctest::Approx(0.7143).epsilon(1e-3));
    auto dir = [](double t) { return make_vec({std::cos(t), std::sin(t)}); };
    CHECK(P.radial(dir(theta_star - 0.01)).facet == 0);
    CHECK(P.radial(dir(theta_star + 0.01)).facet == 1);
    const RadialResult at = P.radial(dir(theta_star));
    CHECK(at.tie);
    CHECK(at.facet == 0);  // lowest index wins on ties
}

TEST_CASE("support values of the single-facet set") {
    const CPolytope P = p1();
    CHECK(P.support(normalized(make_vec({-1.0, -1.0}))) ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(P.support(normalized(make_vec({-2.0, -1.0}))) ==
          doctest::Approx(-kSqrt2 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(P.support(normalized(make_vec({-1.0, -2.0}))) ==
          doctest::Approx(-kSqrt2 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK_THROWS_AS(P.support(make_vec({1.0, 0.0})), Unbounded);
}

TEST_CASE("copolar radial is the reciprocal of the support") {
    const CPolytope P = p1();
    CHECK(P.copolar_radial(normalized(make_vec({-1.0, -1.0}))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(P.copolar_radial(normalized(make_vec({-2.0, -1.0}))) ==
          doctest::Approx(std::sqrt(5.0) / kSqrt2).epsilon(1e-12));
    const CPolytope P2 = P.scaled(2.0);
    const Vec u = polar_dir2(3.6);
    CHECK(P2.copolar_radial(u) ==
          doctest::Approx(0.5 * P.copolar_radial(u)).epsilon(1e-12));
}

TEST_CASE("duality and bipolar containment on random sets") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const CPolytope P = testutil::random_polytope2(rng, 5);
        std::uniform_real_distribution<double> phi(std::numbers::pi + 0.05,
                                                   1.5 * std::numbers::pi - 0.05);
        for (int k = 0; k < 50; ++k) {
            const Vec u = polar_dir2(phi(rng));
            CHECK(std::abs(P.support(u) * P.copolar_radial(u) + 1.0) < 1e-12);
        }
        // boundary samples against the copolar generator points
        std::uniform_real_distribution<double> th(0.05, std::numbers::pi / 2 - 0.05);
        for (int k = 0; k < 50; ++k) {
            const double t = th(rng);
            const Vec v = make_vec({std::cos(t), std::sin(t)});
            const Vec x = P.radial(v).rho * v;
            for (const Facet& f : P.facets())
                CHECK(x.dot(f.u / (-f.h)) <= -1.0 + 1e-10);
        }
    }
}

TEST_CASE("radial-support consistency and scaling") {
    std::mt19937 rng(31);
    const CPolytope P = testutil::random_polytope2(rng, 6);
    const CPolytope Q = P.scaled(1.7);
    std::uniform_real_distribution<double> th(0.02, std::numbers::pi / 2 - 0.02);
    for (int k = 0; k < 200; ++k) {
        const double t = th(rng);
        const Vec v = make_vec({std::cos(t), std::sin(t)});
        const RadialResult r = P.radial(v);
        const Facet& fi = P.facets()[r.facet];
        CHECK(std::abs(r.rho * fi.u.dot(v) - fi.h) < 1e-12);
        for (const Facet& fj : P.facets())
            CHECK(r.rho * fj.u.dot(v) <= fj.h + 1e-12);
        CHECK(Q.radial(v).rho == doctest::Approx(1.7 * r.rho).epsilon(1e-14));
    }
    const Vec u = polar_dir2(3.8);
    CHECK(Q.support(u) == doctest::Approx(1.7 * P.support(u)).epsilon(1e-10));
}

TEST_CASE("adding a facet never increases radial values") {
    std::mt19937 rng(37);
    const CPolytope P = testutil::random_polytope2(rng, 4);
    std::vector<Facet> more = P.facets();
    more.push_back({polar_dir2(3.9), -1.8});
    const CPolytope Q(P.cone(), more);
    std::uniform_real_distribution<double> th(0.02, std::numbers::pi / 2 - 0.02);
    for (int k = 0; k < 200; ++k) {
        const double t = th(rng);
        const Vec v = make_vec({std::cos(t), std::sin(t)});
        CHECK(Q.radial(v).rho <= P.radial(v).rho + 1e-12);
    }
}

TEST_CASE("p-co-sums") {
    const CPolytope P = p1();
    const CPolytope S1 = p_co_sum(P, P, 1.0);
    CHECK(S1.facets()[0].h == doctest::Approx(-2.0).epsilon(1e-14));
    const CPolytope Shalf = p_co_sum(P, P, 0.5);
    CHECK(Shalf.facets()[0].h == doctest::Approx(-4.0).epsilon(1e-14));
    const CPolytope Slog = p_co_sum(P, P.scaled(4.0), 0.0, 0.5);
    CHECK(Slog.facets()[0].h == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK_THROWS_AS(p_co_sum(P, P, 1.5), InvalidP);
    const CPolytope other(P.cone(), {{polar_dir2(3.7), -1.0}});
    CHECK_THROWS_AS(p_co_sum(P, other, 1.0), MismatchedNormals);
}

TEST_CASE("facet geometry of planar sets") {
    const CPolytope P = p1();
    const auto& geo = P.facet_geometry();
    REQUIRE(geo.size() == 1);
    CHECK(geo[0].measure == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(geo[0].vertices.size() == 2);
    double seen_x0 = false, seen_y0 = false;
    for (const Vec& v : geo[0].vertices) {
        if ((v - make_vec({kSqrt2, 0.0})).norm() < 1e-10) seen_x0 = true;
        if ((v - make_vec({0.0, kSqrt2})).norm() < 1e-10) seen_y0 = true;
    }
    CHECK(seen_x0);
    CHECK(seen_y0);

    const Vec u2 = make_vec({-0.8, -0.6});
    const CPolytope Q(P.cone(), {{P.facets()[0].u, -1.0}, {u2, -0.1}});
    CHECK_FALSE(Q.facet_active(1));

    const CPolytope R(P.cone(), {{P.facets()[0].u, -1.0}, {u2, -1.0}});
    const auto& rg = R.facet_geometry();
    CHECK(rg[0].active());
    CHECK(rg[1].active());
    // the two segments share the vertex on the switch ray
    double min_gap = 1e9;
    for (const Vec& a : rg[0].vertices)
        for (const Vec& b : rg[1].vertices)
            min_gap = std::min(min_gap, (a - b).norm());
    CHECK(min_gap < 1e-10);
}

TEST_CASE("distance to the origin") {
    const CPolytope P = p1();
    CHECK(b_distance(P) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(b_distance(P.scaled(2.0)) == doctest::Approx(2.0).epsilon(1e-10));
    // corner set {x >= 1, y >= 1} via the raw constraint interface
    std::vector<Halfspace> cons;
    cons.push_back({make_vec({-1.0, 0.0}), -1.0});
    cons.push_back({make_vec({0.0, -1.0}), -1.0});
    const auto closest = closest_point(cons, Vec::Zero(2));
    REQUIRE(closest.has_value());
    CHECK(closest->norm() == doctest::Approx(kSqrt2).epsilon(1e-10));
}

TEST_CASE("truncated hausdorff distance") {
    const CPolytope P = p1();
    CHECK(hausdorff_truncated(P, P, 6.0) == doctest::Approx(0.0).epsilon(1e-12));
    const CPolytope Q = P.scaled(1.1);
    const double d = hausdorff_truncated(P, Q, 6.0);
    CHECK(d > 0.0);
    CHECK(d <= 0.1 * 10.0);
    CHECK(hausdorff_truncated(Q, P, 6.0) == doctest::Approx(d).epsilon(1e-12));
    CHECK_THROWS_AS(hausdorff_truncated(P, Q, 1e-6), EmptyTruncation);
}

TEST_CASE("spatial facet geometry: tetrahedral complement") {
    const Cone cone = testutil::octant3();
    const Vec u = -normalized(make_vec({1.0, 1.0, 1.0}));
    const CPolytope P(cone, {{u, -1.0}});
    const auto& geo = P.facet_geometry();
    REQUIRE(geo.size() == 1);
    // facet is an equilateral triangle with vertices at distance sqrt3 on
    // the axes: side sqrt6, area (sqrt3/4) * 6
    CHECK(geo[0].measure ==
          doctest::Approx(std::sqrt(3.0) / 4.0 * 6.0).epsilon(1e-10));
    CHECK(geo[0].vertices.size() == 3);
}
