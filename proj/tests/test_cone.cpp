#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "helpers.hpp"

using namespace coneminq;
using testutil::octant3;
using testutil::orthant2;

namespace {

bool same_generator_set(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.size() != b.size()) return false;
    for (const Vec& x : a) {
        bool found = false;
        for (const Vec& y : b)
            if (angle_between(x, y) < 1e-10) found = true;
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("planar orthant and its polar") {
    const Cone c = orthant2();
    CHECK(same_generator_set(c.polar_generators(),
                             {make_vec({-1.0, 0.0}), make_vec({0.0, -1.0})}));
}

TEST_CASE("a line is not pointed") {
    CHECK_THROWS_AS(
        Cone::polyhedral(2, {make_vec({1.0, 0.0}), make_vec({-1.0, 0.0})}),
        NotPointed);
}

TEST_CASE("rank-deficient generators are degenerate") {
    CHECK_THROWS_AS(Cone::polyhedral(3, {make_vec({1.0, 0.0, 0.0}),
                                         make_vec({0.0, 1.0, 0.0}),
                                         make_vec({1.0, 1.0, 0.0})}),
                    DegenerateCone);
}

TEST_CASE("circular polar has the complementary half-angle") {
    const Cone c = Cone::circular(make_vec({0.0, 0.0, 1.0}), std::numbers::pi / 6);
    const Cone p = c.polar();
    CHECK(p.half_angle() == doctest::Approx(std::numbers::pi / 3).epsilon(1e-14));
    CHECK(angle_between(p.axis(), make_vec({0.0, 0.0, -1.0})) < 1e-12);
}

TEST_CASE("bipolarity on a corpus of cones") {
    std::vector<Cone> cones;
    cones.push_back(orthant2());
    cones.push_back(octant3());
    cones.push_back(Cone::polyhedral(
        2, {make_vec({1.0, 0.0}), normalized(make_vec({1.0, 3.0}))}));
    cones.push_back(Cone::polyhedral(3, {make_vec({1.0, 0.0, 0.0}),
                                         make_vec({0.0, 1.0, 0.0}),
                                         make_vec({0.0, 0.0, 1.0}),
                                         normalized(make_vec({1.0, 1.0, 1.5}))}));
    for (const Cone& c : cones) {
        const Cone cc = c.polar().polar();
        CHECK(same_generator_set(cc.extreme_rays(), c.extreme_rays()));
    }
}

TEST_CASE("omega membership is strict") {
    const Cone c = orthant2();
    CHECK(c.omega_contains(normalized(make_vec({1.0, 1.0}))));
    CHECK_FALSE(c.omega_contains(make_vec({1.0, 0.0})));
    CHECK_FALSE(c.omega_contains(normalized(make_vec({-1.0, -1.0}))));
}

TEST_CASE("polar domains pair strictly negatively") {
    const Cone c = octant3();
    const Cone p = c.polar();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    int pairs = 0;
    while (pairs < 1000) {
        const Vec v = normalized(make_vec({unif(rng), unif(rng), unif(rng)}));
        const Vec u = -normalized(make_vec({unif(rng), unif(rng), unif(rng)}));
        if (!c.omega_contains(v) || !p.omega_contains(u)) continue;
        CHECK(u.dot(v) < 0.0);
        ++pairs;
    }
}

TEST_CASE("boundary angle on the polar arc") {
    const Cone p = orthant2().polar();
    CHECK(p.boundary_angle(normalized(make_vec({-1.0, -1.0}))) ==
          doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
    CHECK(p.boundary_angle(make_vec({-0.6, -0.8})) ==
          doctest::Approx(std::atan(0.6 / 0.8)).epsilon(1e-12));
    CHECK_THROWS_AS(p.boundary_angle(make_vec({1.0, 0.0})), OutsideDomain);
}

TEST_CASE("boundary angle against dense boundary sampling, dim 3") {
    const Cone c = octant3();
    const Vec u = normalized(make_vec({0.3, 0.5, 0.9}));
    double best = std::numbers::pi;
    // the boundary consists of coordinate-plane arcs
    for (int axis = 0; axis < 3; ++axis) {
        for (int k = 0; k <= 20000; ++k) {
            const double t = 0.5 * std::numbers::pi * k / 20000;
            Vec b = Vec::Zero(3);
            b[(axis + 1) % 3] = std::cos(t);
            b[(axis + 2) % 3] = std::sin(t);
            best = std::min(best, angle_between(u, b));
        }
    }
    CHECK(c.boundary_angle(u) == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("boundary angle is 1-Lipschitz along sampled pairs") {
    const Cone c = octant3();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    for (int k = 0; k < 300; ++k) {
        const Vec a = normalized(make_vec({unif(rng), unif(rng), unif(rng)}));
        const Vec b = normalized(make_vec({unif(rng), unif(rng), unif(rng)}));
        if (!c.omega_contains(a) || !c.omega_contains(b)) continue;
        CHECK(std::abs(c.boundary_angle(a) - c.boundary_angle(b)) <=
              angle_between(a, b) + 1e-12);
    }
}

TEST_CASE("reference direction validates against generators") {
    const Cone c = orthant2();
    CHECK(angle_between(c.reference_direction(),
                        normalized(make_vec({1.0, 1.0}))) < 1e-12);
    const Cone wide = Cone::polyhedral(
        2, {make_vec({1.0, 0.0}),
            make_vec({std::cos(80.0 * std::numbers::pi / 180.0),
                      std::sin(80.0 * std::numbers::pi / 180.0)})});
    const Vec xi = wide.reference_direction();
    for (const Vec& g : wide.generators()) CHECK(g.dot(xi) > 0.0);
    const Cone circ = Cone::circular(make_vec({0.0, 1.0, 0.0}), 0.4);
    CHECK(angle_between(circ.reference_direction(), make_vec({0.0, 1.0, 0.0})) <
          1e-12);
}

TEST_CASE("omega areas") {
    CHECK(orthant2().omega_area() ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    const double alpha = std::numbers::pi / 6;
    CHECK(Cone::circular(make_vec({0.0, 0.0, 1.0}), alpha).omega_area() ==
          doctest::Approx(2 * std::numbers::pi * (1 - std::cos(alpha)))
              .epsilon(1e-12));
    const double theta = 0.9;
    const Cone planar = Cone::polyhedral(
        2, {make_vec({1.0, 0.0}), make_vec({std::cos(theta), std::sin(theta)})});
    CHECK(planar.omega_area() == doctest::Approx(theta).epsilon(1e-12));
    // octant: one eighth of the sphere
    CHECK(octant3().omega_area() ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-10));
}
