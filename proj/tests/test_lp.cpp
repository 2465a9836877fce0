#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coneminq/lp.hpp"

using namespace coneminq;

TEST_CASE("simple bounded maximum") {
    // max x + y s.t. x <= 2, y <= 3, x + y <= 4
    Mat A(3, 2);
    A << 1, 0, 0, 1, 1, 1;
    Vec b = make_vec({2.0, 3.0, 4.0});
    Vec c = make_vec({1.0, 1.0});
    const LpResult r = solve_lp_max(c, A, b);
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("negative right-hand side needs phase one") {
    // max -x s.t. -x <= -1  (x >= 1): optimum at x = 1
    Mat A(1, 1);
    A << -1;
    const LpResult r = solve_lp_max(make_vec({-1.0}), A, make_vec({-1.0}));
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("infeasible system detected") {
    // x <= 1 and -x <= -2  (x >= 2) cannot both hold
    Mat A(2, 1);
    A << 1, -1;
    const LpResult r = solve_lp_max(make_vec({1.0}), A, make_vec({1.0, -2.0}));
    CHECK(r.status == LpResult::Status::Infeasible);
}

TEST_CASE("unbounded objective detected") {
    // max x with only y constrained
    Mat A(1, 2);
    A << 0, 1;
    const LpResult r = solve_lp_max(make_vec({1.0, 0.0}), A, make_vec({1.0}));
    CHECK(r.status == LpResult::Status::Unbounded);
}

TEST_CASE("degenerate vertices do not cycle") {
    // redundant constraints meeting at the optimum
    Mat A(4, 2);
    A << 1, 0, 0, 1, 1, 1, 2, 2;
    Vec b = make_vec({1.0, 1.0, 2.0, 4.0});
    const LpResult r = solve_lp_max(make_vec({1.0, 1.0}), A, b);
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-12));
}
