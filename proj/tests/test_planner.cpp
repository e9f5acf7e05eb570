#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lvann/planner.hpp"

using namespace lvann;

TEST_CASE("tail_bound") {
    SUBCASE("alpha = c clamps to 1") {
        CHECK(tail_bound(1, 2.0, 2.0) == 1.0);
        CHECK(tail_bound(64, 1.5, 1.5) == 1.0);
    }

    SUBCASE("direct scalar evaluation, k = 20") {
        // exp(10 * (0.75 + ln 0.25))
        CHECK(tail_bound(20, 1.0, 2.0) == doctest::Approx(1.7242836136e-3).epsilon(1e-9));
    }

    SUBCASE("exponent is linear in k") {
        const double t20 = tail_bound(20, 1.0, 2.0);
        const double t40 = tail_bound(40, 1.0, 2.0);
        CHECK(t40 == doctest::Approx(t20 * t20).epsilon(1e-12));
        CHECK(t40 == doctest::Approx(2.97315398e-6).epsilon(1e-7));
    }

    SUBCASE("strictly below 1 whenever alpha < c") {
        for (double alpha : {0.5, 1.0, 1.3, 1.9, 1.999}) {
            const double t = tail_bound(8, alpha, 2.0);
            CHECK(t > 0.0);
            CHECK(t < 1.0);
        }
    }

    SUBCASE("invalid inputs") {
        CHECK_THROWS_AS(tail_bound(0, 1.0, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(tail_bound(8, 0.0, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(tail_bound(8, 1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(tail_bound(8, -1.0, 2.0), std::invalid_argument);
    }
}

TEST_CASE("gamma_bound") {
    CHECK(gamma_bound(1.5, 2.0, 0.0) == doctest::Approx(14.507).epsilon(1e-3));
    CHECK(gamma_bound(1.2, 3.0, 0.0) == doctest::Approx(2.0149).epsilon(1e-3));

    SUBCASE("the (1 - nu) factor scales the bound to zero") {
        const double base = gamma_bound(1.2, 3.0, 0.0);
        CHECK(gamma_bound(1.2, 3.0, 0.5) == doctest::Approx(0.5 * base));
        CHECK(gamma_bound(1.2, 3.0, 0.999) == doctest::Approx(0.001 * base).epsilon(1e-6));
    }

    SUBCASE("grows as alpha approaches c") {
        // The denominator (alpha/c)^2 - 1 - 2 ln(alpha/c) shrinks toward 0
        // as alpha -> c, so the bound blows up; more retained accuracy costs
        // more reduced dimensions.
        double prev = 0.0;
        for (double alpha : {1.0, 1.2, 1.4, 1.6, 1.8, 1.95}) {
            const double g = gamma_bound(alpha, 2.0, 0.0);
            CHECK(g > prev);
            prev = g;
        }
    }

    SUBCASE("invalid inputs") {
        CHECK_THROWS_AS(gamma_bound(2.0, 2.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(gamma_bound(2.5, 2.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(gamma_bound(0.9, 2.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(gamma_bound(1.2, 2.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(gamma_bound(1.2, 2.0, -0.1), std::invalid_argument);
    }
}

TEST_CASE("choose_alpha") {
    CHECK(choose_alpha(1.5) == 1.25);
    CHECK(choose_alpha(3.0) == 1.2);
    CHECK(choose_alpha(2.0) == 1.2);  // the c >= 2 branch owns the boundary
    CHECK(choose_alpha(1.2) == doctest::Approx(1.1));
    CHECK_THROWS_AS(choose_alpha(1.0), std::invalid_argument);
    CHECK_THROWS_AS(choose_alpha(0.5), std::invalid_argument);
}

TEST_CASE("make_plan evaluates the formulas") {
    SUBCASE("n=2000, d=64, c=3") {
        const ReductionPlan plan = make_plan(2000, 64, 3.0, 0.0, 42);
        CHECK(plan.alpha == 1.2);
        CHECK(plan.gamma == doctest::Approx(2.0149).epsilon(1e-3));
        CHECK(plan.k == 16);
        CHECK(plan.num_blocks == 4);
        CHECK(plan.padded_dim == 64);
        CHECK(plan.grid_side == doctest::Approx(0.05));
        CHECK(plan.reduced);
        CHECK(plan.radius == 1.0);
        CHECK(plan.epsilon == 2.0);
    }

    SUBCASE("gamma ln n >= d falls back to no reduction") {
        const ReductionPlan plan = make_plan(1000000, 128, 1.5, 0.0, 1);
        CHECK(plan.alpha == 1.25);
        CHECK(plan.gamma == doctest::Approx(33.848).epsilon(1e-3));
        CHECK_FALSE(plan.reduced);
        CHECK(plan.k == 128);
        CHECK(plan.num_blocks == 1);
        CHECK(plan.padded_dim == 128);
    }

    SUBCASE("overrides are honored") {
        PlanOverrides overrides;
        overrides.k = 4;
        overrides.grid_side = 0.5;
        const ReductionPlan plan = make_plan(2000, 30, 3.0, 0.0, 42, overrides);
        CHECK(plan.k == 4);
        CHECK(plan.grid_side == 0.5);
        CHECK(plan.num_blocks == 8);
        CHECK(plan.padded_dim == 32);  // padded up to a multiple of k
        CHECK(plan.reduced);
    }

    SUBCASE("tiny instance: 3 points in d=2 with k=2 runs a single block") {
        PlanOverrides overrides;
        overrides.k = 2;
        const ReductionPlan plan = make_plan(3, 2, 2.0, 0.0, 0, overrides);
        CHECK(plan.num_blocks == 1);
        CHECK(plan.padded_dim == 2);
        CHECK_FALSE(plan.reduced);
    }

    SUBCASE("k override above d is rejected") {
        PlanOverrides overrides;
        overrides.k = 65;
        CHECK_THROWS_AS(make_plan(2000, 64, 3.0, 0.0, 42, overrides),
                        std::invalid_argument);
    }

    SUBCASE("alpha override of exactly 1 needs a grid side") {
        PlanOverrides overrides;
        overrides.alpha = 1.0;
        CHECK_THROWS_AS(make_plan(2000, 64, 3.0, 0.0, 42, overrides),
                        std::invalid_argument);
        overrides.grid_side = 0.25;
        const ReductionPlan plan = make_plan(2000, 64, 3.0, 0.0, 42, overrides);
        CHECK(plan.alpha == 1.0);
        CHECK(plan.grid_side == 0.25);
    }

    SUBCASE("plans are a pure function of the arguments") {
        const ReductionPlan a = make_plan(5000, 96, 2.5, 0.25, 7);
        const ReductionPlan b = make_plan(5000, 96, 2.5, 0.25, 7);
        CHECK(a == b);
    }

    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(make_plan(0, 64, 2.0, 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_plan(10, 0, 2.0, 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_plan(10, 64, 1.0, 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_plan(10, 64, 2.0, 1.0, 1), std::invalid_argument);
    }
}

TEST_CASE("false-positive diagnostic is reported, not asserted") {
    const ReductionPlan plan = make_plan(2000, 64, 3.0, 0.0, 42);
    const double fp = expected_false_positives_per_block(plan, 2000);
    CHECK(fp == doctest::Approx(2000.0 * tail_bound(plan.k, plan.alpha, plan.c)));
    CHECK(fp > 0.0);
}
