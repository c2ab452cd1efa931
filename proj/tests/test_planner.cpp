#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mmblock/analytic_los.hpp"
#include "mmblock/planner.hpp"

using namespace mmblock;

namespace {
SystemParams base(double lambda_B) {
    SystemParams p;
    p.blocker_density_lambda_B = lambda_B;
    return p;
}
}  // namespace

TEST_CASE("target validation") {
    QosTarget t;
    t.reliability = 1.0;
    CHECK_THROWS_AS(plan_density(base(0.1), t, PlanModel::kOpenPark),
                    std::invalid_argument);
    t.reliability = 0.0;
    CHECK_THROWS_AS(plan_density(base(0.1), t, PlanModel::kOpenPark),
                    std::invalid_argument);
    t.reliability = 0.99;
    t.max_latency_s = 0.0;
    CHECK_THROWS_AS(plan_density(base(0.1), t, PlanModel::kOpenPark),
                    std::invalid_argument);
}

TEST_CASE("vehicular target at heavy blocker density") {
    QosTarget t;
    t.application = "vehicular";
    t.reliability = 0.99;
    t.max_latency_s = 0.010;
    t.caching_allowed = true;  // reliability constraint only
    const PlanResult r = plan_density(base(0.1), t, PlanModel::kOpenPark);
    CHECK(r.feasible);
    CHECK(r.required_density * 1e6 == doctest::Approx(193.595).epsilon(1e-4));
    CHECK(r.binding == BindingConstraint::kReliability);
    CHECK(r.achieved_block_prob <= 0.01 * (1.0 + 1e-9));
}

TEST_CASE("tight latency flips the binding constraint") {
    QosTarget t;
    t.reliability = 0.9;  // loose
    t.max_latency_s = 0.030;
    t.caching_allowed = false;
    const PlanResult r = plan_density(base(0.01), t, PlanModel::kOpenPark);
    CHECK(r.feasible);
    CHECK(r.binding == BindingConstraint::kDuration);
    CHECK(r.achieved_duration_s <= 0.030 * (1.0 + 1e-9));
    // relaxing latency with caching lowers the requirement
    t.caching_allowed = true;
    const PlanResult r2 = plan_density(base(0.01), t, PlanModel::kOpenPark);
    CHECK(r2.required_density < r.required_density);
}

TEST_CASE("unreachable latency is reported infeasible") {
    QosTarget t;
    t.reliability = 0.9;
    t.max_latency_s = 1e-5;
    t.caching_allowed = false;
    const PlanResult r = plan_density(base(0.01), t, PlanModel::kOpenPark);
    CHECK_FALSE(r.feasible);
    CHECK(r.achieved_duration_s > t.max_latency_s);
}

TEST_CASE("static blockage raises the requirement, NLOS paths lower it") {
    QosTarget t;
    t.reliability = 0.99;
    t.caching_allowed = true;
    SystemParams p = base(0.1);
    p.static_density_lambda_S = 1e-4;
    const double open =
        plan_density(p, t, PlanModel::kOpenPark).required_density;
    const double urban =
        plan_density(p, t, PlanModel::kUrbanLos).required_density;
    const double nlos =
        plan_density(p, t, PlanModel::kUrbanNlos).required_density;
    CHECK(urban > open);
    CHECK(nlos < urban);
}

TEST_CASE("stricter reliability needs more BSs") {
    QosTarget t;
    t.caching_allowed = true;
    double prev = 0.0;
    for (double rel : {0.9, 0.99, 0.999, 0.9999}) {
        t.reliability = rel;
        const double d =
            plan_density(base(0.1), t, PlanModel::kOpenPark).required_density;
        CHECK(d > prev);
        prev = d;
    }
}

TEST_CASE("height-density tradeoff") {
    const std::vector<double> heights = {4.0, 5.0, 6.0, 8.0};
    SUBCASE("moderate blockers") {
        const auto curve = height_density_tradeoff(base(0.01), 1e-5, heights);
        REQUIRE(curve.size() == 4);
        for (size_t i = 1; i < curve.size(); ++i)
            CHECK(curve[i].required_density < curve[i - 1].required_density);
        const double red = 1.0 - curve[3].required_density /
                                     curve[0].required_density;
        CHECK(red == doctest::Approx(0.1071).epsilon(5e-3));
    }
    SUBCASE("heavy blockers") {
        const auto curve = height_density_tradeoff(base(0.1), 1e-5, heights);
        const double red = 1.0 - curve[3].required_density /
                                     curve[0].required_density;
        CHECK(red == doctest::Approx(0.1622).epsilon(5e-3));
    }
    SUBCASE("height below blockers rejected") {
        CHECK_THROWS_AS(height_density_tradeoff(base(0.1), 1e-5, {1.5}),
                        std::invalid_argument);
    }
}

TEST_CASE("handover-style single link rate at the mean distance") {
    CHECK(handover_rate(base(0.01)) == doctest::Approx(0.047157).epsilon(1e-4));
    CHECK(handover_rate(base(0.1)) == doctest::Approx(0.471570).epsilon(1e-4));
}
