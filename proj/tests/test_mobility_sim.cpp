#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "mmblock/analytic_los.hpp"
#include "mmblock/analytic_nlos.hpp"
#include "mmblock/mobility_sim.hpp"

using namespace mmblock;

namespace {

constexpr double kPi = std::numbers::pi;

SystemParams open_park(double lambda_B, double lambda_T = 3e-4) {
    SystemParams p;
    p.blocker_density_lambda_B = lambda_B;
    p.bs_density_lambda_T = lambda_T;
    return p;
}

SimConfig small_cfg() {
    SimConfig cfg;
    cfg.num_runs = 8;
    cfg.run_duration = 200.0;
    cfg.warmup = 60.0;
    cfg.rng_seed = 42;
    return cfg;
}

SimConfig single_link_cfg(double r, int runs, double duration) {
    SimConfig cfg;
    cfg.num_runs = runs;
    cfg.run_duration = duration;
    cfg.warmup = 60.0;
    cfg.rng_seed = 1234;
    cfg.fixed_single_link_r = r;
    return cfg;
}

}  // namespace

TEST_CASE("input validation") {
    SystemParams p = open_park(0.01);
    SimConfig cfg = small_cfg();
    p.static_density_lambda_S = 1e-4;
    CHECK_THROWS_AS(run_open_park_sim(p, cfg), std::invalid_argument);
    p.static_density_lambda_S = 0.0;
    cfg.arena_side = 150.0;  // < 2R
    CHECK_THROWS_AS(run_open_park_sim(p, cfg), std::invalid_argument);
    cfg = small_cfg();
    cfg.run_duration = 30.0;  // <= warmup
    CHECK_THROWS_AS(run_open_park_sim(p, cfg), std::invalid_argument);
    cfg = small_cfg();
    cfg.num_runs = 0;
    CHECK_THROWS_AS(run_open_park_sim(p, cfg), std::invalid_argument);
}

TEST_CASE("same seed reproduces every run exactly") {
    const SystemParams p = open_park(0.02);
    const SimConfig cfg = small_cfg();
    const SimResult a = run_open_park_sim(p, cfg);
    const SimResult b = run_open_park_sim(p, cfg);
    REQUIRE(a.runs.size() == b.runs.size());
    for (size_t i = 0; i < a.runs.size(); ++i) {
        CHECK(a.runs[i].seed == b.runs[i].seed);
        CHECK(a.runs[i].num_bs_in_coverage == b.runs[i].num_bs_in_coverage);
        CHECK(a.runs[i].blocked_fraction == b.runs[i].blocked_fraction);
        CHECK(a.runs[i].event_rate == b.runs[i].event_rate);
        CHECK(a.runs[i].mean_event_duration == b.runs[i].mean_event_duration);
        CHECK(a.runs[i].crossing_rate == b.runs[i].crossing_rate);
    }
    CHECK(a.block_prob.point_estimate == b.block_prob.point_estimate);
}

TEST_CASE("results do not depend on the thread count") {
    const SystemParams p = open_park(0.02);
    SimConfig cfg = small_cfg();
    cfg.threads = 1;
    const SimResult a = run_open_park_sim(p, cfg);
    cfg.threads = 4;
    const SimResult b = run_open_park_sim(p, cfg);
    for (size_t i = 0; i < a.runs.size(); ++i) {
        CHECK(a.runs[i].blocked_fraction == b.runs[i].blocked_fraction);
        CHECK(a.runs[i].num_events == b.runs[i].num_events);
    }
    CHECK(a.duration.point_estimate == b.duration.point_estimate);
}

TEST_CASE("run seeds form distinct substreams") {
    const SystemParams p = open_park(0.01);
    SimConfig cfg = small_cfg();
    cfg.num_runs = 64;
    cfg.run_duration = 61.0;
    const SimResult r = run_open_park_sim(p, cfg);
    std::set<std::uint64_t> seeds;
    for (const auto& run : r.runs) seeds.insert(run.seed);
    CHECK(seeds.size() == 64);
    cfg.rng_seed = 43;
    const SimResult r2 = run_open_park_sim(p, cfg);
    CHECK(r2.runs[0].seed != r.runs[0].seed);
}

TEST_CASE("BS count matches the thinned Poisson mean") {
    const SystemParams p = open_park(0.001, 3e-4);
    SimConfig cfg = small_cfg();
    cfg.num_runs = 400;
    cfg.warmup = 0.0;
    cfg.run_duration = 1.0;
    const SimResult r = run_open_park_sim(p, cfg);
    double mean = 0.0;
    for (const auto& run : r.runs) mean += run.num_bs_in_coverage;
    mean /= r.runs.size();
    const double expect = (5.0 / 6.0) * 3e-4 * kPi * 1e4;  // p lambda_T pi R^2
    // 3-sigma band, sigma ~ sqrt(mean / runs)
    CHECK(std::abs(mean - expect) < 3.0 * std::sqrt(expect / 400.0));
}

TEST_CASE("single link: crossing rate matches alpha = C r") {
    const SystemParams p = open_park(0.1);
    const DerivedConstants c = derive(p);
    const SimResult r =
        run_open_park_sim(p, single_link_cfg(100.0, 12, 1000.0));
    double rate = 0.0;
    for (const auto& run : r.runs) rate += run.crossing_rate;
    rate /= r.runs.size();
    CHECK(rate == doctest::Approx(alpha_i(c, 100.0)).epsilon(0.02));
}

TEST_CASE("single link: crossing rate is isotropic") {
    const SystemParams p = open_park(0.1);
    SimConfig cfg = single_link_cfg(100.0, 12, 1000.0);
    const SimResult a = run_open_park_sim(p, cfg);
    cfg.fixed_single_link_theta = kPi / 3.7;  // not axis aligned
    const SimResult b = run_open_park_sim(p, cfg);
    double ra = 0.0, rb = 0.0;
    for (const auto& run : a.runs) ra += run.crossing_rate;
    for (const auto& run : b.runs) rb += run.crossing_rate;
    CHECK(ra / a.runs.size() ==
          doctest::Approx(rb / b.runs.size()).epsilon(0.04));
}

TEST_CASE("single link: stationary blocked fraction is alpha/(alpha+mu)") {
    const SystemParams p = open_park(0.1);
    const DerivedConstants c = derive(p);
    const double alpha = alpha_i(c, 100.0);
    const SimResult r =
        run_open_park_sim(p, single_link_cfg(100.0, 12, 1500.0));
    const double expect = alpha / (alpha + c.mu);
    CHECK(r.block_prob.point_estimate ==
          doctest::Approx(expect).epsilon(0.03));
    // merged busy periods of the Poisson/exponential process
    const double busy = (std::exp(alpha / c.mu) - 1.0) / alpha;
    CHECK(r.duration.point_estimate == doctest::Approx(busy).epsilon(0.03));
}

TEST_CASE("exponential-mark estimate agrees with the closed form") {
    const SystemParams p = open_park(0.1, 1e-4);
    const DerivedConstants c = derive(p);
    const double analytic = *blockage_prob_los(c).cond;
    SimConfig cfg;
    cfg.num_runs = 400;
    cfg.run_duration = 360.0;
    cfg.warmup = 60.0;
    cfg.rng_seed = 7;
    cfg.threads = 4;
    const SimResult r = run_open_park_sim(p, cfg);
    REQUIRE(r.block_prob.num_runs > 300);
    CHECK(std::abs(r.block_prob.point_estimate - analytic) <
          4.0 * r.block_prob.std_error + 0.02 * analytic);
}

TEST_CASE("geometric-disc mode is deterministic and sane") {
    const SystemParams p = open_park(0.05);
    SimConfig cfg = single_link_cfg(80.0, 3, 200.0);
    cfg.blockage_mode = BlockageMode::kGeometricDisc;
    cfg.time_step = 0.02;
    const SimResult a = run_open_park_sim(p, cfg);
    const SimResult b = run_open_park_sim(p, cfg);
    for (size_t i = 0; i < a.runs.size(); ++i) {
        CHECK(a.runs[i].blocked_fraction == b.runs[i].blocked_fraction);
        CHECK(a.runs[i].blocked_fraction >= 0.0);
        CHECK(a.runs[i].blocked_fraction <= 1.0);
    }
    CHECK(a.block_prob.point_estimate > 0.0);
}

TEST_CASE("trace alternates per link and nests the combined events") {
    const SystemParams p = open_park(0.1);
    SimConfig cfg = single_link_cfg(100.0, 1, 300.0);
    const SimResult r = run_open_park_sim(p, cfg, true);
    REQUIRE(!r.trace.empty());
    double prev_t = -1.0;
    for (const auto& ev : r.trace) {
        CHECK(ev.time >= prev_t);
        prev_t = ev.time;
    }
    // one link: the combined process mirrors the link process
    long link_on = 0, comb_on = 0;
    for (const auto& ev : r.trace) {
        if (ev.link_id == 0 && ev.blocked) ++link_on;
        if (ev.link_id == -1 && ev.blocked) ++comb_on;
    }
    CHECK(link_on == comb_on);
    CHECK(link_on > 0);
}

TEST_CASE("sampling oracle reproduces the unconditional probability") {
    SUBCASE("LOS") {
        const SystemParams p = open_park(0.01, 3e-4);
        const DerivedConstants c = derive(p);
        const double analytic = blockage_prob_los(c).uncond;
        const SimEstimate e = run_sampling_oracle(p, 2000000, OracleModel::kLos, 9);
        CHECK(std::abs(e.point_estimate - analytic) < 4.0 * e.std_error);
    }
    SUBCASE("with NLOS paths") {
        SystemParams p = open_park(0.1, 2e-4);
        p.static_density_lambda_S = 1e-4;
        p.nlos_attenuation_gamma_dB =
            10.0 * p.path_loss_exponent_PLE * std::log10(100.0 / 65.0);
        const DerivedConstants c = derive(p);
        const double analytic = blockage_prob_nlos(c).uncond;
        const SimEstimate e =
            run_sampling_oracle(p, 1000000, OracleModel::kNlos, 11);
        CHECK(std::abs(e.point_estimate - analytic) < 4.0 * e.std_error);
    }
}

TEST_CASE("blocked fraction rises with blocker density") {
    SimConfig cfg = single_link_cfg(100.0, 6, 600.0);
    double prev = 0.0;
    for (double lamB : {0.02, 0.1, 0.3}) {
        const SimResult r = run_open_park_sim(open_park(lamB), cfg);
        CHECK(r.block_prob.point_estimate > prev);
        prev = r.block_prob.point_estimate;
    }
}
