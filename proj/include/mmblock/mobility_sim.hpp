#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmblock/params.hpp"

namespace mmblock {

enum class BlockageMode { kExponentialMark, kGeometricDisc };

struct SimConfig {
    double arena_side = 200.0;      ///< square side [m]; must be >= 2R
    int num_runs = 10000;
    double run_duration = 10800.0;  ///< per-run simulated time [s]
    double warmup = 60.0;           ///< discarded before statistics [s]
    double move_time_min = 0.0;     ///< random-waypoint leg time bounds [s]
    double move_time_max = 60.0;
    std::uint64_t rng_seed = 1;
    BlockageMode blockage_mode = BlockageMode::kExponentialMark;
    double blocker_diameter_wB = 0.5; ///< geometric-disc mode only [m]
    double time_step = 0.01;          ///< geometric-disc mode only [s]
    int threads = 1;
    /// When set, a single fixed BS at this distance replaces the Poisson
    /// deployment and self-blockage is disabled (single-link validation).
    std::optional<double> fixed_single_link_r;
    double fixed_single_link_theta = 0.0;
};

/// Monte-Carlo point estimate with across-run spread.
struct SimEstimate {
    std::string statistic;
    double point_estimate = 0.0;
    double std_dev = 0.0;      ///< across contributing runs
    double std_error = 0.0;    ///< std_dev / sqrt(contributing runs)
    long num_runs = 0;         ///< runs contributing to the estimate
    std::uint64_t seed = 0;
};

struct PerRunStats {
    long run_id = 0;
    std::uint64_t seed = 0;
    int num_bs_in_coverage = 0;
    double blocked_fraction = 0.0;  ///< time-averaged all-links-blocked
    double event_rate = 0.0;        ///< all-blocked entries per second
    double mean_event_duration = 0.0; ///< 0 when no events observed
    long num_events = 0;
    double crossing_rate = 0.0;     ///< link crossings per second (all links)
};

struct TraceEvent {
    double time;
    int link_id;  ///< -1 for the combined all-blocked process
    bool blocked;
};

struct SimResult {
    std::vector<PerRunStats> runs;   ///< in run-id order
    SimEstimate block_prob;          ///< over runs in coverage
    SimEstimate frequency;
    SimEstimate duration;            ///< over runs with >= 1 event
    std::vector<TraceEvent> trace;   ///< filled only when trace requested
};

/// Random-waypoint open-park mobility simulation (lambda_S = 0).
/// Deterministic for a fixed (params, config) regardless of thread count.
SimResult run_open_park_sim(const SystemParams& params, const SimConfig& config,
                            bool trace = false);

enum class OracleModel { kLos, kNlos };

/// Independence-sampling cross-check of the closed-form unconditional
/// blockage probability: empirical all-blocked fraction over `samples`
/// draws of (M, {r_i}, per-link states), with binomial standard error.
SimEstimate run_sampling_oracle(const SystemParams& params, long samples,
                                OracleModel model, std::uint64_t seed);

}  // namespace mmblock
