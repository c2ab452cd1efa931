#pragma once

#include <string>
#include <vector>

#include "mmblock/params.hpp"

namespace mmblock {

enum class PlanModel { kOpenPark, kUrbanLos, kUrbanNlos };

struct QosTarget {
    std::string application;
    double reliability = 0.99;     ///< in (0,1)
    double max_latency_s = 0.020;
    bool caching_allowed = false;
};

enum class BindingConstraint { kReliability, kDuration };

struct PlanResult {
    double required_density = 0.0;  ///< [1/m^2]
    bool feasible = true;
    BindingConstraint binding = BindingConstraint::kReliability;
    double achieved_block_prob = 0.0;
    double achieved_duration_s = 0.0;
};

/// Smallest BS density whose conditional blockage probability meets
/// 1 - reliability and, unless caching is allowed, whose expected
/// blockage duration meets the latency budget.
PlanResult plan_density(const SystemParams& params, const QosTarget& target,
                        PlanModel model);

struct HeightDensityPoint {
    double height_bs_m;
    double required_density;  ///< [1/m^2]
};

/// Required density at a fixed blockage-probability target, for each BS
/// height (open-park model, reliability constraint only).
std::vector<HeightDensityPoint> height_density_tradeoff(
    const SystemParams& params, double target_block_prob,
    const std::vector<double>& height_grid);

/// Single-link blockage rate at the mean BS distance 2R/3 [1/s].
double handover_rate(const SystemParams& params);

}  // namespace mmblock
