#include "mmblock/planner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmblock/analytic_los.hpp"
#include "mmblock/analytic_nlos.hpp"

namespace mmblock {

namespace {

struct Eval {
    double cond_block;
    double duration;
};

Eval evaluate(const SystemParams& base, double lambda_T, PlanModel model) {
    SystemParams p = base;
    p.bs_density_lambda_T = lambda_T;
    if (model == PlanModel::kOpenPark) p.static_density_lambda_S = 0.0;
    const DerivedConstants c = derive(p);
    if (model == PlanModel::kUrbanNlos) {
        const NlosBlockProb bp = blockage_prob_nlos(c);
        return {bp.cond.value_or(1.0),
                expected_duration_nlos(c).value_or(
                    std::numeric_limits<double>::infinity())};
    }
    const LosBlockProb bp = blockage_prob_los(c);
    return {bp.cond.value_or(1.0),
            expected_duration_los(c).value_or(
                std::numeric_limits<double>::infinity())};
}

}  // namespace

PlanResult plan_density(const SystemParams& params, const QosTarget& target,
                        PlanModel model) {
    if (!(target.reliability > 0.0 && target.reliability < 1.0))
        throw std::invalid_argument("reliability must be in (0,1)");
    if (target.max_latency_s <= 0.0)
        throw std::invalid_argument("max latency must be > 0");
    const double max_block = 1.0 - target.reliability;
    auto ok = [&](double lamT) {
        const Eval e = evaluate(params, lamT, model);
        return e.cond_block <= max_block &&
               (target.caching_allowed || e.duration <= target.max_latency_s);
    };
    const double lo0 = 1e-8, hi0 = 1e-1;
    PlanResult out;
    if (!ok(hi0)) {
        const Eval e = evaluate(params, hi0, model);
        out.feasible = false;
        out.required_density = hi0;
        out.achieved_block_prob = e.cond_block;
        out.achieved_duration_s = e.duration;
        return out;
    }
    double lo = std::log10(lo0), hi = std::log10(hi0);
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ok(std::pow(10.0, mid)))
            hi = mid;
        else
            lo = mid;
    }
    out.required_density = std::pow(10.0, hi);
    const Eval e = evaluate(params, out.required_density, model);
    out.achieved_block_prob = e.cond_block;
    out.achieved_duration_s = e.duration;
    const double rel_ratio = e.cond_block / max_block;
    const double dur_ratio =
        target.caching_allowed ? 0.0 : e.duration / target.max_latency_s;
    out.binding = dur_ratio > rel_ratio ? BindingConstraint::kDuration
                                        : BindingConstraint::kReliability;
    return out;
}

std::vector<HeightDensityPoint> height_density_tradeoff(
    const SystemParams& params, double target_block_prob,
    const std::vector<double>& height_grid) {
    std::vector<HeightDensityPoint> curve;
    curve.reserve(height_grid.size());
    for (double hT : height_grid) {
        if (hT <= params.height_blocker_hB)
            throw std::invalid_argument("BS height must exceed blocker height");
        SystemParams p = params;
        p.height_bs_hT = hT;
        p.static_density_lambda_S = 0.0;
        const DerivedConstants c = derive(p);
        const MinDensityResult r = min_bs_density(c, target_block_prob, false);
        curve.push_back({hT, r.lambda_T});
    }
    return curve;
}

double handover_rate(const SystemParams& params) {
    const DerivedConstants c = derive(params);
    return c.C * 2.0 * params.los_range_R / 3.0;
}

}  // namespace mmblock
