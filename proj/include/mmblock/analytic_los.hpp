#pragma once

#include <optional>

#include "mmblock/params.hpp"

namespace mmblock {

/// Closed-form LOS-path blockage statistics. Conditional fields are
/// empty when coverage is zero (lambda_T = 0).
struct LosReport {
    double coverage_prob = 0.0;
    double block_prob_uncond = 1.0;
    std::optional<double> block_prob_cond;
    std::optional<double> exp_duration_s;
    std::optional<double> exp_frequency_hz;
    double a_integral = 1.0;
    double a_prime = 1.0;
};

/// P(C^LOS) = 1 - exp(-p q lambda_T pi R^2).
double coverage_los(const DerivedConstants& consts);

/// a = int_0^R e^{-(beta r + beta0)} / (1 + C r / mu) (2r/R^2) dr,
/// by adaptive quadrature.
double a_integral(const DerivedConstants& consts);

/// Open-park closed form of the same integral (beta = beta0 = 0).
double a_prime(const DerivedConstants& consts);

/// Small-RC/mu series approximation 1 - 2RC/(3 mu).
double a_prime_approx(const DerivedConstants& consts);

struct LosBlockProb {
    double uncond;
    std::optional<double> cond;  ///< empty at zero coverage
};

/// Marginal and coverage-conditioned LOS blockage probability.
LosBlockProb blockage_prob_los(const DerivedConstants& consts);

/// Truncated series sum_{n>=1} x^n / (n n!); equals Ei(x) - ln(x) - gamma
/// for x > 0.
double ei_series(double x);

/// Expected simultaneous-blockage duration given coverage [s].
std::optional<double> expected_duration_los(const DerivedConstants& consts);

/// High-density approximation 1 / (mu x (1 - e^{-x})), x = p q lambda_T pi R^2.
std::optional<double> expected_duration_los_approx(const DerivedConstants& consts);

/// Expected blockage frequency given coverage, open-park constants [1/s].
std::optional<double> expected_frequency(const DerivedConstants& consts);

/// Full report at one parameter point.
LosReport los_report(const DerivedConstants& consts);

struct MinDensityResult {
    double lambda_T;    ///< required BS density [1/m^2]
    bool feasible;      ///< false when target below the achievable infimum
    double infimum;     ///< best achievable conditional blockage probability
};

/// Smallest lambda_T with blockage probability <= target. Closed-form
/// mode applies the open-park linear-scaling bound; exact mode bisects
/// the conditional probability of blockage_prob_los.
MinDensityResult min_bs_density(const DerivedConstants& consts,
                                double target_block_prob,
                                bool closed_form = false);

}  // namespace mmblock
