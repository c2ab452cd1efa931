#pragma once

#include <optional>

#include "mmblock/params.hpp"

namespace mmblock {

/// LOS+NLOS blockage statistics (lower-bound model with virtual BSs on
/// the ring of radius r_i, available only within R_tilde).
struct NlosReport {
    double coverage_prob = 0.0;
    double block_prob_uncond = 1.0;
    std::optional<double> block_prob_cond;
    std::optional<double> exp_duration_s;
    double a_tilde = 1.0;
    double q_tilde = 1.0;
};

/// PMF of the NLOS path count K ~ max{Poisson(kappa), 1}.
double nlos_path_count_pmf(double kappa, int k);

/// P(C) = 1 - exp(-q_tilde lambda_T pi R^2).
double coverage_nlos(const DerivedConstants& consts);

/// Per-virtual-BS unblocked probability: 1/(1 + C r / mu) within
/// R_tilde, zero beyond.
double b_tilde(const DerivedConstants& consts, double r);

/// The a-tilde integral; the integrand jumps at r = R_tilde, so the two
/// subintervals are integrated separately.
double a_tilde(const DerivedConstants& consts);

struct NlosBlockProb {
    double uncond;
    std::optional<double> cond;
};

/// Joint LOS+NLOS blockage probability (lower bound).
NlosBlockProb blockage_prob_nlos(const DerivedConstants& consts);

/// First-order approximation of the expected blockage duration with
/// NLOS paths [s].
std::optional<double> expected_duration_nlos(const DerivedConstants& consts);

NlosReport nlos_report(const DerivedConstants& consts);

}  // namespace mmblock
