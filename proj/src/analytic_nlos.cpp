#include "mmblock/analytic_nlos.hpp"

#include <cmath>
#include <numbers>

#include "mmblock/quadrature.hpp"

namespace mmblock {

namespace {
constexpr double kPi = std::numbers::pi;

double disc_mean(const DerivedConstants& c) {
    return c.lambda_T * kPi * c.R * c.R;
}
}  // namespace

double nlos_path_count_pmf(double kappa, int k) {
    if (k <= 0) return 0.0;
    if (k == 1) return std::exp(-kappa) * (1.0 + kappa);
    double logp = -kappa + k * std::log(kappa);
    for (int i = 2; i <= k; ++i) logp -= std::log(static_cast<double>(i));
    return std::exp(logp);
}

double coverage_nlos(const DerivedConstants& c) {
    return -std::expm1(-c.q_tilde * disc_mean(c));
}

double b_tilde(const DerivedConstants& c, double r) {
    if (r > c.R_tilde) return 0.0;
    return 1.0 / (1.0 + c.C * r / c.mu);
}

double a_tilde(const DerivedConstants& c) {
    const double R = c.R;
    const double Rt = std::min(c.R_tilde, R);
    auto integrand = [&](double r, bool inside) {
        const double los_keep =
            c.p * std::exp(-(c.beta * r + c.beta0)) / (1.0 + c.C * r / c.mu);
        double nlos_factor = 1.0;
        if (inside) {
            const double b = 1.0 / (1.0 + c.C * r / c.mu);
            nlos_factor = std::exp(-b * c.kappa) - b * std::exp(-c.kappa);
        }
        return (1.0 - los_keep) * nlos_factor * 2.0 * r / (R * R);
    };
    double inner = 0.0;
    if (Rt > 0.0)
        inner = integrate([&](double r) { return integrand(r, true); }, 0.0, Rt,
                          1e-10);
    const double outer =
        integrate([&](double r) { return integrand(r, false); }, Rt, R, 1e-10);
    return 1.0 - (inner + outer);
}

NlosBlockProb blockage_prob_nlos(const DerivedConstants& c) {
    const double at = a_tilde(c);
    const double A = disc_mean(c);
    NlosBlockProb out;
    out.uncond = std::exp(-at * A);
    const double cov = coverage_nlos(c);
    if (cov > 0.0) {
        double cond = (out.uncond - std::exp(-c.q_tilde * A)) / cov;
        if (cond < 0.0) cond = 0.0;
        out.cond = cond;
    }
    return out;
}

std::optional<double> expected_duration_nlos(const DerivedConstants& c) {
    const double A = disc_mean(c);
    if (A <= 0.0) return std::nullopt;
    const double paths =
        c.p * c.q * A + c.kappa * c.lambda_T * kPi * c.R_tilde * c.R_tilde;
    return 1.0 / (-std::expm1(-c.q_tilde * A) * c.mu * paths);
}

NlosReport nlos_report(const DerivedConstants& c) {
    NlosReport r;
    r.coverage_prob = coverage_nlos(c);
    const NlosBlockProb bp = blockage_prob_nlos(c);
    r.block_prob_uncond = bp.uncond;
    r.block_prob_cond = bp.cond;
    r.exp_duration_s = expected_duration_nlos(c);
    r.a_tilde = a_tilde(c);
    r.q_tilde = c.q_tilde;
    return r;
}

}  // namespace mmblock
