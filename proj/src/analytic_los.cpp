#include "mmblock/analytic_los.hpp"

#include <cmath>
#include <numbers>

#include "mmblock/quadrature.hpp"

namespace mmblock {

namespace {
constexpr double kPi = std::numbers::pi;

double disc_mean(const DerivedConstants& c) {
    return c.lambda_T * kPi * c.R * c.R;
}

// e^{-x} * ei_series(x) without overflow for large x, via the Ei
// asymptotic expansion truncated at its smallest term.
double exp_neg_x_times_ei(double x) {
    if (x <= 600.0) return std::exp(-x) * ei_series(x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * k / x;
        if (next >= term) break;
        term = next;
        sum += term;
    }
    return sum / x;  // the -ln(x)-gamma part underflows against e^{-x}
}
}  // namespace

double coverage_los(const DerivedConstants& c) {
    return -std::expm1(-c.p * c.q * disc_mean(c));
}

double a_integral(const DerivedConstants& c) {
    const double R = c.R;
    return integrate(
        [&](double r) {
            return std::exp(-(c.beta * r + c.beta0)) /
                   (1.0 + c.C * r / c.mu) * 2.0 * r / (R * R);
        },
        0.0, R, 1e-10);
}

double a_prime(const DerivedConstants& c) {
    const double t = c.R * c.C / c.mu;
    if (t < 1e-8) {
        // log1p-based form still cancels badly below ~1e-8; use the series.
        return 1.0 - 2.0 * t / 3.0 + t * t / 2.0;
    }
    return 2.0 / t - 2.0 / (t * t) * std::log1p(t);
}

double a_prime_approx(const DerivedConstants& c) {
    return 1.0 - 2.0 * c.R * c.C / (3.0 * c.mu);
}

LosBlockProb blockage_prob_los(const DerivedConstants& c) {
    const double a = a_integral(c);
    const double A = disc_mean(c);
    LosBlockProb out;
    out.uncond = std::exp(-a * c.p * A);
    const double cov = coverage_los(c);
    if (cov > 0.0) {
        double cond = (out.uncond - std::exp(-c.p * c.q * A)) / cov;
        if (cond < 0.0) cond = 0.0;  // guard roundoff at lambda_B = 0
        out.cond = cond;
    }
    return out;
}

double ei_series(double x) {
    double term = 1.0, sum = 0.0;
    for (int n = 1; n < 10000; ++n) {
        term *= x / n;
        const double contrib = term / n;
        sum += contrib;
        if (contrib < 1e-14 * sum) break;
    }
    return sum;
}

std::optional<double> expected_duration_los(const DerivedConstants& c) {
    const double x = c.p * c.q * disc_mean(c);
    if (x <= 0.0) return std::nullopt;
    return exp_neg_x_times_ei(x) / (c.mu * -std::expm1(-x));
}

std::optional<double> expected_duration_los_approx(const DerivedConstants& c) {
    const double x = c.p * c.q * disc_mean(c);
    if (x <= 0.0) return std::nullopt;
    return 1.0 / (c.mu * x * -std::expm1(-x));
}

std::optional<double> expected_frequency(const DerivedConstants& c) {
    const double A = disc_mean(c);
    if (A <= 0.0) return std::nullopt;
    const double ap = a_prime(c);
    return c.mu * (1.0 - ap) * c.p * A * std::exp(-ap * c.p * A) /
           -std::expm1(-c.p * A);
}

LosReport los_report(const DerivedConstants& c) {
    LosReport r;
    r.coverage_prob = coverage_los(c);
    const LosBlockProb bp = blockage_prob_los(c);
    r.block_prob_uncond = bp.uncond;
    r.block_prob_cond = bp.cond;
    r.exp_duration_s = expected_duration_los(c);
    r.exp_frequency_hz = expected_frequency(c);
    r.a_integral = a_integral(c);
    r.a_prime = a_prime(c);
    return r;
}

MinDensityResult min_bs_density(const DerivedConstants& consts,
                                double target_block_prob, bool closed_form) {
    if (closed_form) {
        const double lamT = -std::log(target_block_prob) *
                            (1.0 + 2.0 * consts.R * consts.C / (3.0 * consts.mu)) /
                            (consts.p * kPi * consts.R * consts.R);
        return {lamT, true, 0.0};
    }
    auto cond_at = [&](double lamT) {
        DerivedConstants c = consts;
        c.lambda_T = lamT;
        return blockage_prob_los(c).cond.value_or(1.0);
    };
    const double lo0 = 1e-8, hi0 = 1e-1;
    const double infimum = cond_at(hi0);
    if (infimum > target_block_prob) return {hi0, false, infimum};
    // cond is strictly decreasing in lambda_T; bisect on log10.
    double lo = std::log10(lo0), hi = std::log10(hi0);
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cond_at(std::pow(10.0, mid)) > target_block_prob)
            lo = mid;
        else
            hi = mid;
    }
    return {std::pow(10.0, hi), true, infimum};
}

}  // namespace mmblock
