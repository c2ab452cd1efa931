#include "mmblock/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmblock {

namespace {
constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

void SystemParams::validate() const {
    require(los_range_R > 0, "los_range_R must be > 0");
    require(bs_density_lambda_T >= 0, "bs_density_lambda_T must be >= 0");
    require(blocker_density_lambda_B >= 0, "blocker_density_lambda_B must be >= 0");
    require(static_density_lambda_S >= 0, "static_density_lambda_S must be >= 0");
    require(blocker_speed_V >= 0, "blocker_speed_V must be >= 0");
    require(height_ue_hR > 0, "height_ue_hR must be > 0");
    require(height_ue_hR < height_blocker_hB,
            "height ordering violated: requires hR < hB");
    require(height_blocker_hB < height_bs_hT,
            "height ordering violated: requires hB < hT (BS must be above blockers)");
    require(inv_mu > 0, "inv_mu must be > 0");
    require(self_block_angle_omega >= 0 && self_block_angle_omega < 2 * kPi,
            "self_block_angle_omega must be in [0, 2*pi)");
    require(mean_block_length_l > 0, "mean_block_length_l must be > 0");
    require(mean_block_width_w > 0, "mean_block_width_w must be > 0");
    require(nlos_kappa >= 0, "nlos_kappa must be >= 0");
    require(path_loss_exponent_PLE > 0, "path_loss_exponent_PLE must be > 0");
}

DerivedConstants derive(const SystemParams& params) {
    params.validate();
    DerivedConstants c;
    const double hB = params.height_blocker_hB;
    const double hR = params.height_ue_hR;
    const double hT = params.height_bs_hT;
    const double R = params.los_range_R;

    c.eff_fraction = (hB - hR) / (hT - hR);
    c.C = (2.0 / kPi) * params.blocker_density_lambda_B * params.blocker_speed_V *
          c.eff_fraction;
    c.beta = (2.0 / kPi) * params.static_density_lambda_S *
             (params.mean_block_length_l + params.mean_block_width_w);
    c.beta0 = params.static_density_lambda_S * params.mean_block_length_l *
              params.mean_block_width_w;
    c.p = 1.0 - params.self_block_angle_omega / (2.0 * kPi);
    c.mu = 1.0 / params.inv_mu;
    c.R = R;
    c.lambda_T = params.bs_density_lambda_T;
    c.kappa = params.nlos_kappa;
    c.R_tilde = R * std::pow(10.0, -params.nlos_attenuation_gamma_dB /
                                       (10.0 * params.path_loss_exponent_PLE));

    // q = int_0^R e^{-(beta r + beta0)} (2r/R^2) dr, closed form. The
    // lambda_S -> 0 limit is a removable 0/0; branch explicitly.
    if (params.static_density_lambda_S == 0.0) {
        c.q = 1.0;
    } else if (c.beta * R < 1e-9) {
        c.q = std::exp(-c.beta0);
    } else {
        const double bR = c.beta * R;
        c.q = 2.0 * std::exp(-c.beta0) / (bR * bR) *
              (1.0 - (1.0 + bR) * std::exp(-bR));
    }

    // q_tilde = 1 - int_{Rt}^{R} (1 - p e^{-(beta r + beta0)}) (2r/R^2) dr.
    const double Rt = c.R_tilde;
    if (params.static_density_lambda_S == 0.0 || c.beta * R < 1e-9) {
        const double e0 = std::exp(-c.beta0);
        c.q_tilde = (Rt * Rt + c.p * e0 * (R * R - Rt * Rt)) / (R * R);
    } else {
        const double b = c.beta;
        c.q_tilde = Rt * Rt / (R * R) +
                    2.0 * c.p * std::exp(-c.beta0) / (b * b * R * R) *
                        ((1.0 + b * Rt) * std::exp(-b * Rt) -
                         (1.0 + b * R) * std::exp(-b * R));
    }
    return c;
}

double alpha_i(const DerivedConstants& consts, double r) {
    return consts.C * r;
}

double single_link_block_prob(const DerivedConstants& consts, double r) {
    const double x = consts.C * r / consts.mu;
    return x / (1.0 + x);
}

}  // namespace mmblock
