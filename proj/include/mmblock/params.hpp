#pragma once

#include <string>

namespace mmblock {

/// Physical and model inputs. All quantities are SI: meters, seconds,
/// densities per m^2, angles in radians. Unit conversion (BS/km^2,
/// degrees, ...) happens at the CLI boundary only.
struct SystemParams {
    double los_range_R = 100.0;            ///< LOS candidate disc radius [m]
    double bs_density_lambda_T = 3e-4;     ///< BS density [1/m^2]
    double blocker_density_lambda_B = 0.01; ///< dynamic blocker density [1/m^2]
    double static_density_lambda_S = 0.0;  ///< static blockage density [1/m^2]
    double blocker_speed_V = 1.0;          ///< blocker speed [m/s]
    double height_blocker_hB = 1.8;        ///< blocker height [m]
    double height_ue_hR = 1.4;             ///< UE height [m]
    double height_bs_hT = 5.0;             ///< BS height [m]
    double inv_mu = 0.5;                   ///< mean single-blockage duration [s]
    double self_block_angle_omega = 1.0471975511965976; ///< 60 deg [rad]
    double mean_block_length_l = 10.0;     ///< E[l] of static blockages [m]
    double mean_block_width_w = 10.0;      ///< E[w] of static blockages [m]
    double nlos_kappa = 3.0;               ///< NLOS path count parameter
    double nlos_attenuation_gamma_dB = 5.0; ///< reflection attenuation [dB]
    double path_loss_exponent_PLE = 2.69;  ///< path loss exponent

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

/// Constants computed once from SystemParams and shared by the analytic
/// and simulation modules.
struct DerivedConstants {
    double C = 0.0;         ///< dynamic blockage rate coefficient [1/(m s)]
    double beta = 0.0;      ///< static blockage coefficient [1/m]
    double beta0 = 0.0;     ///< static blockage constant term
    double p = 1.0;         ///< non-self-blocked fraction
    double q = 1.0;         ///< static-survival factor over the disc
    double q_tilde = 1.0;   ///< LOS+NLOS coverage factor
    double R_tilde = 0.0;   ///< NLOS range [m]
    double eff_fraction = 0.0; ///< (hB-hR)/(hT-hR)
    double mu = 2.0;        ///< unblocking rate [1/s]
    double R = 100.0;       ///< LOS range copy [m]
    double lambda_T = 0.0;  ///< BS density copy [1/m^2]
    double kappa = 3.0;     ///< NLOS path count parameter copy
};

/// Computes every derived constant. Pure: identical inputs give
/// bit-identical outputs. Throws on invalid params (notably hT <= hB).
DerivedConstants derive(const SystemParams& params);

/// Blocker arrival rate of a single BS-UE link of length r [blockers/s].
double alpha_i(const DerivedConstants& consts, double r);

/// Stationary blocked probability of a single link of length r.
double single_link_block_prob(const DerivedConstants& consts, double r);

}  // namespace mmblock
