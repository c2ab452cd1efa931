#include "mmblock/hex_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmblock {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_2pi(double a) {
    a = std::fmod(a, 2 * kPi);
    if (a < 0) a += 2 * kPi;
    return a;
}

// Boundary distance of the central cell (circumradius d, corners at
// angles 0, +-pi/3, ...).
double hex_rmax(double d, double phi) {
    const double apothem = d * std::sqrt(3.0) / 2.0;
    double m = std::fmod(wrap_2pi(phi), kPi / 3.0);
    return apothem / std::cos(m - kPi / 6.0);
}
}  // namespace

HexLayout build_layout(double d) {
    if (d <= 0) throw std::invalid_argument("hex layout requires d > 0");
    HexLayout layout;
    layout.inter_site_half_d = d;
    auto add_level = [&](int level, double dist,
                         const std::vector<double>& angles) {
        for (double a : angles) layout.bs_list.push_back({level, dist, a});
    };
    const double s3 = std::sqrt(3.0);
    add_level(0, 0.0, {0.0});
    add_level(1, s3 * d,
              {kPi / 6, -kPi / 6, kPi / 2, -kPi / 2, 5 * kPi / 6, -5 * kPi / 6});
    add_level(2, 3 * d,
              {0.0, kPi / 3, -kPi / 3, 2 * kPi / 3, -2 * kPi / 3, kPi});
    add_level(3, 2 * s3 * d,
              {kPi / 6, -kPi / 6, kPi / 2, -kPi / 2, 5 * kPi / 6, -5 * kPi / 6});
    const double e = 0.06 * kPi;
    add_level(4, std::sqrt(21.0) * d,
              {e, -e, kPi / 3 + e, kPi / 3 - e, -kPi / 3 + e, -kPi / 3 - e,
               2 * kPi / 3 + e, 2 * kPi / 3 - e, -2 * kPi / 3 + e,
               -2 * kPi / 3 - e, kPi - e, -(kPi - e)});
    add_level(5, 3 * s3 * d,
              {kPi / 6, -kPi / 6, kPi / 2, -kPi / 2, 5 * kPi / 6, -5 * kPi / 6});
    return layout;
}

HexLayout rotate_layout(const HexLayout& layout, double angle) {
    HexLayout out = layout;
    for (auto& bs : out.bs_list) bs.angle = wrap_2pi(bs.angle + angle);
    return out;
}

double ue_bs_distance(const HexLayout& layout, const UePosition& pos,
                      int bs_index) {
    const HexBs& bs = layout.bs_list.at(static_cast<size_t>(bs_index));
    const double d2 = bs.distance * bs.distance + pos.delta * pos.delta -
                      2 * bs.distance * pos.delta *
                          std::cos(bs.angle - pos.rho);
    return std::sqrt(std::max(d2, 0.0));
}

double cell_area(double d) { return 1.5 * std::sqrt(3.0) * d * d; }

double d_for_density(double density) {
    if (density <= 0) throw std::invalid_argument("density must be > 0");
    return std::sqrt(1.0 / (density * 1.5 * std::sqrt(3.0)));
}

HexBlockageResult hex_blockage_prob(const HexLayout& layout,
                                    const DerivedConstants& consts,
                                    double omega, SelfBlockMode mode,
                                    int grid_n) {
    const double d = layout.inter_site_half_d;
    const size_t nbs = layout.bs_list.size();
    const double R = consts.R;
    constexpr int kOrientSteps = 720;

    double num = 0.0, den = 0.0;
    int max_excluded = 0;
    std::vector<double> r(nbs), ang(nbs);
    std::vector<char> excluded(nbs);
    for (int i = 0; i < grid_n; ++i) {
        const double rho = 2 * kPi * (i + 0.5) / grid_n;
        const double rmax = hex_rmax(d, rho);
        const double weight = rmax * rmax;  // polar-affine area weight
        for (int j = 0; j < grid_n; ++j) {
            const double delta = rmax * std::sqrt((j + 0.5) / grid_n);
            const UePosition pos{delta, rho};
            const double ux = delta * std::cos(rho);
            const double uy = delta * std::sin(rho);
            for (size_t b = 0; b < nbs; ++b) {
                r[b] = ue_bs_distance(layout, pos, static_cast<int>(b));
                const double bx = layout.bs_list[b].distance *
                                  std::cos(layout.bs_list[b].angle);
                const double by = layout.bs_list[b].distance *
                                  std::sin(layout.bs_list[b].angle);
                ang[b] = wrap_2pi(std::atan2(by - uy, bx - ux));
            }
            std::fill(excluded.begin(), excluded.end(), 0);
            if (mode == SelfBlockMode::kWorstCase && omega > 0.0) {
                int best_count = -1;
                double best_dist_sum = 0.0;
                int best_orient = 0;
                for (int o = 0; o < kOrientSteps; ++o) {
                    const double start = 2 * kPi * o / kOrientSteps;
                    int count = 0;
                    double dist_sum = 0.0;
                    for (size_t b = 0; b < nbs; ++b) {
                        if (r[b] > R) continue;
                        if (wrap_2pi(ang[b] - start) <= omega) {
                            ++count;
                            dist_sum += r[b];
                        }
                    }
                    if (count > best_count ||
                        (count == best_count && dist_sum < best_dist_sum)) {
                        best_count = count;
                        best_dist_sum = dist_sum;
                        best_orient = o;
                    }
                }
                const double start = 2 * kPi * best_orient / kOrientSteps;
                for (size_t b = 0; b < nbs; ++b)
                    excluded[b] = r[b] <= R && wrap_2pi(ang[b] - start) <= omega;
                max_excluded = std::max(max_excluded, best_count);
            }
            double prod = 1.0;
            for (size_t b = 0; b < nbs; ++b) {
                if (r[b] > R || excluded[b]) continue;
                prod *= single_link_block_prob(consts, r[b]);
            }
            num += weight * prod;
            den += weight;
        }
    }
    return {num / den, max_excluded};
}

}  // namespace mmblock
