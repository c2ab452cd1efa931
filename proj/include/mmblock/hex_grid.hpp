#pragma once

#include <vector>

#include "mmblock/params.hpp"

namespace mmblock {

/// One BS of the 37-site hexagonal layout.
struct HexBs {
    int level;       ///< ring level 0..5
    double distance; ///< distance from the central BS [m]
    double angle;    ///< angle from the x-axis [rad]
};

/// The 37-BS hexagonal grid. Level populations are {1,6,6,6,12,6}.
struct HexLayout {
    double inter_site_half_d; ///< the layout parameter d [m]
    std::vector<HexBs> bs_list;
};

/// UE position inside the central hexagonal cell (circumradius d,
/// corners at angles 0, +-pi/3, +-2pi/3, pi).
struct UePosition {
    double delta; ///< distance from the central BS [m]
    double rho;   ///< angle from the x-axis [rad]
};

enum class SelfBlockMode { kNone, kWorstCase };

HexLayout build_layout(double d);

/// Rotates every BS angle; the layout is invariant under 60-degree steps.
HexLayout rotate_layout(const HexLayout& layout, double angle);

/// UE-BS distance by the law of cosines.
double ue_bs_distance(const HexLayout& layout, const UePosition& pos,
                      int bs_index);

/// Area of the central hexagonal cell; 1/area is the matched BS density.
double cell_area(double d);

/// Layout parameter d for a target BS density [1/m^2].
double d_for_density(double density);

struct HexBlockageResult {
    double block_prob;       ///< averaged over the UE-position grid
    int max_excluded;        ///< worst-case self-blocked BS count seen
};

/// Dynamic blockage probability of the hexagonal layout, averaged over
/// a deterministic UE-position grid in the central cell. In worst-case
/// mode the self-blockage sector orientation is chosen, per position,
/// to exclude the maximum number of in-range BSs (upper bound).
HexBlockageResult hex_blockage_prob(const HexLayout& layout,
                                    const DerivedConstants& consts,
                                    double omega, SelfBlockMode mode,
                                    int grid_n = 128);

}  // namespace mmblock
