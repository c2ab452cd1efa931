#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "mmblock/hex_grid.hpp"

using namespace mmblock;

namespace {
constexpr double kPi = std::numbers::pi;

DerivedConstants consts(double lambda_B) {
    SystemParams p;
    p.blocker_density_lambda_B = lambda_B;
    return derive(p);
}
}  // namespace

TEST_CASE("layout geometry") {
    const double d = 50.0;
    const HexLayout layout = build_layout(d);
    CHECK(layout.bs_list.size() == 37);
    std::map<int, int> count;
    for (const auto& bs : layout.bs_list) ++count[bs.level];
    CHECK(count[0] == 1);
    CHECK(count[1] == 6);
    CHECK(count[2] == 6);
    CHECK(count[3] == 6);
    CHECK(count[4] == 12);
    CHECK(count[5] == 6);
    const double s3 = std::sqrt(3.0);
    const double expect[6] = {0.0, s3 * d, 3 * d, 2 * s3 * d,
                              std::sqrt(21.0) * d, 3 * s3 * d};
    for (const auto& bs : layout.bs_list)
        CHECK(bs.distance == doctest::Approx(expect[bs.level]).epsilon(1e-12));
}

TEST_CASE("layout rejects non-positive d") {
    CHECK_THROWS_AS(build_layout(0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_layout(-1.0), std::invalid_argument);
}

TEST_CASE("distance by the law of cosines") {
    const HexLayout layout = build_layout(40.0);
    // at the cell center the distance is the BS ring distance
    for (int b = 0; b < 37; ++b)
        CHECK(ue_bs_distance(layout, {0.0, 0.0}, b) ==
              doctest::Approx(layout.bs_list[static_cast<size_t>(b)].distance)
                  .epsilon(1e-12));
    // collinear case: UE on the ray toward a level-2 BS at distance 3d
    for (int b = 0; b < 37; ++b) {
        const auto& bs = layout.bs_list[static_cast<size_t>(b)];
        if (bs.level == 2 && std::abs(bs.angle) < 1e-12) {
            CHECK(ue_bs_distance(layout, {10.0, 0.0}, b) ==
                  doctest::Approx(3 * 40.0 - 10.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("cell area and density mapping") {
    CHECK(cell_area(50.0) ==
          doctest::Approx(1.5 * std::sqrt(3.0) * 2500.0).epsilon(1e-12));
    CHECK(d_for_density(1e-4) == doctest::Approx(62.0403).epsilon(1e-5));
    for (double dens : {1e-5, 1e-4, 5e-4})
        CHECK(1.0 / cell_area(d_for_density(dens)) ==
              doctest::Approx(dens).epsilon(1e-12));
    CHECK_THROWS_AS(d_for_density(0.0), std::invalid_argument);
}

TEST_CASE("blockage probability is invariant under 60-degree rotation") {
    const HexLayout layout = build_layout(45.0);
    const DerivedConstants c = consts(0.1);
    const double base =
        hex_blockage_prob(layout, c, 0.0, SelfBlockMode::kNone, 32).block_prob;
    for (double ang : {kPi / 3, 2 * kPi / 3, kPi}) {
        const HexLayout rot = rotate_layout(layout, ang);
        const double v =
            hex_blockage_prob(rot, c, 0.0, SelfBlockMode::kNone, 32).block_prob;
        CHECK(v == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("denser layouts see less blockage") {
    const DerivedConstants c = consts(0.1);
    const double sparse = hex_blockage_prob(build_layout(55.0), c, 0.0,
                                            SelfBlockMode::kNone, 48)
                              .block_prob;
    const double dense = hex_blockage_prob(build_layout(30.0), c, 0.0,
                                           SelfBlockMode::kNone, 48)
                             .block_prob;
    CHECK(dense < sparse);
    CHECK(sparse > 0.0);
    CHECK(sparse < 1.0);
}

TEST_CASE("worst-case self-blockage is an upper bound") {
    const HexLayout layout = build_layout(45.0);
    const DerivedConstants c = consts(0.1);
    const double omega = kPi / 3;
    const auto none = hex_blockage_prob(layout, c, omega, SelfBlockMode::kNone, 48);
    const auto worst =
        hex_blockage_prob(layout, c, omega, SelfBlockMode::kWorstCase, 48);
    CHECK(worst.block_prob >= none.block_prob);
    CHECK(worst.max_excluded >= 1);
    CHECK(none.max_excluded == 0);
}

TEST_CASE("zero sector width makes the modes agree") {
    const HexLayout layout = build_layout(45.0);
    const DerivedConstants c = consts(0.1);
    const auto none = hex_blockage_prob(layout, c, 0.0, SelfBlockMode::kNone, 32);
    const auto worst =
        hex_blockage_prob(layout, c, 0.0, SelfBlockMode::kWorstCase, 32);
    CHECK(worst.block_prob == doctest::Approx(none.block_prob).epsilon(1e-12));
}

TEST_CASE("sparse layout is bounded by the central link") {
    // d = 80: the central BS is always in range, so the product over
    // links never exceeds its single-link blocked probability
    const HexLayout layout = build_layout(80.0);
    const DerivedConstants c = consts(0.1);
    const auto r = hex_blockage_prob(layout, c, 0.0, SelfBlockMode::kNone, 64);
    CHECK(r.block_prob > 0.0);
    CHECK(r.block_prob < single_link_block_prob(c, 80.0));
}

TEST_CASE("blockage grows with the blocker density") {
    const HexLayout layout = build_layout(45.0);
    double prev = 0.0;
    for (double lamB : {0.02, 0.05, 0.1, 0.2}) {
        const double v = hex_blockage_prob(layout, consts(lamB), 0.0,
                                           SelfBlockMode::kNone, 32)
                             .block_prob;
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("grid refinement converges") {
    const HexLayout layout = build_layout(45.0);
    const DerivedConstants c = consts(0.1);
    const double coarse =
        hex_blockage_prob(layout, c, 0.0, SelfBlockMode::kNone, 32).block_prob;
    const double fine =
        hex_blockage_prob(layout, c, 0.0, SelfBlockMode::kNone, 128).block_prob;
    CHECK(coarse == doctest::Approx(fine).epsilon(0.02));
}
