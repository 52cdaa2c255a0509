#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hnp/coloring.hpp"
#include "hnp/rng.hpp"

using namespace hnp;

namespace {

std::vector<PeriodicColoring> all_families() {
  const PeriodicColoring hex3_commensurate = hex_coloring(3, 2.0 / std::numbers::sqrt3, 2);
  return {
      stripe_coloring(std::numbers::sqrt3 / 2),
      stripe_coloring(0.7, 3),
      hex_coloring(3, 1.22, 2),
      hex_coloring(5, 0.8, 2),
      hex_quad_coloring(1.13),
      isbell_coloring(),
      make_coloring({default_hex_spec(4, 1.13)}),
      overlay_patch(hex3_commensurate, {0.3, -0.2}),
  };
}

}  // namespace

TEST(Coloring, StripeExamples) {
  const PeriodicColoring c = stripe_coloring(std::numbers::sqrt3 / 2);
  EXPECT_EQ(c.k(), 2);
  EXPECT_EQ(c.color_at({0.1, 0.0}), 0);
  EXPECT_EQ(c.color_at({0.9, 7.0}), 1);
  EXPECT_EQ(c.color_at({1.8, -5.0}), 0);
  EXPECT_EQ(c.color_at({-0.1, 0.0}), 1);
}

TEST(Coloring, HexCellsAndCentres) {
  const double r = 0.5;
  EXPECT_EQ(hex_at({0.0, 0.0}, r), (Axial{0, 0}));
  for (int q = -4; q <= 4; ++q)
    for (int s = -4; s <= 4; ++s) {
      const Axial h{q, s};
      EXPECT_EQ(hex_at(hex_center(h, r), r), h);
      // Points well inside the hexagon (inradius is r sqrt(3)/2).
      EXPECT_EQ(hex_at(hex_center(h, r) + PlanePoint{0.4 * r, 0.1 * r}, r), h);
    }
  const PlanePoint east = hex_center({1, 0}, r);
  EXPECT_NEAR(east.x, std::numbers::sqrt3 * r, 1e-15);
  EXPECT_NEAR(east.y, 0.0, 1e-15);
}

TEST(Coloring, HexPatternsAreProper) {
  EXPECT_TRUE(hex_pattern_is_proper(3, HexPattern::residue, 2));
  EXPECT_TRUE(hex_pattern_is_proper(7, HexPattern::residue, 3));
  EXPECT_TRUE(hex_pattern_is_proper(4, HexPattern::quad, 0));
  EXPECT_FALSE(hex_pattern_is_proper(3, HexPattern::residue, 0));
  EXPECT_FALSE(hex_pattern_is_proper(4, HexPattern::residue, 1));
  EXPECT_THROW(hex_coloring(3, 1.0, 0), InvalidInput);
  for (const PeriodicColoring& c : all_families()) {
    if (!std::holds_alternative<HexSpec>(c.descriptor().spec)) continue;
    const auto& h = std::get<HexSpec>(c.descriptor().spec);
    for (int q = -5; q <= 5; ++q)
      for (int s = -5; s <= 5; ++s)
        for (const Axial d : kHexNeighbors)
          EXPECT_NE(hex_pattern_color({q, s}, h.k, h.pattern, h.multiplier),
                    hex_pattern_color({q + d.q, s + d.r}, h.k, h.pattern, h.multiplier));
  }
}

TEST(Coloring, InvalidParametersRejected) {
  EXPECT_THROW(stripe_coloring(0.0), InvalidInput);
  EXPECT_THROW(stripe_coloring(-1.0), InvalidInput);
  EXPECT_THROW(stripe_coloring(std::nan("")), InvalidInput);
  EXPECT_THROW(hex_coloring(2, 1.0, 1), InvalidInput);
  EXPECT_THROW(hex_coloring(3, 0.0, 2), InvalidInput);
  EXPECT_THROW(make_coloring({OverlaySpec{nullptr, {0.0, 0.0}}}), InvalidInput);
}

TEST(Coloring, ColoursStayInRange) {
  const CounterRng rng(3);
  for (const PeriodicColoring& c : all_families())
    for (std::uint64_t i = 0; i < 2000; ++i) {
      const Color col = c.color_at({rng.uniform(2 * i) * 40 - 20, rng.uniform(2 * i + 1) * 40 - 20});
      EXPECT_GE(col, 0);
      EXPECT_LT(col, c.k());
    }
}

TEST(Coloring, PeriodicityOfEveryFamily) {
  const CounterRng rng(2024);
  for (const PeriodicColoring& c : all_families()) {
    ASSERT_TRUE(c.has_exact_period()) << family_name(c.descriptor());
    int mismatches = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      const PlanePoint p{rng.uniform(4 * i) * 20 - 10, rng.uniform(4 * i + 1) * 20 - 10};
      const auto m = static_cast<int>(rng.bits(4 * i + 2) % 11) - 5;
      const auto n = static_cast<int>(rng.bits(4 * i + 3) % 11) - 5;
      const PlanePoint shifted = p + c.basis().point(m, n);
      if (c.color_at(p) != c.color_at(shifted)) ++mismatches;
    }
    EXPECT_EQ(mismatches, 0) << family_name(c.descriptor());
  }
}

TEST(Coloring, OverlayOnIncommensurateBaseHasNoExactPeriod) {
  const PeriodicColoring o = overlay_patch(stripe_coloring(std::numbers::sqrt3 / 2), {0.1, 0.2});
  EXPECT_FALSE(o.has_exact_period());
  EXPECT_EQ(o.k(), 3);
}

TEST(Coloring, OverlayPatchNeverHoldsAUnitPair) {
  const PeriodicColoring o = overlay_patch(stripe_coloring(std::numbers::sqrt3 / 2), {0.37, -1.1});
  const CounterRng rng(99);
  int inside = 0;
  for (std::uint64_t i = 0; i < 200000; ++i) {
    const PlanePoint p{rng.uniform(3 * i) * 10, rng.uniform(3 * i + 1) * 10};
    if (!o.in_patch(p)) continue;
    ++inside;
    EXPECT_EQ(o.color_at(p), 2);
    const PlanePoint q = p + cis(2 * std::numbers::pi * rng.uniform(3 * i + 2));
    EXPECT_FALSE(o.in_patch(q));
    EXPECT_NE(o.color_at(q), 2);
  }
  EXPECT_GT(inside, 1000);
}

TEST(Coloring, OverlayAreaFraction) {
  const PeriodicColoring o = overlay_patch(stripe_coloring(std::numbers::sqrt3 / 2), {0.0, 0.0});
  const CounterRng rng(17);
  constexpr std::uint64_t n = 1'000'000;
  std::uint64_t inside = 0;
  const LatticeBasis cell = patch_lattice();
  for (std::uint64_t i = 0; i < n; ++i)
    inside += o.in_patch(cell.point(rng.uniform(2 * i), rng.uniform(2 * i + 1))) ? 1 : 0;
  const double expected = std::numbers::pi / (8 * std::numbers::sqrt3);  // 0.226725
  EXPECT_NEAR(static_cast<double>(inside) / n, expected, 0.0013);
}

TEST(Coloring, DefaultHexSpecs) {
  EXPECT_EQ(default_hex_spec(4, 1.13).pattern, HexPattern::quad);
  EXPECT_EQ(default_hex_spec(7, 0.95).multiplier, 3);
  EXPECT_EQ(default_hex_spec(3, 1.22).multiplier, 2);
  EXPECT_EQ(family_name(isbell_coloring().descriptor()), "isbell");
}
