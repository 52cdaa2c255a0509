#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "hnp/geometry.hpp"
#include "hnp/rng.hpp"

using namespace hnp;

TEST(Geometry, IsometryRotatesThenTranslates) {
  const Isometry iso{1.0, 2.0, std::numbers::pi / 2};
  const PlanePoint p = apply_isometry(iso, {1.0, 0.0});
  EXPECT_NEAR(p.x, 1.0, 1e-15);
  EXPECT_NEAR(p.y, 3.0, 1e-15);
}

TEST(Geometry, IsometryPreservesDistance) {
  const CounterRng rng(7);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Isometry iso{rng.uniform(5 * i) * 10 - 5, rng.uniform(5 * i + 1) * 10 - 5, rng.uniform(5 * i + 2) * 7};
    const PlanePoint a{rng.uniform(5 * i + 3), 0.3};
    const PlanePoint b{-0.2, rng.uniform(5 * i + 4)};
    EXPECT_NEAR(distance(apply_isometry(iso, a), apply_isometry(iso, b)), distance(a, b), 1e-12);
  }
}

TEST(Geometry, DegenerateBasisRejected) {
  EXPECT_THROW(LatticeBasis({1.0, 0.0}, {2.0, 0.0}), InvalidInput);
  EXPECT_THROW(LatticeBasis({0.0, 0.0}, {0.0, 1.0}), InvalidInput);
  EXPECT_NO_THROW(LatticeBasis({1.0, 0.0}, {0.5, 0.8}));
}

TEST(Geometry, ReduceToCellExamples) {
  const LatticeBasis b({2.0, 0.0}, {0.0, 3.0});
  const CellReduction r = reduce_to_cell({5.0, -1.0}, b);
  EXPECT_NEAR(r.cell_point.x, 1.0, 1e-12);
  EXPECT_NEAR(r.cell_point.y, 2.0, 1e-12);
  EXPECT_EQ(r.m, 2);
  EXPECT_EQ(r.n, -1);
  // A point on a cell boundary lands in the cell it starts.
  const CellReduction edge = reduce_to_cell({4.0, 0.0}, b);
  EXPECT_EQ(edge.m, 2);
  EXPECT_NEAR(edge.cell_point.x, 0.0, 1e-12);
}

TEST(Geometry, ReduceToCellProperties) {
  const LatticeBasis b({1.3, 0.1}, {0.4, 0.9});
  const CounterRng rng(11);
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const PlanePoint p{rng.uniform(2 * i) * 200 - 100, rng.uniform(2 * i + 1) * 200 - 100};
    const CellReduction r = reduce_to_cell(p, b);
    const auto [a, c] = b.coords(r.cell_point);
    EXPECT_GE(a, -1e-9);
    EXPECT_LT(a, 1.0 + 1e-9);
    EXPECT_GE(c, -1e-9);
    EXPECT_LT(c, 1.0 + 1e-9);
    const PlanePoint back = r.cell_point + b.point(static_cast<double>(r.m), static_cast<double>(r.n));
    EXPECT_NEAR(back.x, p.x, 1e-9);
    EXPECT_NEAR(back.y, p.y, 1e-9);
  }
}

TEST(Rng, CounterStreamIsPure) {
  const CounterRng a(123);
  const CounterRng b(123);
  EXPECT_EQ(a.bits(99), b.bits(99));
  EXPECT_NE(a.bits(99), CounterRng(124).bits(99));
  EXPECT_NE(a.substream(1).bits(0), a.substream(2).bits(0));
  // Frozen values guard against accidental changes to the stream.
  EXPECT_EQ(mix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(mix64(1), 0x910A2DEC89025CC1ULL);
}

TEST(Rng, PrincipalSampleMeanAndUniformity) {
  const CounterRng rng(kDefaultSeed);
  constexpr std::uint64_t n = 1'000'000;
  double sum_a = 0.0;
  double sum_b = 0.0;
  double sum_t = 0.0;
  std::array<std::uint64_t, 16> bins{};
  for (std::uint64_t i = 0; i < n; ++i) {
    const PrincipalSample s = sample_principal_coords(rng, i);
    ASSERT_GE(s.a, 0.0);
    ASSERT_LT(s.a, 1.0);
    ASSERT_GE(s.theta, 0.0);
    ASSERT_LT(s.theta, 2 * std::numbers::pi);
    sum_a += s.a;
    sum_b += s.b;
    sum_t += s.theta;
    ++bins[static_cast<std::size_t>(s.a * 16)];
  }
  EXPECT_NEAR(sum_a / n, 0.5, 0.002);
  EXPECT_NEAR(sum_b / n, 0.5, 0.002);
  EXPECT_NEAR(sum_t / n, std::numbers::pi, 0.002 * 2 * std::numbers::pi);
  const double expected = n / 16.0;
  double chi2 = 0.0;
  for (const std::uint64_t c : bins) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 37.70);  // chi-square, 15 dof, p = 0.001
}

TEST(Rng, SampledIsometryLandsInCell) {
  const LatticeBasis b({std::sqrt(3.0), 0.0}, {std::sqrt(3.0) / 2, 1.5});
  const CounterRng rng(5);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Isometry iso = sample_principal_isometry(rng, i, b);
    const auto [a, c] = b.coords({iso.dx, iso.dy});
    EXPECT_GE(a, -1e-12);
    EXPECT_LT(a, 1.0);
    EXPECT_GE(c, -1e-12);
    EXPECT_LT(c, 1.0);
  }
}
