#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "roitrack/geometry.hpp"

using namespace roitrack;

namespace {
constexpr double kPi = std::numbers::pi;
const FrameSpec kFrame{1920, 720};
}  // namespace

TEST(ToCentered, FrameCenterIsOrigin) {
  const auto p = to_centered(360, 960, kFrame);
  EXPECT_EQ(p.x, 0.0);
  EXPECT_EQ(p.y, 0.0);
}

TEST(ToCentered, TopLeftCorner) {
  const auto p = to_centered(0, 0, kFrame);
  EXPECT_EQ(p.x, -960.0);
  EXPECT_EQ(p.y, 360.0);
}

TEST(ToCentered, FlipsRowsSoYPointsUp) {
  // col - 960, 360 - row
  const auto p = to_centered(460, 1260, kFrame);
  EXPECT_EQ(p.x, 300.0);
  EXPECT_EQ(p.y, -100.0);
}

TEST(ToCentered, OffFramePixelsPassThrough) {
  const auto p = to_centered(-10, 2000, kFrame);
  EXPECT_EQ(p.x, 1040.0);
  EXPECT_EQ(p.y, 370.0);
}

TEST(ToPolar, ThreeFourFive) {
  const auto pp = to_polar({3, 4});
  EXPECT_DOUBLE_EQ(pp.r, 5.0);
  EXPECT_NEAR(pp.theta, 0.9272952180016122, 1e-15);
}

TEST(ToPolar, AxisDirections) {
  EXPECT_EQ(to_polar({1, 0}).theta, 0.0);
  EXPECT_EQ(to_polar({1, 0}).r, 1.0);
  EXPECT_DOUBLE_EQ(to_polar({0, -1}).theta, -kPi / 2);
  EXPECT_DOUBLE_EQ(to_polar({-1, 0}).theta, kPi);
  EXPECT_DOUBLE_EQ(to_polar({-1, -0.0}).theta, kPi);
}

TEST(ToPolar, OriginIsZeroZero) {
  const auto pp = to_polar({0, 0});
  EXPECT_EQ(pp.r, 0.0);
  EXPECT_EQ(pp.theta, 0.0);
}

TEST(ToPolar, RoundTripsThroughCartesian) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r_dist(1e-3, 2000.0);
  std::uniform_real_distribution<double> th_dist(-kPi + 1e-9, kPi);
  for (int i = 0; i < 20000; ++i) {
    const double r = r_dist(rng), th = th_dist(rng);
    const auto pp = to_polar({r * std::cos(th), r * std::sin(th)});
    ASSERT_NEAR(pp.r, r, 1e-9);
    ASSERT_NEAR(pp.theta, th, 1e-9);
  }
}

TEST(RelativePosition, Examples) {
  EXPECT_EQ(relative_position({0, 0}, {288, 108}), 0.0);
  EXPECT_EQ(relative_position({288, 0}, {288, 108}), 1.0);
  EXPECT_EQ(relative_position({100, 50}, {200, 100}), 0.5);
}

TEST(RelativePosition, NonNegativeAndZeroOnlyAtOrigin) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-1000, 1000), ax(1, 500);
  for (int i = 0; i < 10000; ++i) {
    const ImagePoint p{c(rng), c(rng)};
    const EllipseRoi roi{ax(rng), ax(rng)};
    ASSERT_GT(relative_position(p, roi), 0.0);
  }
}

TEST(RelativePosition, ScaleInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-1000, 1000), ax(1, 500), k(0.01, 100);
  for (int i = 0; i < 10000; ++i) {
    const double x = c(rng), y = c(rng), a = ax(rng), b = ax(rng), s = k(rng);
    const double base = relative_position({x, y}, {a, b});
    ASSERT_NEAR(relative_position({s * x, s * y}, {s * a, s * b}), base, 1e-12 * std::max(1.0, base));
  }
}

TEST(IsInside, BoundaryCountsAsInside) {
  const EllipseRoi roi{576, 216};
  EXPECT_TRUE(is_inside({0, 0}, roi));
  EXPECT_TRUE(is_inside({576, 0}, roi));
  EXPECT_TRUE(is_inside({0, -216}, roi));
  EXPECT_FALSE(is_inside({576, 216}, roi));
  EXPECT_EQ(relative_position({576, 216}, roi), 2.0);
}

TEST(IsInside, MatchesDirectFormula) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> c(-960, 960), ax(20, 900);
  for (int i = 0; i < 50000; ++i) {
    const double x = c(rng), y = c(rng), a = ax(rng), b = ax(rng);
    ASSERT_EQ(is_inside({x, y}, {a, b}), oracle::eq1(x, y, a, b) <= 1.0);
  }
}

TEST(ClassifySector, AxisDirections) {
  EXPECT_EQ(classify_sector(0.0), Sector::Right);
  EXPECT_EQ(classify_sector(kPi / 2), Sector::Top);
  EXPECT_EQ(classify_sector(kPi), Sector::Left);
  EXPECT_EQ(classify_sector(-kPi / 2), Sector::Bottom);
}

TEST(ClassifySector, BoundariesBelongToTheCounterclockwiseSector) {
  EXPECT_EQ(classify_sector(kPi / 4), Sector::Top);
  EXPECT_EQ(classify_sector(3 * kPi / 4), Sector::Left);
  EXPECT_EQ(classify_sector(-3 * kPi / 4), Sector::Bottom);
  EXPECT_EQ(classify_sector(-kPi / 4), Sector::Right);
  // Exact diagonal pixels land on the boundary angles.
  EXPECT_EQ(classify_sector(to_polar({5, 5}).theta), Sector::Top);
  EXPECT_EQ(classify_sector(to_polar({-5, 5}).theta), Sector::Left);
  EXPECT_EQ(classify_sector(to_polar({-5, -5}).theta), Sector::Bottom);
  EXPECT_EQ(classify_sector(to_polar({5, -5}).theta), Sector::Right);
}

TEST(ClassifySector, SweepCoversEachSectorForAQuarterTurn) {
  constexpr int kSamples = 1'000'000;
  std::array<int, 4> counts{};
  for (int i = 0; i < kSamples; ++i) {
    // Uniform grid over (-pi, pi].
    const double theta = -kPi + 2 * kPi * (i + 1) / kSamples;
    counts[static_cast<int>(classify_sector(theta))]++;
  }
  // Each preimage spans pi/2; grid points on a boundary may fall either way.
  for (int c : counts) EXPECT_NEAR(c, kSamples / 4, 1);
}

TEST(ClassifySector, AgreesWithComponentComparisonOffTheDiagonals) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> c(-1000, 1000);
  for (int i = 0; i < 100000; ++i) {
    const double x = c(rng), y = c(rng);
    if (std::abs(std::abs(x) - std::abs(y)) < 1e-9) continue;
    const int expected = oracle::sector_code(x, y);
    const Sector got = classify_sector(to_polar({x, y}).theta);
    const int code = got == Sector::Right ? 1 : got == Sector::Left ? -1 : got == Sector::Top ? 2 : -2;
    ASSERT_EQ(code, expected) << x << "," << y;
  }
}

TEST(EllipseRoi, DefaultFractionsGive576By216) {
  const auto roi = EllipseRoi::from_fractions(kFrame, 0.30, 0.30);
  EXPECT_DOUBLE_EQ(roi.a, 576.0);
  EXPECT_DOUBLE_EQ(roi.b, 216.0);
  EXPECT_TRUE(roi.fits(kFrame));
}

TEST(EllipseRoi, FractionsOutsideRangeRejected) {
  EXPECT_THROW(EllipseRoi::from_fractions(kFrame, 0.04, 0.3), std::invalid_argument);
  EXPECT_THROW(EllipseRoi::from_fractions(kFrame, 0.3, 0.5), std::invalid_argument);
  EXPECT_NO_THROW(EllipseRoi::from_fractions(kFrame, 0.05, 0.49));
}

TEST(SectorNames, RoundTrip) {
  for (Sector s : {Sector::Right, Sector::Top, Sector::Left, Sector::Bottom}) {
    EXPECT_EQ(sector_from_string(to_string(s)), s);
  }
  EXPECT_THROW(sector_from_string("up"), std::invalid_argument);
}
