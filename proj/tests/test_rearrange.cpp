#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "wfi/rearrange.hpp"
#include "wfi/verify.hpp"

using namespace wfi;

TEST(Distribution, Indicator) {
  auto m = distribution(StepFunction::indicator(3.0));
  EXPECT_DOUBLE_EQ(m(0.5), 3.0);
  EXPECT_DOUBLE_EQ(m(1.0), 0.0);
  EXPECT_DOUBLE_EQ(m(2.0), 0.0);
}

TEST(Distribution, TwoLevels) {
  auto f = StepFunction::from_values({0.0, 1.0, 2.0}, {1.0, 3.0, 0.0});
  auto m = distribution(f);
  EXPECT_DOUBLE_EQ(m(0.5), 2.0);
  EXPECT_DOUBLE_EQ(m(1.0), 1.0);
  EXPECT_DOUBLE_EQ(m(2.9), 1.0);
  EXPECT_DOUBLE_EQ(m(3.0), 0.0);
}

TEST(Distribution, InvertsPowerTail) {
  // 1 on [0,1] then t^{-1/2}: |{f > l}| = l^{-2} for l < 1
  auto f = StepFunction::from_values({0.0, 1.0}, {1.0, 1.0}, TailSpec::power(Rational(1, 2)));
  auto m = distribution(f);
  for (double l : {0.9, 0.5, 0.1, 1e-3}) EXPECT_NEAR(m(l), 1.0 / (l * l), 1e-9 / (l * l));
  EXPECT_DOUBLE_EQ(m(1.5), 0.0);
}

TEST(Star, TranslateIsEquimeasurable) {
  auto f = StepFunction::from_values({0.0, 2.0, 5.0}, {0.0, 1.0, 0.0});
  auto s = star(f);
  EXPECT_DOUBLE_EQ(s(0.5), 1.0);
  EXPECT_DOUBLE_EQ(s(2.9), 1.0);
  EXPECT_DOUBLE_EQ(s(3.1), 0.0);
}

TEST(Star, SortsCells) {
  auto s = star(StepFunction::from_values({0.0, 1.0, 2.0}, {1.0, 3.0, 0.0}));
  EXPECT_DOUBLE_EQ(s(0.5), 3.0);
  EXPECT_DOUBLE_EQ(s(1.5), 1.0);
  EXPECT_DOUBLE_EQ(s(2.5), 0.0);
}

TEST(Star, NonIncreasingIsFixed) {
  auto f = StepFunction::from_values({0.0, 1.0}, {1.0, 1.0}, TailSpec::power(Rational(1, 2)));
  auto s = star(f);
  for (double t : {0.3, 1.0, 2.0, 100.0, 1e6}) EXPECT_NEAR(s(t), f(t), 1e-12 * f(t));
}

// Adjacent levels one ulp apart used to produce a degenerate grid.
TEST(Star, LevelsOneUlpApart) {
  double a = 2.9375, b = std::nextafter(a, 3.0);
  auto f = StepFunction::from_values({0.0, 1.0, 2.0, 3.0}, {a, 1.0, b, 0.0});
  StepFunction s;
  ASSERT_NO_THROW(s = star(f));
  EXPECT_TRUE(is_nonincreasing(s));
  EXPECT_NEAR(integrate(s, 0.0, INFINITY).value(), integrate(f, 0.0, INFINITY).value(), 1e-12);
}

TEST(DoubleStar, Indicator) {
  auto g = double_star(StepFunction::indicator(1.0));
  EXPECT_DOUBLE_EQ(g(0.5), 1.0);
  EXPECT_NEAR(g(4.0), 0.25, 1e-15);
}

TEST(DoubleStar, Constant) {
  EXPECT_DOUBLE_EQ(double_star(StepFunction::constant(2.5))(7.0), 2.5);
}

TEST(DoubleStar, InverseSquareRoot) {
  auto g = double_star(StepFunction::power(1.0, Rational(1, 2)));
  for (double t : {1e-4, 1.0, 9.0}) EXPECT_NEAR(g(t), 2.0 / std::sqrt(t), 1e-12 / std::sqrt(t));
}

TEST(HardyLittlewood, MatchedIndicators) {
  auto [lhs, rhs] = hl_pairing(StepFunction::indicator(1.0), StepFunction::indicator(1.0));
  EXPECT_DOUBLE_EQ(lhs.value(), 1.0);
  EXPECT_DOUBLE_EQ(rhs.value(), 1.0);
}

TEST(HardyLittlewood, DisjointSupports) {
  auto g = StepFunction::from_values({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  auto [lhs, rhs] = hl_pairing(StepFunction::indicator(1.0), g);
  EXPECT_DOUBLE_EQ(lhs.value(), 0.0);
  EXPECT_DOUBLE_EQ(rhs.value(), 1.0);
}

TEST(RearrangeProperty, EquimeasurableAndHardyLittlewood) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    auto f = verify::detail::random_step(rng), g = verify::detail::random_step(rng);
    auto fs = star(f);
    ASSERT_TRUE(is_nonincreasing(fs));
    auto mf = distribution(f), ms = distribution(fs);
    for (double l : {0.05, 0.3, 0.7, 1.3, 2.2, 4.0}) EXPECT_LE(verify::detail::rel_gap(mf(l), ms(l), 1.0), 1e-12);
    auto [lhs, rhs] = hl_pairing(f, g);
    if (rhs.is_finite()) {
      ASSERT_TRUE(lhs.is_finite());
      EXPECT_LE(lhs.value(), rhs.value() * (1 + 1e-9) + 1e-12);
    }
    auto fss = star(fs);
    for (double t : {0.1, 1.0, 3.0, 10.0}) EXPECT_NEAR(fss(t), fs(t), 1e-12 * (1 + fs(t)));
  }
}

TEST(RearrangeProperty, DoubleStarDominatesStar) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    auto f = verify::detail::random_step(rng);
    auto s = star(f), d = double_star(f);
    for (double t : {0.2, 1.0, 2.5, 8.0}) EXPECT_GE(d(t) * (1 + 1e-12), s(t));
  }
}
