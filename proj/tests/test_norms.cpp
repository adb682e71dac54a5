#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "wfi/norms.hpp"
#include "wfi/verify.hpp"

using namespace wfi;

// Expected values below come from tests/oracles/sequence_norms.py (mpmath, 30 digits).

namespace {

const SequenceData e1({1.0});
const SequenceData digits({3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5});

Exponent E(const char* s) { return Exponent::parse(s); }

}  // namespace

TEST(Theta, UnitVector) {
  EXPECT_NEAR(theta_norm(e1, E("4")).value(), 1.35667985026478284, 1e-8);
  EXPECT_NEAR(theta_norm(e1, E("3")).value(), 1.59777440257987533, 1e-8);
  EXPECT_NEAR(theta_norm(e1, E("4"), true).value(), 1.48064762137367373, 1e-8);
}

TEST(Theta, GeneralSequence) {
  EXPECT_NEAR(theta_norm(digits, E("4")).value(), 15.4622170153469275, 1e-8 * 15.5);
}

TEST(Theta, ZeroAndHomogeneity) {
  EXPECT_DOUBLE_EQ(theta_norm(SequenceData({0.0, 0.0}), E("4")).value(), 0.0);
  SequenceData twice({6, 2, 8, 2, 10, 18, 4, 12, 10, 6, 10});
  EXPECT_NEAR(theta_norm(twice, E("4")).value(), 2 * theta_norm(digits, E("4")).value(), 1e-12 * 31);
  EXPECT_THROW(theta_norm(e1, E("2")), std::invalid_argument);
}

TEST(Gamma, UnitVector) {
  EXPECT_NEAR(gamma_norm(e1, E("1")).value(), 2.75788283744819501, 1e-8);
  EXPECT_NEAR(gamma_norm(e1, E("3/2")).value(), 1.92179289433957024, 1e-8);
}

TEST(Gamma, GeneralSequence) {
  EXPECT_NEAR(gamma_norm(digits, E("1")).value(), 72.5419443630296685, 1e-8 * 72.6);
}

TEST(Gamma, ZeroAndDomain) {
  EXPECT_DOUBLE_EQ(gamma_norm(SequenceData(std::vector<double>{}), E("1")).value(), 0.0);
  EXPECT_THROW(gamma_norm(e1, E("2")), std::invalid_argument);
  EXPECT_THROW(gamma_norm(e1, E("1/2")), std::invalid_argument);
}

TEST(Bochkarev, UnitVectorAtFirstTerm) {
  EXPECT_NEAR(bochkarev_norm(e1, E("4")), 1 / std::pow(std::log(2.0), 0.25), 1e-14);
  EXPECT_DOUBLE_EQ(bochkarev_norm(SequenceData(std::vector<double>{}), E("4")), 0.0);
}

TEST(Blocks, SingleBlockIsEuclidean) {
  SequenceData a({3, 1, 4});
  EXPECT_NEAR(dyadic_block_norms(a, E("4")).value(), std::sqrt(26.0), 1e-12);
  EXPECT_DOUBLE_EQ(dyadic_block_norms(SequenceData(std::vector<double>{}), E("4")).value(), 0.0);
  EXPECT_THROW(dyadic_block_norms(a, E("2")), std::invalid_argument);
}

TEST(SequenceProperty, StarVariantsAndBochkarevBounded) {
  std::mt19937_64 rng(17);
  double worst_gamma = 0, worst_boch = 0, worst_block = 0;
  for (int i = 0; i < 200; ++i) {
    SequenceData a(verify::random_sequence(rng));
    double g1 = gamma_norm(a, E("1"), false).value(), g2 = gamma_norm(a, E("1")).value();
    worst_gamma = std::max(worst_gamma, g1 / g2);
    worst_boch = std::max(worst_boch, bochkarev_norm(a, E("4")) / theta_norm(a, E("4")).value());
    double r = dyadic_block_norms(a, E("4")).value() / theta_norm(a, E("4")).value();
    worst_block = std::max({worst_block, r, 1 / r});
  }
  // a^* <= a^{**} pointwise, so the a^* variant never exceeds the a^{**} one
  EXPECT_LE(worst_gamma, 1.0 + 1e-12);
  EXPECT_LE(worst_boch, verify::band::bochkarev_over_theta);
  EXPECT_LE(worst_block, verify::band::block_ratio);
}

TEST(OptimalY, QuadraticIndicator) {
  auto r = optimal_Y_norm(StepFunction::indicator(1.0), WeightSpec::indicator(1, Role::U), E("2"));
  EXPECT_NEAR(r.value(), 1.0, 1e-12);
}

TEST(OptimalY, LinearIndicatorAgainstOracle) {
  auto r = optimal_Y_norm(StepFunction::indicator(1.0), WeightSpec::indicator(1, Role::U), E("1"));
  EXPECT_NEAR(r.value(), 0.5, 1e-6);
}

TEST(OptimalY, ZeroFunction) {
  EXPECT_DOUBLE_EQ(optimal_Y_norm(StepFunction::constant(0.0), WeightSpec::indicator(1, Role::U), E("1")).value(), 0.0);
}

TEST(OptimalY, InfiniteXi) {
  EXPECT_TRUE(optimal_Y_norm(StepFunction::indicator(1.0), WeightSpec::power(0, Role::U), E("1")).is_infinite());
}

TEST(Morrey, LinearCutoffAgainstOracle) {
  auto r = morrey_optimal_norm(StepFunction::indicator(1.0), E("1"), StepFunction::indicator(2.0));
  EXPECT_NEAR(r.value(), 1.27855639222072461, 1e-6 * 1.28);
  EXPECT_DOUBLE_EQ(morrey_optimal_norm(StepFunction::constant(0.0), E("1"), StepFunction::indicator(2.0)).value(), 0.0);
}

// phi = R^{-lambda} with lambda < 1/q and f^* = t^{-1/s'}: finite, as for the weak-type Lorentz bound
TEST(Morrey, PowerCutoffFinite) {
  auto f = StepFunction::from_values({0.0, 1.0}, {1.0, 0.0}, TailSpec::zero(), LeadSpec::power(Rational(1, 3)));
  auto r = morrey_optimal_norm(f, E("2"), StepFunction::power(1.0, Rational(1, 4)));
  EXPECT_TRUE(r.is_finite());
}

TEST(ExpL, IndicatorPair) {
  auto [lhs, rhs] = expL_pair(StepFunction::indicator(1.0));
  EXPECT_NEAR(rhs.value(), 1.0, 1e-12);
  EXPECT_TRUE(lhs.is_finite());
  auto [z1, z2] = expL_pair(StepFunction::constant(0.0));
  EXPECT_DOUBLE_EQ(z1.value(), 0.0);
  EXPECT_DOUBLE_EQ(z2.value(), 0.0);
}

TEST(ExpL, ReciprocalProfileFinite) {
  // min(1, 1/t): int_0^R = 1 + log R past 1, so the ratio stays at 1
  auto F = StepFunction::from_values({0.0, 1.0}, {1.0, 1.0}, TailSpec::power(1));
  auto [lhs, rhs] = expL_pair(F);
  ASSERT_TRUE(rhs.is_finite());
  EXPECT_NEAR(rhs.value(), 1.0, 1e-9);
}

TEST(Lorentz, IndicatorNormalization) {
  EXPECT_NEAR(lorentz_norm(StepFunction::indicator(1.0), E("2"), E("4")).value(), 1.0, 1e-12);
  EXPECT_NEAR(lorentz_norm(StepFunction::indicator(1.0), E("2"), E("inf")).value(), 1.0, 1e-12);
}
