#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "wfi/extremal.hpp"
#include "wfi/parallel.hpp"

using namespace wfi;

namespace {

WeightSpec U(const std::string& s) { return WeightSpec::parse(s, Role::U); }
WeightSpec V(const std::string& s) { return WeightSpec::parse(s, Role::V); }
ExponentConfig cfg(const std::string& p, const std::string& q, int d = 1) { return ExponentConfig::parse(p, q, d); }

// 1 on [0,1], t afterwards
WeightSpec v_unit_then_linear() {
  std::istringstream in("t,value\n0,1\n1,1\ntail,power,-1\n");
  return WeightSpec::table(parse_step_csv(in), Role::V);
}

SampledSignal gaussian() {
  return SampledSignal::from_function(4096, 64, [](double x) { return std::exp(-M_PI * x * x); });
}

}  // namespace

TEST(Ratio, PlancherelIsOne) {
  EXPECT_NEAR(ratio(gaussian(), U("pow(0)"), V("pow(0)"), cfg("2", "2")), 1.0, 1e-6);
  auto rng = task_rng(7, 0);
  for (int i = 0; i < 5; ++i)
    EXPECT_NEAR(ratio(random_bandlimited(rng), U("pow(0)"), V("pow(0)"), cfg("2", "2")), 1.0, 1e-6);
}

TEST(Ratio, ScaleInvariant) {
  auto f = gaussian();
  auto g = f;
  for (auto& z : g.samples) z *= cplx(0.0, 3.0);
  auto c = cfg("4", "3/2");
  EXPECT_NEAR(ratio(g, U("ind(1)"), V("pow(0)"), c), ratio(f, U("ind(1)"), V("pow(0)"), c), 1e-12);
}

TEST(Ratio, RejectsHigherDimension) {
  EXPECT_THROW(ratio(gaussian(), U("pow(0)"), V("pow(0)"), cfg("2", "2", 2)), std::domain_error);
}

TEST(Translates, ConstantWeightsRegression) {
  // u = v = 1, p = 4, q = 2: ||f||_2 / ||f||_4 for four blocks of width 1/4 is 1; measured 0.9995
  double b = lower_bound_translates(U("pow(0)"), V("pow(0)"), cfg("4", "2"));
  EXPECT_GE(b, 0.5);
  EXPECT_LE(b, 1.0 + 1e-3);
  EXPECT_EQ(b, lower_bound_translates(U("pow(0)"), V("pow(0)"), cfg("4", "2")));
  EXPECT_THROW(lower_bound_translates(U("pow(0)"), V("pow(0)"), cfg("2", "2")), std::invalid_argument);
}

TEST(Annuli, PositiveForConstantV) {
  double b = lower_bound_annuli(U("ind(1)"), V("pow(0)"), cfg("4", "1"), 16.0, 8);
  EXPECT_GT(b, 0.0);
  EXPECT_TRUE(std::isfinite(b));
  EXPECT_THROW(lower_bound_annuli(U("ind(1)"), V("pow(0)"), cfg("2", "4")), std::invalid_argument);
}

TEST(Annuli, Decreasing) {
  auto a = dyadic_annuli(v_unit_then_linear(), cfg("4", "1"), 16.0, 6);
  ASSERT_GE(a.alpha.size(), 2u);
  EXPECT_DOUBLE_EQ(a.alpha.front(), 16.0);
  for (std::size_t i = 1; i < a.alpha.size(); ++i) EXPECT_LT(a.alpha[i], a.alpha[i - 1]);
}

TEST(Degenerate, PhaseMatchedReachesTarget) {
  // q = inf, u = 1_[0,1], 1/v in L^2(R) with norm 2
  auto u = U("ind(1)");
  auto v = v_unit_then_linear();
  auto c = cfg("2", "inf");
  auto T = degenerate_target(u, v, c);
  ASSERT_TRUE(T.is_finite());
  EXPECT_NEAR(T.value(), 2.0, 1e-9);
  double w = degenerate_witness(u, v, c);
  EXPECT_GE(w, 0.9 * T.value());
  EXPECT_LE(w, T.value() * (1 + 1e-6));
}

TEST(Degenerate, PointMassAtPOne) {
  auto c = cfg("1", "2");
  auto T = degenerate_target(U("ind(1)"), V("pow(0)"), c);
  ASSERT_TRUE(T.is_finite());
  double w = degenerate_witness(U("ind(1)"), V("pow(0)"), c);
  EXPECT_GE(w, 0.9 * T.value());
}

TEST(Degenerate, InfiniteTarget) {
  EXPECT_TRUE(degenerate_target(U("ind(1)"), V("pow(0)"), cfg("2", "inf")).is_infinite());
}

TEST(BlockL2, ConstantVDiverges) {
  EXPECT_TRUE(block_l2_condition(U("ind(1)"), V("pow(0)"), cfg("4", "2"), 0.5).is_infinite());
}

TEST(BlockL2, DecayingDualDensityFinite) {
  auto r = block_l2_condition(U("ind(1)"), v_unit_then_linear(), cfg("4", "2"), 0.5);
  EXPECT_TRUE(r.is_finite());
  EXPECT_GT(r.value(), 0.0);
}

TEST(BlockL2, ZeroAndDomain) {
  auto zero = WeightSpec::table(StepFunction::constant(0.0), Role::U);
  EXPECT_DOUBLE_EQ(block_l2_condition(zero, V("pow(0)"), cfg("4", "2"), 0.5).value(), 0.0);
  EXPECT_THROW(block_l2_condition(U("ind(1)"), V("pow(0)"), cfg("2", "2"), 0.5), std::invalid_argument);
  EXPECT_THROW(block_l2_condition(U("ind(1)"), V("pow(0)"), cfg("4", "2"), 0.0), std::invalid_argument);
}

TEST(Bracket, Plancherel) {
  auto br = bracket_constant(U("pow(0)"), V("pow(0)"), cfg("2", "2"), {1024, 32.0, 7, 8});
  ASSERT_TRUE(br.upper.is_finite());
  EXPECT_NEAR(br.upper.value(), 1.0, 1e-12);
  EXPECT_GE(br.lower, 1.0 - 1e-6);
  EXPECT_LE(br.lower, 1.0 + 1e-6);
  EXPECT_EQ(br.by_resolution.size(), 2u);
  EXPECT_FALSE(br.witnesses.empty());
}

TEST(Bracket, HigherDimensionThrows) {
  EXPECT_THROW(bracket_constant(U("pow(0)"), V("pow(0)"), cfg("2", "2", 2)), std::domain_error);
}
