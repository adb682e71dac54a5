#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "wfi/quadrature.hpp"
#include "wfi/rearrange.hpp"
#include "wfi/step_function.hpp"
#include "wfi/weight.hpp"

using namespace wfi;

namespace {

StepFunction ramp_on_unit() {
  // t on [0,1], zero afterwards
  return StepFunction({0.0, 1.0}, {Piece::power(1.0, Rational(-1)), Piece::constant(0.0)});
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(Rational::parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("0.25"), Rational(1, 4));
  EXPECT_EQ(Rational::parse("-1.5e-2"), Rational(-3, 200));
  EXPECT_EQ(Rational::parse(" 6/8 ").str(), "3/4");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
}

TEST(Exponent, ConjugatesAndInfinity) {
  auto p = Exponent::parse("4/3");
  EXPECT_EQ(p.conjugate().value(), Rational(4));
  EXPECT_TRUE(Exponent::parse("1").conjugate().is_infinite());
  EXPECT_EQ(Exponent::parse("inf").conjugate().value(), Rational(1));
  EXPECT_EQ(Exponent::infinity().str(), "inf");
}

TEST(ExtReal, ArithmeticPropagatesStates) {
  auto one = ExtReal::finite(1.0);
  auto inf = ExtReal::infinite("tail");
  auto ind = ExtReal::indeterminate("unknown");
  EXPECT_TRUE((one + inf).is_infinite());
  EXPECT_TRUE((one + ind).is_indeterminate());
  EXPECT_TRUE((ExtReal::zero() * inf).is_finite());
  EXPECT_DOUBLE_EQ((ExtReal::finite(2.0) * ExtReal::finite(3.0)).value(), 6.0);
  EXPECT_DOUBLE_EQ(pow(ExtReal::finite(4.0), 0.5).value(), 2.0);
  EXPECT_EQ(std::string(to_string(inf.state())), "infinite");
}

TEST(Integrate, UnitMass) {
  auto f = StepFunction::indicator(1.0);
  auto r = integrate(f, 0.0, INFINITY);
  ASSERT_TRUE(r.is_finite());
  EXPECT_DOUBLE_EQ(r.value(), 1.0);
}

TEST(Integrate, PowerTailFromOne) {
  auto f = StepFunction::from_values({0.0, 1.0}, {0.0, 1.0}, TailSpec::power(2));
  auto r = integrate(f, 1.0, INFINITY);
  ASSERT_TRUE(r.is_finite());
  EXPECT_NEAR(r.value(), 1.0, 1e-12);
}

TEST(Integrate, HarmonicTailDiverges) {
  auto f = StepFunction::from_values({0.0, 1.0}, {0.0, 1.0}, TailSpec::power(1));
  auto r = integrate(f, 1.0, INFINITY);
  EXPECT_TRUE(r.is_infinite());
  EXPECT_FALSE(r.reason().empty());
}

TEST(Integrate, AdditiveOverRandomSplits) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.1, 3.0);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> br{0.0}, vals;
    for (int i = 0; i < 5; ++i) {
      br.push_back(br.back() + U(rng));
      vals.push_back(U(rng));
    }
    vals.push_back(U(rng));
    auto f = StepFunction::from_values(br, vals, TailSpec::power(Rational(3, 2)));
    double x = U(rng) * 4;
    auto whole = integrate(f, 0.0, INFINITY), left = integrate(f, 0.0, x), right = integrate(f, x, INFINITY);
    ASSERT_TRUE(whole.is_finite());
    EXPECT_NEAR(left.value() + right.value(), whole.value(), 1e-9 * whole.value());
  }
}

TEST(PowCompose, SquaresConstant) {
  auto f = StepFunction::indicator(1.0, 2.0);
  auto g = pow_compose(f, Rational(2));
  EXPECT_DOUBLE_EQ(g(0.5), 4.0);
  EXPECT_DOUBLE_EQ(g(1.5), 0.0);
}

TEST(PowCompose, TailExponentDoubles) {
  auto f = StepFunction::from_values({0.0, 1.0}, {1.0, 1.0}, TailSpec::power(Rational(1, 2)));
  auto g = pow_compose(f, Rational(2));
  EXPECT_EQ(g.pieces().back().decay, Rational(1));
  EXPECT_NEAR(g(4.0), 0.25, 1e-15);
}

TEST(PowCompose, ReciprocalOfZeroRejected) {
  EXPECT_THROW(pow_compose(StepFunction::indicator(1.0), Rational(-1)), std::exception);
}

TEST(SupOver, RampTimesOne) {
  auto r = sup_over(ramp_on_unit(), StepFunction::constant(1.0));
  ASSERT_TRUE(r.is_finite());
  EXPECT_NEAR(r.value(), 1.0, 1e-12);
}

TEST(SupOver, CancellingExponentsStayFinite) {
  auto f = StepFunction::from_values({0.0, 1.0}, {1.0, 1.0}, TailSpec::power(Rational(-1, 2)));
  auto g = StepFunction::from_values({0.0, 1.0}, {1.0, 1.0}, TailSpec::power(Rational(1, 2)));
  auto r = sup_over(f, g);
  ASSERT_TRUE(r.is_finite());
  EXPECT_NEAR(r.value(), 1.0, 1e-12);
}

TEST(SupOver, NetGrowthIsInfinite) {
  auto f = StepFunction::from_values({0.0, 1.0}, {1.0, 1.0}, TailSpec::power(Rational(-1)));
  auto g = StepFunction::from_values({0.0, 1.0}, {1.0, 1.0}, TailSpec::power(Rational(1, 2)));
  EXPECT_TRUE(sup_over(f, g).is_infinite());
}

TEST(StepCsv, ParsesTailAndLead) {
  std::istringstream in("t,value\n0,4\n1,2\n2,1\nlead,power,1/2\ntail,power,2\n");
  auto f = parse_step_csv(in);
  EXPECT_NEAR(f(0.25), 8.0, 1e-12);
  EXPECT_DOUBLE_EQ(f(1.5), 2.0);
  EXPECT_NEAR(f(4.0), 0.25, 1e-12);
}

TEST(StepCsv, RejectsNegativeValues) {
  std::istringstream in("t,value\n0,-1\ntail,zero\n");
  EXPECT_THROW(parse_step_csv(in), std::invalid_argument);
}

TEST(Weight, PowerRearrangesBySubstitution) {
  auto u = WeightSpec::power(Rational(1, 2), Role::U, 2).rearranged();
  EXPECT_NEAR(u(16.0), std::pow(16.0, -0.25), 1e-14);
  auto v = WeightSpec::power(Rational(3, 2), Role::V, 3).rearranged();
  EXPECT_NEAR(v(8.0), std::pow(8.0, 0.5), 1e-13);
}

TEST(Weight, IndicatorBallMeasure) {
  auto u = WeightSpec::indicator(2.0, Role::U, 3).rearranged();
  EXPECT_DOUBLE_EQ(u(7.9), 1.0);
  EXPECT_DOUBLE_EQ(u(8.1), 0.0);
}

TEST(Weight, TableInTwoDimensions) {
  auto prof = StepFunction::from_values({0.0, 1.0, 2.0}, {2.0, 1.0, 0.0});
  auto u = WeightSpec::table(prof, Role::U, 2).rearranged();
  EXPECT_DOUBLE_EQ(u(0.5), 2.0);
  EXPECT_DOUBLE_EQ(u(3.9), 1.0);
  EXPECT_DOUBLE_EQ(u(4.1), 0.0);
}

TEST(Weight, LowerRearrangementOfV) {
  EXPECT_DOUBLE_EQ(WeightSpec::parse("pow(0)", Role::V).rearranged()(3.0), 1.0);
  auto prof = StepFunction::from_values({0.0, 1.0}, {1.0, 4.0}, TailSpec::power(0));
  auto v = WeightSpec::table(prof, Role::V).rearranged();
  EXPECT_DOUBLE_EQ(v(0.5), 1.0);
  EXPECT_DOUBLE_EQ(v(2.0), 4.0);
}

TEST(Weight, DslParsing) {
  auto w = WeightSpec::parse("powlog(1,2)@d=2", Role::U);
  EXPECT_EQ(w.family(), WeightSpec::Family::PowerLog);
  EXPECT_EQ(w.dim(), 2);
  EXPECT_EQ(w.str(), "powlog(1,2)@d=2");
  EXPECT_THROW(WeightSpec::parse("gauss(1)", Role::U), std::invalid_argument);
  EXPECT_THROW(WeightSpec::parse("pow(1)@d=0", Role::U), std::invalid_argument);
  auto bad = StepFunction::from_values({0.0, 1.0}, {1.0, 2.0}, TailSpec::power(0));
  EXPECT_THROW(WeightSpec::table(bad, Role::U), std::invalid_argument);
}

// Integrable singularity sitting exactly on the lower endpoint of [a, inf).
// f only sees t = a + s, so (t-1)^{-1/2} is resolved down to about sqrt(ulp(1)).
TEST(Quadrature, InfiniteSegmentWithEndpointSingularity) {
  auto f = [](double t) { return t == 1.0 ? INFINITY : std::exp(1.0 - t) / std::sqrt(t - 1.0); };
  EXPECT_NEAR(quad::infinite_segment(f, 1.0), std::sqrt(M_PI), 5e-8);
}

TEST(Quadrature, FiniteSegmentLogScale) {
  auto f = [](double t) { return 1.0 / t; };
  EXPECT_NEAR(quad::finite_segment(f, 1e-6, 1e6), std::log(1e12), 1e-8);
}
