#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "wfi/criteria.hpp"

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

}  // namespace

TEST(ExponentConfig, DerivedExponents) {
  auto c = cfg("4", "4/3");
  EXPECT_EQ(c.p_prime().value(), Rational(4, 3));
  EXPECT_EQ(c.q_prime().value(), Rational(4));
  EXPECT_EQ(c.r().value(), Rational(2));
  EXPECT_EQ(c.p_sharp().value(), Rational(4));
  EXPECT_EQ(c.q_sharp().value(), Rational(4));
  EXPECT_TRUE(cfg("2", "2").q_sharp().is_infinite());
}

TEST(ExponentConfig, RUndefinedUnlessQBelowP) {
  auto c = cfg("2", "3");
  EXPECT_FALSE(c.has_r());
  EXPECT_THROW(c.r(), std::domain_error);
  EXPECT_THROW(cfg("1/2", "2"), std::invalid_argument);
  EXPECT_THROW(cfg("2", "1/2").q_prime(), std::domain_error);
}

TEST(Classify, Regimes) {
  EXPECT_EQ(classify(cfg("4/3", "2")), Regime::I);
  EXPECT_EQ(classify(cfg("4", "2")), Regime::II);
  EXPECT_EQ(classify(cfg("3/2", "1")), Regime::II);
  EXPECT_EQ(classify(cfg("4", "1")), Regime::III);
  EXPECT_EQ(classify(cfg("4", "1/2")), Regime::III);
  EXPECT_EQ(classify(cfg("inf", "1")), Regime::IV);
  EXPECT_EQ(classify(cfg("3/2", "1/2")), Regime::V);
  EXPECT_EQ(classify(cfg("2", "inf")), Regime::DegenerateQInf);
  EXPECT_EQ(classify(cfg("1", "2")), Regime::DegenerateP1);
}

TEST(UFunc, IndicatorIsMin) {
  auto f = U_func(U("ind(1)"), Exponent::finite(2));
  for (double t : {0.25, 0.5, 1.0, 3.0}) EXPECT_NEAR(f(t), std::min(t, 1.0), 1e-12);
}

TEST(UFunc, QuarterPower) {
  auto f = U_func(U("pow(1/4)"), Exponent::finite(2));
  for (double t : {1e-4, 0.5, 4.0}) EXPECT_NEAR(f(t), 2 * std::sqrt(t), 1e-12 * std::sqrt(t));
}

TEST(XiFunc, IndicatorClosedForm) {
  auto xi = xi_func(U("ind(1)"), Exponent::finite(1));
  for (double t : {0.01, 0.3, 0.7, 1.0, 2.0}) {
    double want = std::min(t, 1.0) + std::sqrt(t) * std::sqrt(std::max(1.0 - t, 0.0));
    EXPECT_NEAR(xi(t), want, 1e-10);
  }
}

TEST(XiFunc, NonDecayingTailIsInfinite) {
  EXPECT_TRUE(xi_func(U("pow(0)"), Exponent::finite(1)).is_infinite());
}

// For u* = t^{-b}, xi/U is the constant 1 + (1 - bq)(b q# - 1)^{-q/q#}.
TEST(XiFunc, PowerRatioMatchesClosedForm) {
  std::vector<std::pair<std::string, std::string>> cases = {{"3/4", "1"}, {"5/8", "1"},   {"1", "3/4"},
                                                            {"2/3", "4/3"}, {"3/4", "5/4"}, {"13/10", "2/3"}};
  for (auto [b, q] : cases) {
    double bd = Rational::parse(b).to_double(), qd = Rational::parse(q).to_double();
    double qs = 1 / (1 / qd - 0.5);
    double want = 1 + (1 - bd * qd) * std::pow(bd * qs - 1, -qd / qs);
    auto [up, down] = xi_U_bounds(U("pow(" + b + ")"), Exponent::parse(q));
    ASSERT_TRUE(up.is_finite()) << b << " " << q;
    EXPECT_NEAR(up.value(), want, 1e-9 * want);
    EXPECT_NEAR(down.value(), 1 / want, 1e-9);
  }
}

TEST(C3, Plancherel) {
  auto r = evaluate(U("pow(0)"), V("pow(0)"), cfg("2", "2"));
  ASSERT_TRUE(r.constants.at("C3").is_finite());
  EXPECT_DOUBLE_EQ(r.constants.at("C3").value(), 1.0);
  EXPECT_TRUE(r.holds);
}

TEST(C3, OffBalanceIsInfinite) {
  // p = q = 2 balances at u = v = 1; tilting u by 0.1 breaks scaling
  auto r = evaluate(U("pow(1/10)"), V("pow(0)"), cfg("2", "2"));
  EXPECT_TRUE(r.constants.at("C3").is_infinite());
  EXPECT_FALSE(r.holds);
}

TEST(C3, PittExample) {
  auto r = evaluate(U("pow(1/4)@d=1"), V("pow(0)"), cfg("4/3", "2"));
  EXPECT_EQ(r.regime, Regime::I);
  ASSERT_TRUE(r.constants.at("C3").is_finite());
  // (int_0^s t^{-1/2})^{1/2} (int_0^{1/s} 1)^{1/4} = sqrt(2)
  EXPECT_NEAR(r.constants.at("C3").value(), std::sqrt(2.0), 1e-12);
}

TEST(C4, ZeroWeight) {
  auto w = rearranged(U("ind(1)"), V("pow(0)"), 1);
  w.ustar = StepFunction::constant(0.0);
  auto c = C4(w, cfg("4", "2"));
  ASSERT_TRUE(c.is_finite());
  EXPECT_DOUBLE_EQ(c.value(), 0.0);
}

// r = 1 and the v factor is (int_0^{1/s} 1)^1 = 1/s, so the integrand is 1/s on (0,1).
TEST(C4, IndicatorAtPInfinityDivergesAtZero) {
  auto c = C4(rearranged(U("ind(1)"), V("pow(0)"), 1), cfg("inf", "1"));
  EXPECT_TRUE(c.is_infinite());
}

// p = 3/2, q = 1 (r = 3), v = 1, u = 1 on [0,1] then t^{-2}:
// int_0^1 s ds + int_1^inf s^{-3} (2 - 1/s)^2 ds = 1/2 + 11/12
TEST(C4, DecayingTailClosedForm) {
  std::istringstream in("t,value\n0,1\n1,1\ntail,power,2\n");
  auto u = WeightSpec::table(parse_step_csv(in), Role::U);
  auto r = evaluate(u, V("pow(0)"), cfg("3/2", "1"));
  EXPECT_EQ(r.regime, Regime::II);
  ASSERT_TRUE(r.constants.at("C4").is_finite());
  EXPECT_NEAR(r.constants.at("C4").value(), std::cbrt(17.0 / 12.0), 1e-9);
}

// Frozen against tests/oracles/c6_indicator.py
TEST(RegimeIII, IndicatorAgainstQuadratureOracle) {
  auto r = evaluate(U("ind(1)"), v_unit_then_linear(), cfg("4", "1"));
  EXPECT_EQ(r.regime, Regime::III);
  ASSERT_TRUE(r.holds);
  EXPECT_NEAR(r.constants.at("C4").value(), 1.14653135064524017, 1e-6 * 1.1465);
  EXPECT_NEAR(r.constants.at("C6").value(), 0.500113250943747695, 1e-6 * 0.5);
  EXPECT_NEAR(r.constants.at("C5").value(), 1.14653135064524017 + 0.500113250943747695, 1e-6 * 1.65);
  EXPECT_DOUBLE_EQ(r.constants.at("TailUqsharp").value(), 0.0);
}

TEST(RegimeIII, NonDecayingTailFails) {
  auto r = evaluate(U("pow(0)"), V("pow(0)"), cfg("4", "1"));
  EXPECT_TRUE(r.constants.at("TailUqsharp").is_infinite());
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.verdict, Finiteness::Infinite);
}

// v = 1, p = 8, q = 3/2: the C4 integrand behaves like s^{-18/13} at 0
TEST(RegimeIII, InfiniteC4MakesC5Infinite) {
  auto r = evaluate(U("ind(1)"), V("pow(0)"), cfg("8", "3/2"));
  EXPECT_EQ(r.regime, Regime::III);
  ASSERT_TRUE(r.constants.at("C4").is_infinite());
  EXPECT_TRUE(r.constants.at("C5").is_infinite());
  EXPECT_FALSE(r.holds);
}

TEST(RegimeIV, C7DivergesForConstantV) {
  auto r = evaluate(U("ind(1)"), V("pow(0)"), cfg("inf", "1"));
  EXPECT_EQ(r.regime, Regime::IV);
  EXPECT_TRUE(r.constants.at("C7").is_infinite());
}

TEST(Degenerate, QInfinityP1) {
  auto r = evaluate(U("ind(1)"), V("pow(0)"), cfg("1", "inf"));
  EXPECT_EQ(r.regime, Regime::DegenerateQInf);
  EXPECT_DOUBLE_EQ(r.constants.at("degenerate").value(), 1.0);
}

TEST(Degenerate, GrowingPowerUnbounded) {
  EXPECT_TRUE(evaluate(U("pow(1/2)"), V("pow(0)"), cfg("2", "inf")).constants.at("degenerate").is_infinite());
  EXPECT_TRUE(evaluate(U("pow(0)"), V("pow(0)"), cfg("1", "inf")).holds);
}

TEST(Degenerate, PEqualsOneWithIndicatorReciprocal) {
  // 1/v = ind(1): v is 1 on [0,1] and infinite beyond
  auto r = evaluate(U("ind(1)"), U("ind(1)").reciprocal(), cfg("1", "2"));
  EXPECT_EQ(r.regime, Regime::DegenerateP1);
  EXPECT_NEAR(r.constants.at("degenerate").value(), 1.0, 1e-12);
}

TEST(Duality, PlancherelSelfDual) {
  auto d = dual_config(U("pow(0)"), V("pow(0)"), cfg("2", "2"));
  EXPECT_EQ(d.cfg.p.value(), Rational(2));
  EXPECT_EQ(d.cfg.q.value(), Rational(2));
  EXPECT_DOUBLE_EQ(d.u.rearranged()(5.0), 1.0);
  EXPECT_DOUBLE_EQ(d.v.rearranged()(5.0), 1.0);
}

TEST(Duality, PowersSwapAndInvert) {
  auto u = U("pow(1/4)"), v = V("pow(1/8)");
  auto d = dual_config(u, v, cfg("4", "2"));
  EXPECT_EQ(d.cfg.p.value(), Rational(2));
  EXPECT_EQ(d.cfg.q.value(), Rational(4, 3));
  // new u = 1/v = t^{-1/8}, new v = 1/u = t^{1/4}
  EXPECT_NEAR(d.u.rearranged()(16.0), std::pow(16.0, -0.125), 1e-14);
  EXPECT_NEAR(d.v.rearranged()(16.0), std::pow(16.0, 0.25), 1e-14);
}

TEST(Duality, FinitenessPreservedOnPowers) {
  for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{{"1/4", "0"}, {"0", "0"}, {"1/2", "1/8"}}) {
    auto u = U("pow(" + a + ")"), v = V("pow(" + b + ")");
    auto c = cfg("4/3", "2");
    auto d = dual_config(u, v, c);
    EXPECT_EQ(evaluate(u, v, c).verdict, evaluate(d.u, d.v, d.cfg).verdict) << a << " " << b;
  }
}

TEST(Cube, Plancherel) {
  auto c = cube_pair_condition(U("pow(0)"), V("pow(0)"), cfg("2", "2"));
  ASSERT_TRUE(c.is_finite());
  EXPECT_NEAR(c.value(), 1.0, 1e-12);
}

TEST(Cube, OffBalanceInfinite) {
  EXPECT_TRUE(cube_pair_condition(U("pow(1/10)"), V("pow(0)"), cfg("2", "2")).is_infinite());
}

TEST(Evaluate, DimensionMismatchRejected) {
  EXPECT_THROW(evaluate(U("pow(0)@d=2"), V("pow(0)"), cfg("2", "2", 3)), std::invalid_argument);
}

// Pitt classification on a small slice of the acceptance grid.
TEST(PittProperty, PowerWeightsClassifiedSymbolically) {
  for (int k = 0; k < 20; k += 3)
    for (auto [ps, qs] : std::vector<std::pair<std::string, std::string>>{{"3/2", "2"}, {"2", "3"}, {"4/3", "4"}}) {
      Rational alpha = Rational(k, 16) - Rational(1, 8);
      auto c = cfg(ps, qs);
      Rational lam = c.p.inv() + c.q.inv() + alpha - Rational(1);
      bool want = alpha >= Rational(0) && alpha < c.p_prime().inv() && lam >= Rational(0) && lam < c.q.inv();
      auto r = evaluate(WeightSpec::power(lam, Role::U), WeightSpec::power(alpha, Role::V), c);
      EXPECT_EQ(r.holds, want) << "alpha=" << alpha.str() << " p=" << ps << " q=" << qs;
    }
}
