#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "wfi/calderon.hpp"
#include "wfi/parallel.hpp"
#include "wfi/verify.hpp"

using namespace wfi;

namespace {

// int_0^x (F^*)^2 for a step function on unit-free cells, by sorting cell values.
double psi_by_sorting(const std::vector<double>& br, const std::vector<double>& vals, double x) {
  std::vector<std::pair<double, double>> cells;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) cells.emplace_back(vals[i], br[i + 1] - br[i]);
  std::sort(cells.begin(), cells.end(), std::greater<>());
  double t = 0, s = 0;
  for (auto [v, len] : cells) {
    double take = std::min(len, x - t);
    if (take <= 0) break;
    s += v * v * take;
    t += take;
  }
  return s;
}

SampledSignal box() {
  return SampledSignal::from_function(4096, 32, [](double x) {
    double a = std::abs(x);
    return a < 0.5 ? 1.0 : (a == 0.5 ? 0.5 : 0.0);
  });
}

SampledSignal gaussian() {
  return SampledSignal::from_function(4096, 32, [](double x) { return std::exp(-M_PI * x * x); });
}

}  // namespace

TEST(Psi, Indicator) {
  auto r = psi(StepFunction::indicator(1.0), 2.0);
  EXPECT_DOUBLE_EQ(r.value(), 1.0);
}

TEST(Psi, QuarterPower) {
  EXPECT_NEAR(psi(StepFunction::power(1.0, Rational(1, 4)), 1.0).value(), 2.0, 1e-12);
}

TEST(Psi, RandomCellsAgainstSorting) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.1, 2.0);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> br{0.0}, vals;
    for (int i = 0; i < 6; ++i) {
      br.push_back(br.back() + U(rng));
      vals.push_back(U(rng));
    }
    vals.push_back(0.0);
    auto F = StepFunction::from_values(br, vals);
    EXPECT_NEAR(psi(F, 3.0).value(), psi_by_sorting(br, vals, 3.0), 1e-9);
  }
}

TEST(Phi, IndicatorValues) {
  auto G = StepFunction::indicator(1.0);
  EXPECT_DOUBLE_EQ(phi(G, 1.0).value(), 1.0);
  EXPECT_NEAR(phi(G, 2.0).value(), 1.5, 1e-12);
  EXPECT_DOUBLE_EQ(phi(StepFunction::constant(0.0), 3.0).value(), 0.0);
}

TEST(Dominates, SelfIsDominated) {
  auto G = StepFunction::indicator(1.0);
  auto c = dominates(G, G);
  EXPECT_TRUE(c.dominated);
  EXPECT_NEAR(c.bestK.value(), 1.0, 1e-12);
}

TEST(Dominates, Homogeneous) {
  auto G = StepFunction::indicator(1.0);
  auto c = dominates(scale(G, 2.0), G);
  EXPECT_FALSE(c.dominated);
  EXPECT_NEAR(c.bestK.value(), 2.0, 1e-12);
}

TEST(Dominates, ZeroIsDominated) {
  auto c = dominates(StepFunction::constant(0.0), StepFunction::indicator(1.0));
  EXPECT_TRUE(c.dominated);
  EXPECT_DOUBLE_EQ(c.bestK.value(), 0.0);
}

TEST(Dft, BoxAndSinc) {
  auto h = dft(box());
  EXPECT_NEAR(h.samples[2048].real(), 1.0, 1e-12);
  EXPECT_NEAR(h.samples[2048 + 16].real(), 2.0 / M_PI, 1e-4);
}

TEST(Dft, GaussianFixedPoint) {
  auto g = gaussian();
  auto h = dft(g);
  double err = 0;
  for (std::size_t m = 0; m < 4096; ++m)
    err = std::max(err, std::abs(h.samples[m] - std::exp(-M_PI * std::pow((m - 2048.0) / 32, 2))));
  EXPECT_LT(err, 1e-6);
  auto back = idft(h);
  for (std::size_t k = 0; k < 4096; k += 97) EXPECT_NEAR(std::abs(back.samples[k] - g.samples[k]), 0.0, 1e-12);
}

TEST(Dft, Parseval) {
  auto rng = task_rng(7, 0);
  for (int i = 0; i < 20; ++i) {
    auto f = random_bandlimited(rng);
    EXPECT_NEAR(l2_norm(dft(f)) / l2_norm(f), 1.0, 1e-6);
    EXPECT_LE(sup_norm(dft(f)), l1_norm(f) * (1 + 1e-12));
  }
}

TEST(JointType, BoxAndGaussian) {
  double kb = verify_joint_type({box()}).bestK;
  double kg = verify_joint_type({gaussian()}).bestK;
  EXPECT_TRUE(std::isfinite(kb));
  EXPECT_LE(kg, kb * (1 + 1e-9));
}

TEST(JointType, RandomSignalsRegression) {
  auto rep = verify_joint_type(verify::detail::signals(7, 100));
  EXPECT_EQ(rep.per_signal.size(), 100u);
  EXPECT_GT(rep.bestK, 0.9);
  EXPECT_LE(rep.bestK, verify::band::calderon_K);
}
