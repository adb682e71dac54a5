#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "calderon.hpp"
#include "criteria.hpp"
#include "extremal.hpp"
#include "hardy.hpp"
#include "norms.hpp"
#include "parallel.hpp"
#include "rearrange.hpp"
#include "signal.hpp"
#include "step_function.hpp"
#include "weight.hpp"

namespace wfi::verify {

// Regression bands recorded from the first certified runs.
namespace band {
inline constexpr double calderon_K = 1.01;              // measured 1.00000
inline constexpr double calderon_spread = 0.10;
inline constexpr double hardy_c = 8.0;
inline constexpr double hardy_spread = 0.10;
inline constexpr double xi_over_U = 2.0;                // measured 1.75
inline constexpr double degenerate_share = 0.9;
inline constexpr double bochkarev_over_theta = 1.25;    // measured 1.0
inline constexpr double block_ratio = 2.0;              // measured 1.62
inline constexpr double fourier_theta = 1.6;            // measured 1.30
inline constexpr double bracket_spread = 0.15;
inline constexpr double bracket_lower_over_upper = 2.5; // measured 2.06
}  // namespace band

struct SuiteResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  std::map<std::string, double> measured;
  double seconds = 0.0;
};

namespace detail {

inline double rel_gap(double a, double b, double floor = 1e-300) {
  if (a == b) return 0.0;
  if (std::isinf(a) || std::isinf(b)) return std::numeric_limits<double>::infinity();
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

inline double spread(const std::vector<double>& xs) {
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *lo > 0 ? (*hi - *lo) / *lo : (*hi == 0 ? 0.0 : std::numeric_limits<double>::infinity());
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

template <class Body>
SuiteResult timed(int id, std::string name, Body&& body) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  r.id = id;
  r.name = std::move(name);
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Step function with constant cells, optional singular lead and power tail.
inline StepFunction random_step(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> cells(1, 8), pick(0, 3);
  std::uniform_real_distribution<double> width(0.1, 2.0), value(0.0, 3.0);
  int n = cells(rng);
  std::vector<double> br{0.0}, vals;
  for (int i = 0; i < n; ++i) {
    br.push_back(br.back() + std::round(width(rng) * 64) / 64 + 1.0 / 64);
    vals.push_back(pick(rng) == 0 ? 0.0 : std::round(value(rng) * 16) / 16);
  }
  vals.push_back(vals.back());
  TailSpec tail = TailSpec::zero();
  switch (pick(rng)) {
    case 0: break;
    case 1: tail = TailSpec::power(Rational(1, 2)); break;
    case 2: tail = TailSpec::power(Rational(2)); break;
    default: tail = TailSpec::powerlog(Rational(1), Rational(2)); break;
  }
  if (vals.back() == 0.0) tail = TailSpec::zero();
  LeadSpec lead = LeadSpec::none();
  if (pick(rng) == 0 && vals.size() > 1 && vals[0] > 0) lead = LeadSpec::power(Rational(1, 2));
  return StepFunction::from_values(br, vals, tail, lead);
}

inline std::vector<SampledSignal> signals(std::uint64_t seed, std::size_t count, std::size_t N = 4096, double L = 64.0) {
  return parallel_map<SampledSignal>(count, [&](std::size_t i) {
    auto rng = task_rng(seed, i);
    return random_bandlimited(rng, N, L);
  });
}

}  // namespace detail

// 1. distribution, pairing and idempotence of the decreasing rearrangement
inline SuiteResult rearrangement_suite(std::uint64_t seed = 7, int count = 1000) {
  return detail::timed(1, "rearrangement", [&](SuiteResult& r) {
    std::mt19937_64 rng(seed);
    double worst_dist = 0, worst_idem = 0, worst_hl = 0;
    int failures = 0;
    for (int i = 0; i < count; ++i) {
      StepFunction f = detail::random_step(rng), g = detail::random_step(rng);
      StepFunction fs = star(f);
      StepFunction df = distribution(f), ds = distribution(fs);
      std::vector<double> lams;
      for (double b : f.breaks()) {
        double v = f(b);
        lams.push_back(v);
        lams.push_back(0.5 * v);
        lams.push_back(v + 0.25);
      }
      for (double lam : lams) {
        if (!(lam > 0) || std::isinf(lam)) continue;
        // measures of order one or below are compared absolutely
        worst_dist = std::max(worst_dist, detail::rel_gap(df(lam), ds(lam), 1.0));
      }
      StepFunction fss = star(fs);
      for (double t : {1e-6, 0.01, 0.3, 0.5, 1.0, 1.7, 2.5, 4.0, 7.5, 11.0, 20.0, 100.0})
        worst_idem = std::max(worst_idem, detail::rel_gap(fs(t), fss(t)));
      auto [lhs, rhs] = hl_pairing(f, g);
      if (lhs.is_infinite() && !rhs.is_infinite()) ++failures;
      if (lhs.is_finite() && rhs.is_finite()) worst_hl = std::max(worst_hl, (lhs.value() - rhs.value()) / std::max(rhs.value(), 1e-300));
    }
    r.measured = {{"distribution_gap", worst_dist}, {"idempotence_gap", worst_idem}, {"pairing_excess", worst_hl}};
    r.passed = worst_dist <= 1e-12 && worst_idem <= 1e-12 && worst_hl <= 1e-12 && failures == 0;
    r.detail = std::to_string(count) + " functions; distribution gap " + detail::fmt(worst_dist) + ", idempotence gap " +
               detail::fmt(worst_idem) + ", pairing excess " + detail::fmt(worst_hl);
  });
}

// 2. L1 -> Linf and Plancherel for the discrete transform
inline SuiteResult fourier_suite(std::uint64_t seed = 7, std::size_t count = 100) {
  return detail::timed(2, "fourier-legs", [&](SuiteResult& r) {
    double worst_l1 = -1e300, worst_l2 = 0;
    for (const auto& f : detail::signals(seed, count)) {
      SampledSignal fh = dft(f);
      worst_l1 = std::max(worst_l1, sup_norm(fh) - l1_norm(f));
      worst_l2 = std::max(worst_l2, std::abs(l2_norm(fh) / l2_norm(f) - 1));
    }
    r.measured = {{"sup_minus_l1", worst_l1}, {"plancherel_gap", worst_l2}};
    r.passed = worst_l1 <= 1e-9 && worst_l2 <= 1e-6;
    r.detail = "max(|fhat|_inf - |f|_1) = " + detail::fmt(worst_l1) + ", max |l2 ratio - 1| = " + detail::fmt(worst_l2);
  });
}

// 3. empirical joint-type constant of the transform
inline SuiteResult calderon_suite(std::size_t count = 100) {
  return detail::timed(3, "calderon", [&](SuiteResult& r) {
    std::vector<double> ks;
    for (std::uint64_t seed : {7, 11, 13}) ks.push_back(verify_joint_type(detail::signals(seed, count)).bestK);
    double sp = detail::spread(ks);
    double top = *std::max_element(ks.begin(), ks.end());
    r.measured = {{"bestK_7", ks[0]}, {"bestK_11", ks[1]}, {"bestK_13", ks[2]}, {"spread", sp}};
    r.passed = std::isfinite(top) && top <= band::calderon_K && sp <= band::calderon_spread;
    r.detail = "bestK over seeds 7/11/13 = " + detail::fmt(ks[0]) + "/" + detail::fmt(ks[1]) + "/" + detail::fmt(ks[2]) +
               " (band " + detail::fmt(band::calderon_K) + ", spread " + detail::fmt(sp) + ")";
  });
}

inline std::vector<Rational> pitt_exponents() {
  return {Rational(11, 10), Rational(6, 5), Rational(5, 4), Rational(4, 3), Rational(3, 2), Rational(8, 5), Rational(5, 3),
          Rational(7, 4), Rational(2), Rational(9, 4), Rational(5, 2), Rational(8, 3), Rational(3), Rational(7, 2),
          Rational(4), Rational(5), Rational(6), Rational(8), Rational(10), Rational(16)};
}

// 4. power weights |xi|^{-lambda}, |x|^alpha with the balance lambda = 1/p + 1/q + alpha - 1
inline SuiteResult pitt_suite() {
  return detail::timed(4, "pitt", [&](SuiteResult& r) {
    auto ex = pitt_exponents();
    std::vector<std::tuple<Rational, Rational, Rational>> grid;
    for (const auto& p : ex)
      for (const auto& q : ex)
        for (int k = 0; k < 20; ++k) grid.emplace_back(p, q, Rational(k, 16) - Rational(1, 8));
    auto wrong = parallel_map<int>(grid.size(), [&](std::size_t i) {
      auto [p, q, alpha] = grid[i];
      if (q < p) return 0;
      Rational ip = p.reciprocal(), iq = q.reciprocal();
      Rational lam = ip + iq + alpha - Rational(1);
      bool expect = alpha.sign() >= 0 && alpha < Rational(1) - ip && lam.sign() >= 0 && lam < iq;
      auto rep = evaluate(WeightSpec::power(lam, Role::U), WeightSpec::power(alpha, Role::V),
                          ExponentConfig(Exponent::finite(p), Exponent::finite(q)));
      return rep.holds == expect && rep.verdict != Finiteness::Indeterminate ? 0 : 1;
    });
    int bad = 0, tested = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::get<1>(grid[i]) < std::get<0>(grid[i])) continue;
      ++tested;
      bad += wrong[i];
    }
    r.measured = {{"configs", tested}, {"misclassified", bad}};
    r.passed = bad == 0;
    r.detail = std::to_string(tested) + " configs with p <= q, " + std::to_string(bad) + " misclassified";
  });
}

// 5. u = v = 1, p = q = 2
inline SuiteResult plancherel_suite() {
  return detail::timed(5, "plancherel", [&](SuiteResult& r) {
    auto u = WeightSpec::power(Rational(0), Role::U), v = WeightSpec::power(Rational(0), Role::V);
    auto c = ExponentConfig(Exponent::finite(2), Exponent::finite(2));
    auto rep = evaluate(u, v, c);
    ExtReal c3 = rep.constants.at("C3");
    auto br = bracket_constant(u, v, c);
    r.measured = {{"C3", c3.is_finite() ? c3.value() : -1}, {"lower", br.lower}};
    r.passed = c3.is_finite() && c3.value() == 1.0 && br.lower >= 1 - 1e-6;
    r.detail = "C3 = " + detail::fmt(r.measured["C3"]) + ", bracket lower = " + detail::fmt(br.lower);
  });
}

struct WeightPair {
  WeightSpec u, v;
  ExponentConfig cfg;
};

inline WeightSpec growing_table(double c, Rational a) {
  return WeightSpec::table(StepFunction::from_values({0.0, 1.0}, {c, c}, TailSpec::power(-a)), Role::V);
}

inline std::vector<WeightPair> degenerate_configs() {
  auto U = [](const char* s) { return WeightSpec::parse(s, Role::U); };
  auto utab = WeightSpec::table(StepFunction::from_values({0.0, 0.5, 2.0}, {3.0, 1.0, 0.5}), Role::U);
  auto cfg = [](const char* p) { return ExponentConfig::parse(p, "inf"); };
  return {{U("ind(1)"), growing_table(1, 2), cfg("2")},     {U("pow(0)"), growing_table(2, 2), cfg("3/2")},
          {utab, growing_table(1, 3), cfg("4")},             {utab, growing_table(0.5, 3), cfg("1")},
          {U("ind(1/2)"), growing_table(1, 2), cfg("6/5")},  {U("pow(0)"), growing_table(1, 2), cfg("3")},
          {utab, growing_table(1, 2), cfg("2")},             {U("ind(2)"), growing_table(3, 4), cfg("5/4")},
          {utab, growing_table(1, 3), cfg("inf")},           {U("pow(0)"), growing_table(1, 2), cfg("1")}};
}

// 6. q = inf: the phase-matched witness nearly attains |u|_inf |1/v|_{p'}
inline SuiteResult degenerate_suite() {
  return detail::timed(6, "degenerate", [&](SuiteResult& r) {
    auto cs = degenerate_configs();
    auto shares = parallel_map<double>(cs.size(), [&](std::size_t i) {
      ExtReal t = degenerate_target(cs[i].u, cs[i].v, cs[i].cfg);
      if (!t.is_finite() || t.value() == 0.0) return 0.0;
      return degenerate_witness(cs[i].u, cs[i].v, cs[i].cfg) / t.value();
    });
    double worst = *std::min_element(shares.begin(), shares.end());
    r.measured = {{"min_share", worst}};
    r.passed = worst >= band::degenerate_share;
    r.detail = std::to_string(cs.size()) + " configs, min witness/target = " + detail::fmt(worst);
  });
}

inline std::vector<WeightPair> duality_configs() {
  std::vector<WeightPair> out;
  auto E = [](const char* s) { return Exponent::parse(s); };
  // Pitt-type powers, balanced and not, across p <= q
  std::vector<std::tuple<const char*, const char*, Rational, Rational>> pw = {
      {"2", "2", 0, 0},           {"4/3", "4", 0, 0},         {"3/2", "3", Rational(1, 6), 0},
      {"2", "3", Rational(1, 3), Rational(1, 6)}, {"6/5", "2", Rational(1, 3), 0}, {"2", "4", Rational(1, 4), 0},
      {"3/2", "3/2", Rational(1, 4), Rational(1, 4)}, {"2", "6", Rational(1, 2), Rational(1, 6)},
      {"4/3", "2", Rational(1, 4), Rational(1, 2)}, {"3", "3", Rational(1, 3), Rational(1, 3)},
      {"2", "2", Rational(1, 4), 0},  {"3/2", "4", Rational(1, 2), 0}, {"4/3", "4/3", Rational(1, 2), Rational(1, 4)},
      {"2", "3", Rational(-1, 6), 0}, {"1", "2", Rational(1, 2), 0},  {"1", "4", Rational(1, 4), 0},
      {"4/3", "inf", 0, Rational(1, 4)}, {"2", "inf", 0, Rational(1, 4)}, {"1", "inf", 0, 0},
      {"1", "1", 0, 0},           {"inf", "inf", 0, 0},       {"3/2", "2", Rational(1, 6), Rational(1, 6)}};
  for (auto& [p, q, g, b] : pw)
    out.push_back({WeightSpec::power(g, Role::U), WeightSpec::power(b, Role::V), ExponentConfig(E(p), E(q))});
  // q < p with compact u and growing v
  std::vector<std::tuple<const char*, const char*>> pq = {{"4", "2"},   {"3", "2"},   {"2", "1"},     {"2", "3/2"},
                                                          {"3/2", "1"}, {"3", "3/2"}, {"4", "4/3"},   {"inf", "3/2"},
                                                          {"6", "1"},   {"inf", "2"}, {"inf", "1"},   {"5/2", "2"},
                                                          {"8", "3"},   {"3", "1"}};
  for (auto& [p, q] : pq) {
    out.push_back({WeightSpec::parse("ind(1)", Role::U), growing_table(1, 2), ExponentConfig(E(p), E(q))});
    out.push_back({WeightSpec::power(0, Role::U), WeightSpec::power(0, Role::V), ExponentConfig(E(p), E(q))});
  }
  return out;
}

// 7. finiteness is invariant under (u, v, p, q) -> (1/v, 1/u, q', p')
inline SuiteResult duality_suite() {
  return detail::timed(7, "duality", [&](SuiteResult& r) {
    auto cs = duality_configs();
    auto mism = parallel_map<int>(cs.size(), [&](std::size_t i) {
      auto a = evaluate(cs[i].u, cs[i].v, cs[i].cfg);
      auto d = dual_config(cs[i].u, cs[i].v, cs[i].cfg);
      auto b = evaluate(d.u, d.v, d.cfg);
      return a.verdict == b.verdict && a.verdict != Finiteness::Indeterminate ? 0 : 1;
    });
    int bad = 0;
    std::string first;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (mism[i]) {
        if (!bad) first = " (first: " + cs[i].u.str() + ", " + cs[i].v.str() + ", " + cs[i].cfg.str() + ")";
        ++bad;
      }
    r.measured = {{"configs", static_cast<double>(cs.size())}, {"mismatches", bad}};
    r.passed = bad == 0;
    r.detail = std::to_string(cs.size()) + " configs, " + std::to_string(bad) + " finiteness mismatches" + first;
  });
}

struct HardyBand {
  HardyKind kind;
  Rational p, q;
  std::vector<double> c;  // one per oracle seed
};

// max over problems of max(brute/K, K/refined brute)
inline double hardy_two_sided(HardyKind kind, const Exponent& p, const Exponent& q, std::uint64_t seed, int problems = 20) {
  std::mt19937_64 rng(2024);
  double c = 1.0;
  for (int i = 0; i < problems; ++i) {
    auto pr = random_problem(kind, p, q, rng);
    double K = hardy_K(pr).value();
    double coarse = brute_force_K(pr, problem_grid(pr, 3), 10, seed, 8);
    double fine = brute_force_K(pr, problem_grid(pr, 6), 10, seed, 8);
    c = std::max({c, coarse / K, K / fine});
  }
  return c;
}

inline std::vector<std::tuple<HardyKind, Rational, Rational>> hardy_cases() {
  std::vector<std::tuple<HardyKind, Rational, Rational>> out;
  for (auto k : {HardyKind::HeadSum, HardyKind::HeadIntegral, HardyKind::TailIntegral})
    for (auto [p, q] : std::vector<std::pair<Rational, Rational>>{{2, 3}, {3, 2}, {Rational(3, 2), Rational(1, 2)}})
      out.emplace_back(k, p, q);
  out.emplace_back(HardyKind::Reverse, Rational(1), Rational(1, 2));
  out.emplace_back(HardyKind::Reverse, Rational(1), Rational(1, 3));
  return out;
}

// 8. closed-form Hardy constants against brute-force maximization
inline SuiteResult hardy_suite() {
  return detail::timed(8, "hardy", [&](SuiteResult& r) {
    auto cases = hardy_cases();
    std::vector<std::uint64_t> seeds{7, 11, 13};
    auto cs = parallel_map<double>(cases.size() * seeds.size(), [&](std::size_t i) {
      auto [k, p, q] = cases[i / seeds.size()];
      return hardy_two_sided(k, Exponent::finite(p), Exponent::finite(q), seeds[i % seeds.size()]);
    });
    double worst = 0, worst_spread = 0;
    std::string where;
    for (std::size_t j = 0; j < cases.size(); ++j) {
      std::vector<double> row(cs.begin() + static_cast<long>(j * seeds.size()), cs.begin() + static_cast<long>((j + 1) * seeds.size()));
      auto [k, p, q] = cases[j];
      std::string key = std::string(to_string(k)) + "(" + p.str() + "," + q.str() + ")";
      double m = *std::max_element(row.begin(), row.end());
      r.measured[key] = m;
      if (m > worst) {
        worst = m;
        where = key;
      }
      worst_spread = std::max(worst_spread, detail::spread(row));
    }
    r.measured["max_c"] = worst;
    r.measured["spread"] = worst_spread;
    r.passed = worst <= band::hardy_c && worst_spread <= band::hardy_spread;
    r.detail = std::to_string(cases.size()) + " exponent pairs x 20 problems, max c = " + detail::fmt(worst) + " at " + where +
               ", seed spread " + detail::fmt(worst_spread);
  });
}

inline std::vector<std::pair<Rational, Rational>> xi_power_cases() {
  // (b, q) with u = t^{-b}, 1/q# < b < 1/q, q < 2
  return {{Rational(3, 4), Rational(1)},     {Rational(5, 8), Rational(1)},     {Rational(7, 8), Rational(1)},
          {Rational(1), Rational(3, 4)},     {Rational(6, 5), Rational(3, 4)},  {Rational(2, 3), Rational(4, 3)},
          {Rational(3, 4), Rational(5, 4)},  {Rational(13, 10), Rational(2, 3)}, {Rational(3, 5), Rational(3, 2)},
          {Rational(11, 10), Rational(4, 5)}};
}

// 9. xi and U are comparable for power weights
inline SuiteResult xi_suite() {
  return detail::timed(9, "xi-vs-U", [&](SuiteResult& r) {
    double worst = 0;
    bool finite = true;
    for (auto [b, q] : xi_power_cases()) {
      auto [up, down] = xi_U_bounds(WeightSpec::power(b, Role::U), Exponent::finite(q));
      if (!up.is_finite() || !down.is_finite()) {
        finite = false;
        continue;
      }
      worst = std::max({worst, up.value(), down.value()});
    }
    r.measured = {{"max_ratio", worst}};
    r.passed = finite && worst <= band::xi_over_U;
    r.detail = "10 power weights, max(sup xi/U, sup U/xi) = " + detail::fmt(worst) + " (band " + detail::fmt(band::xi_over_U) + ")";
  });
}

inline std::vector<double> random_sequence(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 200), zero(0, 5);
  std::uniform_real_distribution<double> decay(0.0, 1.5);
  std::normal_distribution<double> g(0.0, 1.0);
  int n = len(rng);
  double beta = decay(rng);
  std::vector<double> a(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)] = zero(rng) == 0 ? 0.0 : g(rng) * std::pow(j + 1.0, -beta);
  std::shuffle(a.begin(), a.end(), rng);
  return a;
}

// |f|_{L^{2,p}} on [0, 1) and the coefficient sequence of a random trigonometric polynomial
inline std::pair<std::vector<double>, StepFunction> random_trig_polynomial(std::mt19937_64& rng, std::size_t M = 4096) {
  std::uniform_int_distribution<int> deg(1, 256);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> decay(0.0, 1.0);
  int K = deg(rng);
  double beta = decay(rng);
  std::vector<cplx> c(M, 0.0);
  std::vector<double> mags;
  for (int n = -K; n <= K; ++n) {
    cplx z = cplx(g(rng), g(rng)) * std::pow(std::abs(n) + 1.0, -beta);
    c[static_cast<std::size_t>((n + static_cast<int>(M)) % static_cast<int>(M))] = z;
    mags.push_back(std::abs(z));
  }
  auto vals = wfi::detail::fft(c, +1);
  std::vector<double> a;
  for (const auto& z : vals) a.push_back(std::abs(z));
  std::sort(a.begin(), a.end(), std::greater<>());
  std::vector<double> br;
  for (std::size_t k = 0; k < M; ++k) br.push_back(static_cast<double>(k) / static_cast<double>(M));
  br.push_back(1.0);
  a.push_back(0.0);
  return {mags, StepFunction::from_values(br, a)};
}

// 10. sequence norms: Bochkarev vs Theta, block forms, Fourier coefficients
inline SuiteResult sequence_suite() {
  return detail::timed(10, "sequence-norms", [&](SuiteResult& r) {
    double boch = 0, blocks = 1, four = 0;
    for (const char* ps : {"3", "4", "inf"}) {
      Exponent p = Exponent::parse(ps), pc = p.conjugate();
      std::mt19937_64 rng(7);
      for (int i = 0; i < 200; ++i) {
        SequenceData a(random_sequence(rng));
        if (a.is_zero()) continue;
        double th = theta_norm(a, p).value();
        boch = std::max(boch, bochkarev_norm(a, p) / th);
        double rt = dyadic_block_norms(a, p).value() / th;
        double rg = dyadic_block_norms(a, pc).value() / gamma_norm(a, pc).value();
        blocks = std::max({blocks, rt, 1 / rt, rg, 1 / rg});
      }
      std::mt19937_64 trng(11);
      for (int i = 0; i < 100; ++i) {
        auto [coef, prof] = random_trig_polynomial(trng);
        ExtReal lz = lorentz_norm(prof, Exponent::finite(2), p);
        four = std::max(four, theta_norm(SequenceData(coef), p).value() / lz.value());
      }
    }
    r.measured = {{"bochkarev_over_theta", boch}, {"block_ratio", blocks}, {"fourier_theta", four}};
    r.passed = boch <= band::bochkarev_over_theta && blocks <= band::block_ratio && four <= band::fourier_theta;
    r.detail = "p in {3,4,inf}: boch/theta <= " + detail::fmt(boch) + ", block ratio within 1/" + detail::fmt(blocks) +
               ".." + detail::fmt(blocks) + ", theta(fhat)/|f|_{2,p} <= " + detail::fmt(four);
  });
}

inline WeightSpec truncated_power_u(Rational a, double R) {
  return WeightSpec::table(StepFunction::from_values({0.0, R}, {std::pow(R, -a.to_double()), 0.0}, TailSpec::zero(),
                                                     a.is_zero() ? LeadSpec::none() : LeadSpec::power(a)),
                           Role::U);
}
inline WeightSpec truncated_power_v(Rational b, double r) {
  return WeightSpec::table(StepFunction::from_values({0.0, r}, {std::pow(r, b.to_double()), std::pow(r, b.to_double())},
                                                     TailSpec::power(-b)),
                           Role::V);
}

inline std::vector<WeightPair> bracket_configs() {
  auto E = [](const char* s) { return Exponent::parse(s); };
  auto C = [&](const char* p, const char* q) { return ExponentConfig(E(p), E(q)); };
  return {{truncated_power_u(0, 1), truncated_power_v(2, 1), C("4", "2")},
          {truncated_power_u(Rational(1, 4), 1), truncated_power_v(1, 1), C("2", "1")},
          {truncated_power_u(Rational(1, 4), 2), truncated_power_v(2, 1), C("3/2", "1")},
          {truncated_power_u(Rational(1, 3), 1), truncated_power_v(1, 1), C("2", "3/2")},
          {truncated_power_u(0, 1), truncated_power_v(1, 1), C("3", "2")},
          {truncated_power_u(Rational(1, 4), 1), truncated_power_v(2, 1), C("4", "3")},
          {truncated_power_u(Rational(1, 8), 1), truncated_power_v(2, 2), C("3", "2")},
          {truncated_power_u(Rational(1, 2), 1), truncated_power_v(1, 1), C("2", "1")},
          {truncated_power_u(0, 2), truncated_power_v(3, 1), C("6", "2")},
          {truncated_power_u(Rational(1, 4), 1), truncated_power_v(2, 1), C("inf", "2")}};
}

// 11. upper and lower bounds on the best constant agree up to a stable band
inline SuiteResult bracket_suite() {
  return detail::timed(11, "bracket", [&](SuiteResult& r) {
    auto cs = bracket_configs();
    double worst_spread = 0, worst_lo = 0;
    bool finite = true;
    std::string first;
    for (const auto& w : cs) {
      std::vector<double> ratios;
      for (std::uint64_t seed : {7, 11, 13}) {
        BracketOptions o;
        o.seed = seed;
        auto br = bracket_constant(w.u, w.v, w.cfg, o);
        if (!br.ratio.is_finite() || !br.upper.is_finite()) {
          finite = false;
          if (first.empty()) first = " (non-finite: " + w.cfg.str() + ")";
          continue;
        }
        ratios.push_back(br.ratio.value());
        worst_lo = std::max(worst_lo, br.lower / br.upper.value());
      }
      if (!ratios.empty()) worst_spread = std::max(worst_spread, detail::spread(ratios));
    }
    r.measured = {{"seed_spread", worst_spread}, {"max_lower_over_upper", worst_lo}};
    r.passed = finite && worst_spread <= band::bracket_spread && worst_lo <= band::bracket_lower_over_upper;
    r.detail = std::to_string(cs.size()) + " regime-II configs, seed spread " + detail::fmt(worst_spread) +
               ", max lower/upper " + detail::fmt(worst_lo) + first;
  });
}

inline const std::vector<std::pair<std::string, std::function<SuiteResult()>>>& suites() {
  static const std::vector<std::pair<std::string, std::function<SuiteResult()>>> all = {
      {"rearrangement", [] { return rearrangement_suite(); }},
      {"fourier", [] { return fourier_suite(); }},
      {"calderon", [] { return calderon_suite(); }},
      {"pitt", [] { return pitt_suite(); }},
      {"plancherel", [] { return plancherel_suite(); }},
      {"degenerate", [] { return degenerate_suite(); }},
      {"duality", [] { return duality_suite(); }},
      {"hardy", [] { return hardy_suite(); }},
      {"xi", [] { return xi_suite(); }},
      {"sequences", [] { return sequence_suite(); }},
      {"bracket", [] { return bracket_suite(); }},
  };
  return all;
}

inline std::string summary_line(const SuiteResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail + " (" +
         detail::fmt(r.seconds) + " s)";
}

}  // namespace wfi::verify
