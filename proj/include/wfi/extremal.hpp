#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "criteria.hpp"
#include "extreal.hpp"
#include "hardy.hpp"
#include "legs.hpp"
#include "parallel.hpp"
#include "rational.hpp"
#include "signal.hpp"
#include "step_function.hpp"
#include "weight.hpp"

namespace wfi {

namespace detail {

inline constexpr double kInfD = std::numeric_limits<double>::infinity();

inline double to_double(const ExtReal& x) {
  if (x.is_finite()) return x.value();
  if (x.is_infinite()) return kInfD;
  return std::numeric_limits<double>::quiet_NaN();
}

// int_a^b g(|x|) dx
inline double radial_integral(const StepFunction& g, double a, double b) {
  if (!(b > a)) return 0.0;
  if (a >= 0) return to_double(integrate(g, a, b));
  if (b <= 0) return to_double(integrate(g, -b, -a));
  return to_double(integrate(g, 0.0, -a)) + to_double(integrate(g, 0.0, b));
}

// g(|x|) just inside the end of [a, b] farthest from the origin
inline double radial_far_value(const StepFunction& g, double a, double b) {
  double r = std::max(std::abs(a), std::abs(b));
  return g(std::nextafter(r, 0.0));
}

inline void require_line(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c) {
  if (c.d != 1 || u.dim() != 1 || v.dim() != 1) throw std::domain_error("numerical Fourier experiments are d=1 only");
  if (u.role() != Role::U || v.role() != Role::V) throw std::invalid_argument("expected a u-role and a v-role weight");
}

// v_0^{-p'} with the convention 1/inf = 0
inline StepFunction dual_density(const WeightSpec& v, const ExponentConfig& c) {
  Exponent pp = c.p_prime();
  if (pp.is_infinite()) throw std::domain_error("v^{-p'} needs p > 1");
  return pow_compose(v.profile(), -pp.value(), ZeroPolicy::ToInfinity);
}

}  // namespace detail

// ||u fhat||_q / ||f v||_p with f and fhat constant on their cells; weight
// masses per cell are exact.
class RatioEvaluator {
 public:
  RatioEvaluator(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c, std::size_t N = 4096, double L = 64.0)
      : cfg_(c), N_(N), L_(L) {
    detail::require_line(u, v, c);
    SampledSignal probe(N, L, std::vector<cplx>(N));
    double dx = probe.dx(), dxi = 1.0 / L;
    uq_.resize(N);
    vp_.resize(N);
    StepFunction uq = c.q.is_infinite() ? u.profile() : pow_compose(u.profile(), c.q.value());
    StepFunction vp = c.p.is_infinite() ? v.profile() : pow_compose(v.profile(), c.p.value());
    for (std::size_t k = 0; k < N; ++k) {
      double x = probe.x(k);
      double xi = (static_cast<double>(k) - 0.5 * static_cast<double>(N)) * dxi;
      uq_[k] = c.q.is_infinite() ? detail::radial_far_value(uq, xi - 0.5 * dxi, xi + 0.5 * dxi)
                                 : detail::radial_integral(uq, xi - 0.5 * dxi, xi + 0.5 * dxi);
      vp_[k] = c.p.is_infinite() ? detail::radial_far_value(vp, x - 0.5 * dx, x + 0.5 * dx)
                                 : detail::radial_integral(vp, x - 0.5 * dx, x + 0.5 * dx);
    }
  }

  std::size_t N() const { return N_; }
  double L() const { return L_; }

  double operator()(const SampledSignal& f) const { return ratio_with(f, dft(f)); }

  double ratio_with(const SampledSignal& f, const SampledSignal& fh) const {
    if (f.N != N_ || std::abs(f.L - L_) > 1e-12 * L_) throw std::invalid_argument("signal resolution does not match");
    double den = lp(f, vp_, cfg_.p);
    if (!(den > 0)) throw std::invalid_argument("zero denominator: ||f v||_p = 0");
    double num = lp(fh, uq_, cfg_.q);
    if (std::isinf(den)) return 0.0;
    return num / den;
  }

 private:
  static double lp(const SampledSignal& f, const std::vector<double>& w, const Exponent& e) {
    if (e.is_infinite()) {
      double m = 0;
      for (std::size_t k = 0; k < f.N; ++k) m = std::max(m, detail::mul0(std::abs(f.samples[k]), w[k]));
      return m;
    }
    double ev = e.to_double(), s = 0;
    for (std::size_t k = 0; k < f.N; ++k) {
      double a = std::abs(f.samples[k]);
      if (a > 0) s += detail::mul0(std::pow(a, ev), w[k]);
    }
    return std::pow(s, 1.0 / ev);
  }

  ExponentConfig cfg_;
  std::size_t N_;
  double L_;
  std::vector<double> uq_, vp_;
};

inline double ratio(const SampledSignal& f, const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c) {
  return RatioEvaluator(u, v, c, f.N, f.L)(f);
}

namespace detail {

// Cell averages of w(|x|) 1_{S}(x) for S a union of intervals.
inline std::vector<double> cell_averages(const StepFunction& w, const std::vector<std::pair<double, double>>& S,
                                         std::size_t N, double L) {
  std::vector<double> out(N, 0.0);
  double dx = L / static_cast<double>(N);
  for (const auto& [a, b] : S) {
    double lo = std::max(a, -0.5 * L - 0.5 * dx), hi = std::min(b, 0.5 * L - 0.5 * dx);
    if (!(hi > lo)) continue;
    auto first = static_cast<std::size_t>(std::max(0.0, std::floor((lo + 0.5 * L + 0.5 * dx) / dx)));
    for (std::size_t k = first; k < N; ++k) {
      double c = -0.5 * L + static_cast<double>(k) * dx;
      double ca = c - 0.5 * dx, cb = c + 0.5 * dx;
      if (ca >= hi) break;
      double ia = std::max(ca, lo), ib = std::min(cb, hi);
      if (ib > ia) out[k] += radial_integral(w, ia, ib) / dx;
    }
  }
  return out;
}

inline SampledSignal combine(const std::vector<std::vector<double>>& parts, const std::vector<double>& coef,
                             const std::vector<int>& sign, std::size_t N, double L) {
  std::vector<cplx> s(N, 0.0);
  for (std::size_t n = 0; n < parts.size(); ++n) {
    if (coef[n] == 0.0) continue;
    double a = coef[n] * sign[n];
    for (std::size_t k = 0; k < N; ++k) s[k] += a * parts[n][k];
  }
  return SampledSignal(N, L, std::move(s));
}

// max over sign patterns (the first all positive, the rest random) of the ratio
inline double best_over_signs(const RatioEvaluator& R, const std::vector<std::vector<double>>& parts,
                              const std::vector<double>& coef, int restarts, std::uint64_t seed) {
  std::size_t n = parts.size();
  auto vals = parallel_map<double>(static_cast<std::size_t>(std::max(restarts, 1)), [&](std::size_t r) {
    std::vector<int> sg(n, 1);
    if (r > 0) {
      auto rng = task_rng(seed, r);
      std::bernoulli_distribution coin(0.5);
      for (auto& x : sg) x = coin(rng) ? 1 : -1;
    }
    SampledSignal f = combine(parts, coef, sg, R.N(), R.L());
    for (const auto& z : f.samples)
      if (z != 0.0) return R(f);
    return 0.0;
  });
  double best = 0;
  for (double v : vals) best = std::max(best, v);
  return best;
}

}  // namespace detail

// f = v^{-p'} sum_n eps_n lambda_n 1_{[0,s]}(|x - 2ns|), lambda_n = V_n^{1/(p-2)}.
inline double lower_bound_translates(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c, double s = 0.125,
                                     int M = 4, int restarts = 64, std::uint64_t seed = 7, std::size_t N = 4096,
                                     double L = 64.0) {
  if (!(c.p > Exponent::finite(2))) throw std::invalid_argument("the translates construction needs p > 2");
  if (!(s > 0) || M < 1) throw std::invalid_argument("need s > 0 and at least one block");
  RatioEvaluator R(u, v, c, N, L);
  StepFunction w = detail::dual_density(v, c);
  std::vector<std::vector<double>> parts;
  std::vector<double> coef;
  int n0 = -(M - 1) / 2;
  for (int n = n0; n < n0 + M; ++n) {
    double ctr = 2.0 * n * s;
    double V = detail::radial_integral(w, ctr - s, ctr + s);
    double lam = 0.0;
    if (V > 0 && std::isfinite(V)) lam = c.p.is_infinite() ? 1.0 : std::pow(V, 1.0 / (c.p.to_double() - 2.0));
    parts.push_back(detail::cell_averages(w, {{ctr - s, ctr + s}}, N, L));
    coef.push_back(lam);
  }
  return detail::best_over_signs(R, parts, coef, restarts, seed);
}

struct Annuli {
  std::vector<double> alpha;  // alpha_0 = M > alpha_1 > ...
  double I = 0.0;             // int_{|x| < M} v^{-p'}
};

// Radii with int_{alpha_n < |x| < alpha_{n-1}} v^{-p'} = I / 2^n.
inline Annuli dyadic_annuli(const WeightSpec& v, const ExponentConfig& c, double M, int count) {
  StepFunction w = detail::dual_density(v, c);
  auto G = [&](double a) { return 2.0 * detail::to_double(integrate(w, 0.0, a)); };
  Annuli A;
  A.I = G(M);
  if (!(A.I > 0)) throw std::domain_error("mass equation unsolvable: v^{-p'} vanishes on the ball");
  if (std::isinf(A.I)) throw std::domain_error("mass equation unsolvable: v^{-p'} is not locally integrable");
  A.alpha.push_back(M);
  for (int n = 1; n <= count; ++n) {
    double target = A.I * std::ldexp(1.0, -n);
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-14 * std::max(1.0, std::abs(b)); };
    auto r = boost::math::tools::bisect([&](double a) { return G(a) - target; }, 0.0, A.alpha.back(), tol);
    A.alpha.push_back(0.5 * (r.first + r.second));
  }
  return A;
}

// f = sum_n eps_n lambda_n v^{-p'} 1_{alpha_n <= |x| <= alpha_{n-1}}, with lambda
// either flat or the maximizer of the discrete Hardy surrogate.
inline double lower_bound_annuli(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c, double M = 16.0,
                                 int restarts = 64, std::uint64_t seed = 7, int annuli = 0, std::size_t N = 4096,
                                 double L = 64.0) {
  if (!c.has_r()) throw std::invalid_argument("the annuli construction needs q < p");
  if (c.p.inv() == Rational(1)) throw std::invalid_argument("the annuli construction needs p > 1");
  if (!(M > 0)) throw std::invalid_argument("mass cutoff must be positive");
  RatioEvaluator R(u, v, c, N, L);
  double dx = L / static_cast<double>(N);
  // only annuli the grid resolves
  int cap = 40;
  Annuli A = dyadic_annuli(v, c, M, cap);
  int K = 1;
  while (K < cap && A.alpha[static_cast<std::size_t>(K) + 1] - 0 >= 2 * dx) ++K;
  if (annuli > 0) K = std::min(K, annuli);
  StepFunction w = detail::dual_density(v, c);
  std::vector<std::vector<double>> parts;
  for (int n = 1; n <= K; ++n) {
    double a = A.alpha[static_cast<std::size_t>(n)], b = A.alpha[static_cast<std::size_t>(n) - 1];
    parts.push_back(detail::cell_averages(w, {{-b, -a}, {a, b}}, N, L));
  }
  std::vector<std::vector<double>> lambdas{std::vector<double>(static_cast<std::size_t>(K), 1.0)};
  if (!c.p.is_infinite() && !c.q.is_infinite()) {
    // U_m = int over 1/(2 pi alpha_{m-2}) <= |xi| <= 1/(2 pi alpha_{m-1}), alpha_{-1} = inf
    StepFunction uq = pow_compose(u.profile(), c.q.value());
    HardyProblem hp;
    hp.kind = HardyKind::HeadSum;
    hp.p = Exponent::finite(c.p.value() / 2);
    hp.q = Exponent::finite(c.q.value() / 2);
    bool ok = true;
    double pd = c.p.to_double();
    for (int m = 1; m <= K; ++m) {
      double lo = m == 1 ? 0.0 : 1.0 / (2 * M_PI * A.alpha[static_cast<std::size_t>(m) - 2]);
      double hi = 1.0 / (2 * M_PI * A.alpha[static_cast<std::size_t>(m) - 1]);
      double U = 2.0 * detail::to_double(integrate(uq, lo, hi));
      ok = ok && std::isfinite(U);
      hp.us.push_back(U);
      double W = A.I * std::ldexp(1.0, -m);
      hp.vs.push_back(std::pow(W, 1.0 - pd));
    }
    if (ok) {
      auto best = brute_force_argmax(hp, {}, 12, seed, 8);
      std::vector<double> lam(static_cast<std::size_t>(K), 0.0);
      for (int n = 1; n <= K; ++n) {
        double x = best.profile[static_cast<std::size_t>(n) - 1];
        double W = A.I * std::ldexp(1.0, -n);
        lam[static_cast<std::size_t>(n) - 1] = std::sqrt(std::max(0.0, x)) / W;
      }
      if (std::any_of(lam.begin(), lam.end(), [](double x) { return x > 0; })) lambdas.push_back(lam);
    }
  }
  double best = 0;
  for (const auto& lam : lambdas) best = std::max(best, detail::best_over_signs(R, parts, lam, restarts, seed));
  return best;
}

// ||u||_q ||1/v||_{p'} in Lebesgue measure on the line.
inline ExtReal degenerate_target(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c) {
  auto line_norm = [](const StepFunction& g, const Exponent& s) {
    ExtReal h = full_norm(g, s);
    return s.is_infinite() ? h : h * ExtReal::finite(std::pow(2.0, s.inv().to_double()));
  };
  return line_norm(u.profile(), c.q) * line_norm(recip(v.profile()), c.p_prime());
}

// q = inf: f = v^{-p'} e^{2 pi i xi0 x}. p = 1: a single cell at the origin.
inline double degenerate_witness(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c, std::size_t N = 4096,
                                 double L = 64.0, double xi0 = 0.0) {
  RatioEvaluator R(u, v, c, N, L);
  SampledSignal f(N, L, std::vector<cplx>(N, 0.0));
  if (c.p.inv() == Rational(1)) {
    f.samples[N / 2] = 1.0;
    return R(f);
  }
  StepFunction w = detail::dual_density(v, c);
  auto avg = detail::cell_averages(w, {{-0.5 * L - f.dx(), 0.5 * L + f.dx()}}, N, L);
  for (std::size_t k = 0; k < N; ++k) f.samples[k] = avg[k] * std::polar(1.0, 2 * M_PI * xi0 * f.x(k));
  return R(f);
}

// f = v^{-p'} 1_{|x| < r}: the test function behind the cube condition.
inline double indicator_witness(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c, double r,
                                std::size_t N = 4096, double L = 64.0) {
  RatioEvaluator R(u, v, c, N, L);
  StepFunction w = detail::dual_density(v, c);
  auto avg = detail::cell_averages(w, {{-r, r}}, N, L);
  std::vector<cplx> s(avg.begin(), avg.end());
  SampledSignal f(N, L, std::move(s));
  for (const auto& z : f.samples)
    if (z != 0.0) return R(f);
  return 0.0;
}

namespace detail {

// sum_{n in Z} (int_{wn + w[-1/2, 1/2]} g(|x|))^e; far blocks by the midpoint rule.
inline ExtReal block_sum(const StepFunction& g, double w, const Rational& e) {
  double ed = e.to_double();
  double B0 = radial_integral(g, -0.5 * w, 0.5 * w);
  if (std::isinf(B0)) return ExtReal::infinite("a block has infinite mass");
  double last = g.breaks().back();
  double n1d = std::min(1e6, std::max(4096.0, 2.0 * std::ceil(last / w) + 64.0));
  auto n1 = static_cast<std::size_t>(n1d);
  double sum = B0 > 0 ? std::pow(B0, ed) : 0.0;
  for (std::size_t n = 1; n <= n1; ++n) {
    double a = w * (static_cast<double>(n) - 0.5);
    double B = to_double(integrate(g, a, a + w));
    if (std::isinf(B)) return ExtReal::infinite("a block has infinite mass");
    if (B > 0) sum += 2.0 * std::pow(B, ed);
  }
  double from = w * (n1d + 0.5);
  ExtReal tail = integrate(pow_compose(g, e, ZeroPolicy::ToInfinity), from, kInfD);
  if (tail.is_infinite()) return ExtReal::infinite("block masses are not summable: " + tail.reason());
  if (tail.is_finite()) sum += 2.0 * std::pow(w, ed - 1.0) * tail.value();
  return ExtReal::finite(sum);
}

inline Rational sharp_inv(const Exponent& e) { return (Rational(1, 2) - e.inv()).abs(); }

}  // namespace detail

// (int_{|xi| < 1/(2s)} u^q)^{1/q} (sum_n (int_{sn + s[-1/2,1/2]} v^{-p'})^{p#/p'})^{1/p#}
inline ExtReal block_l2_condition(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c, double s) {
  if (!(c.p > Exponent::finite(2))) throw std::invalid_argument("the block condition needs p > 2");
  if (!(s > 0) || std::isinf(s)) throw std::invalid_argument("scale must be positive");
  detail::require_line(u, v, c);
  double h = 0.5 / s;
  ExtReal ufac = c.q.is_infinite() ? ExtReal::finite(u.profile()(0.0))
                                   : pow(ExtReal::finite(2.0) * integrate(pow_compose(u.profile(), c.q.value()), 0.0, h),
                                         c.q.inv().to_double());
  if (ufac.is_finite() && ufac.value() == 0.0) return ExtReal::zero();
  Rational ps_inv = detail::sharp_inv(c.p);
  Rational e = c.p_prime().inv() / ps_inv;
  ExtReal blocks = detail::block_sum(detail::dual_density(v, c), s, e);
  return ufac * pow(blocks, ps_inv.to_double());
}

struct SymmetricBlocks {
  ExtReal blocks;  // product of the two block sums at scale t
  ExtReal tail;    // tail-integral form
};

inline SymmetricBlocks symmetric_block_condition(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c, double t) {
  if (!(c.q < Exponent::finite(2)) || !(c.p > Exponent::finite(2)))
    throw std::invalid_argument("the symmetric condition needs q < 2 < p");
  if (!(t > 0) || std::isinf(t)) throw std::invalid_argument("scale must be positive");
  detail::require_line(u, v, c);
  Rational ps_inv = detail::sharp_inv(c.p), qs_inv = detail::sharp_inv(c.q);
  Rational qv = c.q.value();
  ExtReal vb = pow(detail::block_sum(detail::dual_density(v, c), 1.0 / t, c.p_prime().inv() / ps_inv), ps_inv.to_double());
  ExtReal ub = pow(detail::block_sum(pow_compose(u.profile(), qv), t, qs_inv.reciprocal() / qv), qs_inv.to_double());
  SymmetricBlocks out;
  out.blocks = vb * ub;
  ExtReal vt = pow(integrate(pow_compose(v.profile(), -ps_inv.reciprocal(), ZeroPolicy::ToInfinity), 1.0 / t, detail::kInfD),
                   ps_inv.to_double());
  ExtReal ut = pow(integrate(pow_compose(u.profile(), qs_inv.reciprocal()), t, detail::kInfD), qs_inv.to_double());
  out.tail = vt * ut;
  return out;
}

struct Witness {
  std::string kind;
  double ratio = 0.0;
  std::string detail;
};

struct BracketOptions {
  std::size_t N = 4096;
  double L = 64.0;
  std::uint64_t seed = 7;
  int budget = 64;
};

struct ConstantBracket {
  ExponentConfig cfg;
  std::string u, v;
  std::string regime;
  double lower = 0.0;
  ExtReal upper = ExtReal::indeterminate("not computed");
  ExtReal ratio = ExtReal::indeterminate("not computed");  // upper / lower
  std::vector<Witness> witnesses;
  std::vector<std::pair<std::size_t, double>> by_resolution;  // (N, lower)
  double resolution_delta = 0.0;                             // |lower(N) - lower(N/2)| / lower(N)
};

// All lower-bound constructions at one resolution.
inline std::vector<Witness> lower_witnesses(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c,
                                            const BracketOptions& o) {
  std::vector<Witness> out;
  RatioEvaluator R(u, v, c, o.N, o.L);
  auto sig = parallel_map<double>(static_cast<std::size_t>(std::max(o.budget, 1)), [&](std::size_t i) {
    auto rng = task_rng(o.seed, 1000 + i);
    return R(random_bandlimited(rng, o.N, o.L));
  });
  std::size_t bi = static_cast<std::size_t>(std::max_element(sig.begin(), sig.end()) - sig.begin());
  out.push_back({"random", sig[bi], "band-limited packet sum #" + std::to_string(bi)});
  bool p_gt1 = c.p.inv() < Rational(1);
  int restarts = std::max(8, o.budget / 4);
  auto guarded = [&](const std::string& kind, const std::string& det, auto&& fn) {
    try {
      out.push_back({kind, fn(), det});
    } catch (const std::domain_error& e) {
      out.push_back({kind, 0.0, std::string("skipped: ") + e.what()});
    }
  };
  if (c.p > Exponent::finite(2))
    for (double s : {0.125, 0.5, 2.0})
      guarded("translates", "s=" + std::to_string(s) + " M=4",
              [&] { return lower_bound_translates(u, v, c, s, 4, restarts, o.seed, o.N, o.L); });
  if (c.has_r() && p_gt1)
    guarded("annuli", "M=" + std::to_string(o.L / 4),
            [&] { return lower_bound_annuli(u, v, c, o.L / 4, restarts, o.seed, 0, o.N, o.L); });
  if (c.q.is_infinite() || !p_gt1)
    guarded("phase-matched", "f = v^{-p'} e^{2 pi i 0 x}", [&] { return degenerate_witness(u, v, c, o.N, o.L); });
  if (p_gt1)
    for (double r : {0.125, 0.5, 2.0, 8.0})
      guarded("indicator", "r=" + std::to_string(r), [&] { return indicator_witness(u, v, c, r, o.N, o.L); });
  return out;
}

inline double best_of(const std::vector<Witness>& ws) {
  double b = 0;
  for (const auto& w : ws)
    if (!std::isnan(w.ratio)) b = std::max(b, w.ratio);
  return b;
}

inline ConstantBracket bracket_constant(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c,
                                        const BracketOptions& o = {}) {
  ConstantBracket br;
  br.cfg = c;
  br.u = u.str();
  br.v = v.str();
  CriterionReport rep = evaluate(u, v, c);
  br.regime = to_string(rep.regime);
  br.upper = rep.regime_constant();
  br.witnesses = lower_witnesses(u, v, c, o);
  br.lower = best_of(br.witnesses);
  BracketOptions half = o;
  half.N = o.N / 2;
  double lh = half.N >= 4 ? best_of(lower_witnesses(u, v, c, half)) : br.lower;
  br.by_resolution = {{half.N, lh}, {o.N, br.lower}};
  br.resolution_delta = br.lower > 0 ? std::abs(br.lower - lh) / br.lower : 0.0;
  if (br.upper.is_indeterminate()) {
    br.ratio = br.upper;
  } else if (br.lower == 0.0) {
    br.ratio = ExtReal::indeterminate("no positive lower bound found");
  } else if (std::isinf(br.lower)) {
    br.ratio = br.upper.is_infinite() ? ExtReal::indeterminate("both bounds infinite")
                                      : ExtReal::zero();
  } else {
    br.ratio = br.upper * ExtReal::finite(1.0 / br.lower);
  }
  return br;
}

}  // namespace wfi
