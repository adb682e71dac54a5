#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/special_functions/trigamma.hpp>

#include "calderon.hpp"
#include "criteria.hpp"
#include "extreal.hpp"
#include "fn.hpp"
#include "quadrature.hpp"
#include "rational.hpp"
#include "rearrange.hpp"
#include "step_function.hpp"
#include "weight.hpp"

namespace wfi {

// ---- function norms ----

// (int_0^inf u^{*,q}(t) (int_0^{1/t} f^*)^q dt)^{1/q} for q >= 2; the
// xi-corrected functional for q < 2.
inline ExtReal optimal_Y_norm(const StepFunction& f, const WeightSpec& u, const Exponent& q) {
  if (u.role() != Role::U) throw std::invalid_argument("optimal_Y_norm needs a u-role weight");
  if (q.is_infinite()) throw std::invalid_argument("optimal_Y_norm needs finite q");
  StepFunction fs = star(f);
  Fn A = fs.antiderivative_fn();
  if (A.is_zero()) return ExtReal::zero();
  StepFunction us = u.rearranged();
  Rational qv = q.value();
  if (q >= Exponent::finite(2)) {
    Fn g = pow_compose(us, qv).to_fn() * pow(recip_arg(A), qv);
    return pow(integrate(g, 0.0, detail::kInf), q.inv().to_double());
  }
  ExponentConfig c(Exponent::finite(2), q);
  Fn k = detail::g_kernel(us, c);
  if (k.is_infinite()) return ExtReal::infinite("xi is infinite: " + k.why());
  Fn g = k * pow(detail::phi_fn(fs), qv / 2);
  return pow(integrate(g, 0.0, detail::kInf), q.inv().to_double());
}

// Sup over radii R of the Morrey-type functional with profile phi.
inline ExtReal morrey_optimal_norm(const StepFunction& f, const Exponent& q, const StepFunction& phi, int d = 1) {
  if (q.is_infinite()) throw std::invalid_argument("morrey_optimal_norm needs finite q");
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  StepFunction fs = star(f);
  Fn A = fs.antiderivative_fn();
  if (A.is_zero()) return ExtReal::zero();
  Rational qv = q.value();
  Rational dr(d);
  Fn H;
  Fn w = phi.to_fn();
  if (q >= Exponent::finite(2)) {
    H = antiderivative(pow(recip_arg(A), qv));
  } else {
    H = antiderivative(pow(detail::phi_fn(fs), qv / 2));
    w = w * power_fn(-dr / 2);
  }
  return supremum(w * pow(pow_arg(H, dr), q.inv()));
}

// (||F||_{exp L}, sup_R (1 + log_+ R)^{-1} int_0^R F^*)
inline std::pair<ExtReal, ExtReal> expL_pair(const StepFunction& F, int d = 1) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  Fn A = star(F).antiderivative_fn();
  if (A.is_zero()) return {ExtReal::zero(), ExtReal::zero()};
  Rational dr(d);
  Fn lhs = pow_arg(A, dr) * power_fn(-dr) * reciprocal(recip_arg(one_plus_log_plus()));
  Fn rhs = A * reciprocal(one_plus_log_plus());
  return {supremum(lhs), supremum(rhs)};
}

// (int_0^inf (t^{1/r} f^{**}(t))^s dt/t)^{1/s}
inline ExtReal lorentz_norm(const StepFunction& f, const Exponent& r, const Exponent& s) {
  if (r.is_infinite()) throw std::invalid_argument("lorentz_norm needs finite r");
  Fn A = star(f).antiderivative_fn();
  if (A.is_zero()) return ExtReal::zero();
  Rational e = r.inv() - Rational(1);
  if (s.is_infinite()) return supremum(A * power_fn(e));
  Rational sv = s.value();
  return pow(integrate(pow(A, sv) * power_fn(e * sv - Rational(1)), 0.0, detail::kInf), s.inv().to_double());
}

// ---- sequences ----

class SequenceData {
 public:
  SequenceData() = default;
  explicit SequenceData(std::vector<double> a) {
    for (double& x : a) {
      if (std::isnan(x) || std::isinf(x)) throw std::invalid_argument("sequence entries must be finite");
      x = std::abs(x);
    }
    std::sort(a.begin(), a.end(), std::greater<>());
    while (!a.empty() && a.back() == 0.0) a.pop_back();
    star_ = std::move(a);
    std::size_t n = star_.size();
    p1_.assign(n + 1, 0.0);
    p2_.assign(n + 1, 0.0);
    q2_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      p1_[i + 1] = p1_[i] + star_[i];
      p2_[i + 1] = p2_[i] + star_[i] * star_[i];
      double ss = p1_[i + 1] / static_cast<double>(i + 1);
      q2_[i + 1] = q2_[i] + ss * ss;
    }
  }

  std::size_t support() const { return star_.size(); }
  bool is_zero() const { return star_.empty(); }
  const std::vector<double>& star() const { return star_; }
  double total() const { return p1_.back(); }

  // a^*_n, a^{**}_n with n >= 1
  double star_at(std::size_t n) const { return n >= 1 && n <= star_.size() ? star_[n - 1] : 0.0; }
  double double_star_at(std::size_t n) const {
    return n <= star_.size() ? p1_[n] / static_cast<double>(n) : total() / static_cast<double>(n);
  }
  // sum_{j<=n} a^{*,2}_j
  double star_sq_prefix(double n) const {
    if (n < 1) return 0.0;
    return p2_[std::min<std::size_t>(static_cast<std::size_t>(n), star_.size())];
  }
  // sum_{j<=x} a^{**,2}_j, extended to real x > N through the trigamma function
  double double_star_sq_prefix(double x) const {
    std::size_t n = star_.size();
    if (x < 1) return 0.0;
    if (x <= static_cast<double>(n)) return q2_[static_cast<std::size_t>(x)];
    double A = total();
    return q2_[n] + A * A * (trigamma(static_cast<double>(n) + 1) - trigamma(x + 1));
  }
  double double_star_sq_total() const {
    double A = total();
    return q2_.back() + A * A * trigamma(static_cast<double>(star_.size()) + 1);
  }
  // sum_{j>=x} a^{**,2}_j
  double double_star_sq_tail(double x) const {
    std::size_t n = star_.size();
    double A = total();
    if (x > static_cast<double>(n)) return A * A * trigamma(x);
    std::size_t k = static_cast<std::size_t>(std::max(1.0, std::ceil(x)));
    return q2_[n] - q2_[k - 1] + A * A * trigamma(static_cast<double>(n) + 1);
  }
  double star_sq_tail(std::size_t k) const {
    if (k > star_.size()) return 0.0;
    return p2_.back() - p2_[std::max<std::size_t>(k, 1) - 1];
  }

  static double trigamma(double x) { return boost::math::trigamma(x); }

 private:
  std::vector<double> star_, p1_, p2_, q2_;
};

namespace detail {

inline constexpr std::size_t kDirectTerms = 2000;

// sum_{n>=M} f(n) for f(x) ~ c / (x log^s(x+1)): Euler-Maclaurin with the f'
// correction; the next term is f'''(M)/720, below 1e-12 f(M) for M >= kDirectTerms.
// The integral runs in y = log(x+1), where the c y^{-s} part is exact and the
// rest decays exponentially.
inline double series_tail(const std::function<double(double)>& f, double M, double s, double c) {
  double h = 1e-3 * M;
  double d1 = (f(M + h) - f(M - h)) / (2 * h);
  double Y = std::log(M + 1);
  auto rest = [&](double y) {
    if (y > 700) return 0.0;
    double v = f(std::expm1(y)) * std::exp(y);
    return c == 0.0 ? v : v - c * std::pow(y, -s);
  };
  double lead = c == 0.0 ? 0.0 : c * std::pow(Y, 1 - s) / (s - 1);
  return lead + quad::infinite_segment(rest, Y) + 0.5 * f(M) - d1 / 12.0;
}

inline double log1(double n) { return std::log(n + 1.0); }

inline void check_theta_p(const Exponent& p) {
  if (!(p > Exponent::finite(2))) throw std::invalid_argument("p must exceed 2");
}

}  // namespace detail

// (sum_n (sum_{j<=n} b_j^{*,2})^{p/2} / (n log^{p/2}(n+1)))^{1/p}; sup form for p = inf.
// With double_star the b^{**} prefix replaces b^*.
inline ExtReal theta_norm(const SequenceData& b, const Exponent& p, bool double_star = false) {
  detail::check_theta_p(p);
  if (b.is_zero()) return ExtReal::zero();
  auto S = [&](double n) { return double_star ? b.double_star_sq_prefix(n) : b.star_sq_prefix(n); };
  std::size_t N = b.support();
  if (p.is_infinite()) {
    double best = 0;
    for (std::size_t n = 1; n <= N; ++n) best = std::max(best, S(static_cast<double>(n)) / detail::log1(static_cast<double>(n)));
    if (double_star) {
      // past the support S grows towards its limit while the log keeps growing
      double cap = b.double_star_sq_total();
      double stop = std::min(1e300, std::exp(cap / best) - 1);
      if (stop > static_cast<double>(N) + 1) {
        auto g = [&](double x) { return S(x) / detail::log1(x); };
        double x = quad::maximize(g, static_cast<double>(N) + 1, stop, 48).first;
        best = std::max({best, g(std::floor(x)), g(std::ceil(x))});
      }
    }
    return ExtReal::finite(std::sqrt(best));
  }
  double s = p.to_double() / 2;
  auto term = [&](double x) { return std::pow(S(x), s) / (x * std::pow(detail::log1(x), s)); };
  std::size_t M = std::max<std::size_t>(N + 1, detail::kDirectTerms);
  double sum = 0;
  for (std::size_t n = 1; n < M; ++n) sum += term(static_cast<double>(n));
  double Mx = static_cast<double>(M);
  if (double_star) {
    sum += detail::series_tail(term, Mx, s, std::pow(b.double_star_sq_total(), s));
  } else {
    double SN = S(static_cast<double>(N));
    sum += std::pow(SN, s) * detail::series_tail([s](double x) { return 1.0 / (x * std::pow(detail::log1(x), s)); }, Mx, s, 1.0);
  }
  return ExtReal::finite(std::pow(sum, 1.0 / p.to_double()));
}

// (sum_n (sum_{j>=n} a_j^{**,2})^{q/2} / (n log^{q/2}(n+1)))^{1/q}, 1 <= q < 2;
// with double_star = false the a^* tail replaces a^{**}.
inline ExtReal gamma_norm(const SequenceData& a, const Exponent& q, bool double_star = true) {
  if (!(q < Exponent::finite(2)) || q.inv() > Rational(1)) throw std::invalid_argument("q must lie in [1, 2)");
  if (a.is_zero()) return ExtReal::zero();
  double s = q.to_double() / 2;
  std::size_t N = a.support();
  auto T = [&](double x) {
    return double_star ? a.double_star_sq_tail(x) : a.star_sq_tail(static_cast<std::size_t>(x));
  };
  auto term = [&](double x) { return std::pow(T(x), s) / (x * std::pow(detail::log1(x), s)); };
  std::size_t M = double_star ? std::max<std::size_t>(N + 1, detail::kDirectTerms) : N + 1;
  double sum = 0;
  for (std::size_t n = 1; n < M; ++n) sum += term(static_cast<double>(n));
  if (double_star) {
    double A = a.total();
    auto tail = [A, s](double x) {
      return std::pow(A * A * SequenceData::trigamma(x), s) / (x * std::pow(detail::log1(x), s));
    };
    sum += detail::series_tail(tail, static_cast<double>(M), s, 0.0);
  }
  return ExtReal::finite(std::pow(sum, 1.0 / q.to_double()));
}

// sup_n (sum_{j<=n} b_j^{*,2})^{1/2} / log^{1/p#}(n+1)
inline double bochkarev_norm(const SequenceData& b, const Exponent& p) {
  detail::check_theta_p(p);
  double e = (Rational(1, 2) - p.inv()).to_double();
  double best = 0;
  for (std::size_t n = 1; n <= b.support(); ++n)
    best = std::max(best, std::sqrt(b.star_sq_prefix(static_cast<double>(n))) / std::pow(detail::log1(static_cast<double>(n)), e));
  return best;
}

// y_0 = 1, y_k = round(e^{2^k})
inline std::vector<double> dyadic_breaks(double upto) {
  std::vector<double> y{1.0};
  for (int k = 1; y.back() <= upto && k < 10; ++k) y.push_back(std::round(std::exp(std::ldexp(1.0, k))));
  return y;
}

// Block forms: exponent > 2 gives the Theta_{2,p} blocks on b^*, exponent in
// [1, 2) the Gamma_{2,q} blocks on a^{**}.
inline ExtReal dyadic_block_norms(const SequenceData& a, const Exponent& e) {
  if (e == Exponent::finite(2) || e.inv() > Rational(1))
    throw std::invalid_argument("block exponent must exceed 2 or lie in [1, 2)");
  if (a.is_zero()) return ExtReal::zero();
  bool theta = e > Exponent::finite(2);
  double N = static_cast<double>(a.support());
  // the a^{**} tail reaches past any finite support; the last block is [y_9, inf)
  std::vector<double> y = dyadic_breaks(theta ? N : std::numeric_limits<double>::max());
  auto block = [&](double lo, double hi) {
    if (theta) return a.star_sq_prefix(hi) - a.star_sq_prefix(lo - 1);
    if (std::isinf(hi)) return a.double_star_sq_tail(lo);
    return a.double_star_sq_prefix(hi) - a.double_star_sq_prefix(lo - 1);
  };
  double sum = 0, best = 0;
  for (std::size_t k = 0; k + 1 < y.size() || (!theta && k < y.size()); ++k) {
    double hi = k + 1 < y.size() ? y[k + 1] : std::numeric_limits<double>::infinity();
    double B = block(y[k], hi);
    if (e.is_infinite()) {
      best = std::max(best, std::ldexp(1.0, -static_cast<int>(k)) * B);
    } else {
      double ev = e.to_double();
      sum += std::pow(2.0, static_cast<double>(k) * (1 - ev / 2)) * std::pow(B, ev / 2);
    }
  }
  if (e.is_infinite()) return ExtReal::finite(std::sqrt(best));
  return ExtReal::finite(std::pow(sum, 1.0 / e.to_double()));
}

}  // namespace wfi
