#pragma once

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "asymptote.hpp"
#include "extreal.hpp"
#include "quadrature.hpp"
#include "rational.hpp"

namespace wfi {

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double mul0(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

inline double pow0(double x, double e) {
  if (e == 0.0) return 1.0;
  return std::pow(x, e);
}

inline std::vector<double> merge_knots(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r;
  r.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

}  // namespace detail

// A non-negative function on (0, inf) known through point evaluation, the
// points where it may fail to be smooth, and its leading behaviour at both ends.
class Fn {
 public:
  using Eval = std::function<double(double)>;
  enum class Kind { General, Zero, Infinite, Monomial };

  Fn() : Fn(zero()) {}

  static Fn zero() {
    static const Fn z(Kind::Zero);
    return z;
  }
  static Fn infinite(std::string why = "identically infinite") {
    auto d = std::make_shared<Data>();
    d->kind = Kind::Infinite;
    d->eval = [](double) { return detail::kInf; };
    d->at0 = d->atinf = Asymptote::infinite();
    d->why = std::move(why);
    return Fn(std::move(d));
  }
  static Fn constant(double c) { return monomial(c, 0); }
  static Fn monomial(double c, Rational power) {
    if (c == 0.0) return zero();
    if (std::isinf(c)) return infinite();
    auto d = std::make_shared<Data>();
    d->kind = Kind::Monomial;
    d->coef = c;
    d->power = power;
    double pd = power.to_double();
    d->eval = [c, pd](double t) { return pd == 0.0 ? c : c * std::pow(t, pd); };
    d->at0 = d->atinf = Asymptote::monomial(c, power);
    return Fn(std::move(d));
  }
  static Fn make(Eval eval, std::vector<double> knots, Asymptote at0, Asymptote atinf) {
    auto d = std::make_shared<Data>();
    d->kind = Kind::General;
    d->eval = std::move(eval);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    knots.erase(std::remove_if(knots.begin(), knots.end(), [](double k) { return !(k > 0) || std::isinf(k); }),
                knots.end());
    d->knots = std::move(knots);
    d->at0 = at0;
    d->atinf = atinf;
    return Fn(std::move(d));
  }

  double operator()(double t) const { return d_->eval(t); }
  Kind kind() const { return d_->kind; }
  bool is_zero() const { return d_->kind == Kind::Zero; }
  bool is_infinite() const { return d_->kind == Kind::Infinite; }
  bool is_monomial() const { return d_->kind == Kind::Monomial; }
  double coef() const { return d_->coef; }
  const Rational& power() const { return d_->power; }
  const std::vector<double>& knots() const { return d_->knots; }
  const Asymptote& at_zero() const { return d_->at0; }
  const Asymptote& at_inf() const { return d_->atinf; }
  const std::string& why() const { return d_->why; }

 private:
  struct Data {
    Kind kind = Kind::Zero;
    Eval eval = [](double) { return 0.0; };
    std::vector<double> knots;
    Asymptote at0, atinf;
    double coef = 0.0;
    Rational power;
    std::string why;
  };

  explicit Fn(Kind k) {
    auto d = std::make_shared<Data>();
    d->kind = k;
    d_ = std::move(d);
  }
  explicit Fn(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;
};

inline Fn operator*(const Fn& f, const Fn& g) {
  if (f.is_zero() || g.is_zero()) return Fn::zero();
  if (f.is_infinite() && (g.is_infinite() || g.is_monomial())) return Fn::infinite(f.why());
  if (g.is_infinite() && f.is_monomial()) return Fn::infinite(g.why());
  if (f.is_monomial() && g.is_monomial()) return Fn::monomial(f.coef() * g.coef(), f.power() + g.power());
  return Fn::make([f, g](double t) { return detail::mul0(f(t), g(t)); }, detail::merge_knots(f.knots(), g.knots()),
                  f.at_zero() * g.at_zero(), f.at_inf() * g.at_inf());
}

inline Fn scale(const Fn& f, double c) {
  if (c == 0.0 || f.is_zero()) return Fn::zero();
  if (f.is_infinite()) return f;
  if (f.is_monomial()) return Fn::monomial(c * f.coef(), f.power());
  return Fn::make([f, c](double t) { return detail::mul0(c, f(t)); }, f.knots(), scale(f.at_zero(), c),
                  scale(f.at_inf(), c));
}

inline Fn pow(const Fn& f, const Rational& e) {
  if (e.is_zero()) return Fn::constant(1.0);
  if (e == Rational(1)) return f;
  if (f.is_zero()) return e.sign() > 0 ? Fn::zero() : Fn::infinite("negative power of the zero function");
  if (f.is_infinite()) return e.sign() > 0 ? f : Fn::zero();
  if (f.is_monomial()) return Fn::monomial(std::pow(f.coef(), e.to_double()), f.power() * e);
  double ed = e.to_double();
  return Fn::make([f, ed](double t) { return detail::pow0(f(t), ed); }, f.knots(), pow(f.at_zero(), e),
                  pow(f.at_inf(), e));
}

inline Fn reciprocal(const Fn& f) { return pow(f, Rational(-1)); }

inline Fn operator+(const Fn& f, const Fn& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.is_infinite()) return f;
  if (g.is_infinite()) return g;
  if (f.is_monomial() && g.is_monomial() && f.power() == g.power())
    return Fn::monomial(f.coef() + g.coef(), f.power());
  return Fn::make([f, g](double t) { return f(t) + g(t); }, detail::merge_knots(f.knots(), g.knots()),
                  add(f.at_zero(), g.at_zero(), End::Zero), add(f.at_inf(), g.at_inf(), End::Infinity));
}

// t -> f(1/t)
inline Fn recip_arg(const Fn& f) {
  if (f.is_zero() || f.is_infinite()) return f;
  if (f.is_monomial()) return Fn::monomial(f.coef(), -f.power());
  std::vector<double> k;
  for (double x : f.knots()) k.push_back(1.0 / x);
  return Fn::make([f](double t) { return f(1.0 / t); }, std::move(k), reflect(f.at_inf()), reflect(f.at_zero()));
}

// t -> f(t^k), k > 0
inline Fn pow_arg(const Fn& f, const Rational& k) {
  if (k.sign() <= 0) throw std::invalid_argument("pow_arg needs a positive exponent");
  if (f.is_zero() || f.is_infinite() || k == Rational(1)) return f;
  if (f.is_monomial()) return Fn::monomial(f.coef(), f.power() * k);
  double kd = k.to_double();
  std::vector<double> kn;
  for (double x : f.knots()) kn.push_back(std::pow(x, 1.0 / kd));
  return Fn::make([f, kd](double t) { return f(std::pow(t, kd)); }, std::move(kn), compose_power(f.at_zero(), k),
                  compose_power(f.at_inf(), k));
}

// t -> f(c t), c > 0
inline Fn scale_arg(const Fn& f, double c) {
  if (!(c > 0) || std::isinf(c)) throw std::invalid_argument("scale_arg needs a positive finite factor");
  if (f.is_zero() || f.is_infinite() || c == 1.0) return f;
  if (f.is_monomial()) return Fn::monomial(f.coef() * std::pow(c, f.power().to_double()), f.power());
  std::vector<double> kn;
  for (double x : f.knots()) kn.push_back(x / c);
  auto adj = [c](Asymptote a) {
    if (a.is_regular()) a.coef *= std::pow(c, a.power.to_double());
    return a;
  };
  return Fn::make([f, c](double t) { return f(c * t); }, std::move(kn), adj(f.at_zero()), adj(f.at_inf()));
}

inline Fn power_fn(Rational a) { return Fn::monomial(1.0, a); }

namespace detail {

inline std::string describe_divergence(const Asymptote& a, End e) {
  return std::string("divergent at ") + (e == End::Zero ? "0" : "infinity") + ", integrand ~ " + a.str();
}

inline double segment_integral(const Fn& f, double a, double b) {
  if (std::isinf(b)) return quad::infinite_segment(f, a);
  return quad::finite_segment(f, a, b);
}

inline double checked(double v) {
  if (std::isnan(v)) throw std::runtime_error("quadrature produced NaN");
  return v;
}

}  // namespace detail

// Integral over [a, b] with b possibly infinite, certified via asymptotes.
inline ExtReal integrate(const Fn& f, double a, double b) {
  if (!(b > a)) return ExtReal::zero();
  if (f.is_zero()) return ExtReal::zero();
  if (f.is_infinite()) return ExtReal::infinite(f.why());
  if (a == 0.0 && !integrable(f.at_zero(), End::Zero))
    return ExtReal::infinite(detail::describe_divergence(f.at_zero(), End::Zero));
  if (std::isinf(b) && !integrable(f.at_inf(), End::Infinity))
    return ExtReal::infinite(detail::describe_divergence(f.at_inf(), End::Infinity));
  if (f.is_monomial()) {
    double p1 = f.power().to_double() + 1.0;
    double c = f.coef();
    if (f.power() == Rational(-1)) return ExtReal::finite(c * std::log(b / a));
    double hi = std::isinf(b) ? 0.0 : std::pow(b, p1);
    double lo = a == 0.0 ? 0.0 : std::pow(a, p1);
    return ExtReal::finite(c * (hi - lo) / p1);
  }
  try {
    std::vector<double> cuts{a};
    for (double k : f.knots())
      if (k > a && k < b) cuts.push_back(k);
    cuts.push_back(b);
    if (cuts.size() == 2 && a == 0.0 && std::isinf(b)) cuts = {0.0, 1.0, b};
    double s = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += detail::segment_integral(f, cuts[i], cuts[i + 1]);
    if (std::isinf(s)) return ExtReal::infinite("integrand infinite on a set of positive measure");
    return ExtReal::finite(detail::checked(s));
  } catch (const std::exception& e) {
    return ExtReal::indeterminate(std::string("quadrature failed: ") + e.what());
  }
}

// F(t) = int_0^t f
inline Fn antiderivative(const Fn& f) {
  if (f.is_zero()) return f;
  if (f.is_infinite()) return f;
  if (!integrable(f.at_zero(), End::Zero))
    return Fn::infinite(detail::describe_divergence(f.at_zero(), End::Zero));
  if (f.is_monomial()) {
    double p1 = f.power().to_double() + 1.0;
    return Fn::monomial(f.coef() / p1, f.power() + 1);
  }
  auto knots = f.knots();
  auto cum = std::make_shared<std::vector<double>>();
  double acc = 0;
  double prev = 0;
  for (double k : knots) {
    acc += quad::finite_segment(f, prev, k);
    cum->push_back(acc);
    prev = k;
  }
  Asymptote atinf;
  if (integrable(f.at_inf(), End::Infinity)) {
    double total = acc + (knots.empty() ? integrate(f, 0.0, detail::kInf).value()
                                        : quad::infinite_segment(f, knots.back()));
    atinf = std::isinf(total) ? Asymptote::infinite() : Asymptote::constant(total);
  } else {
    atinf = divergent_integral_at_inf(f.at_inf());
  }
  auto eval = [f, knots, cum](double t) {
    if (!(t > 0)) return 0.0;
    if (std::isinf(t)) return detail::kInf;
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t i = static_cast<std::size_t>(it - knots.begin());
    if (i == 0) return quad::finite_segment(f, 0.0, t);
    return (*cum)[i - 1] + quad::finite_segment(f, knots[i - 1], t);
  };
  return Fn::make(eval, knots, head_integral_at_zero(f.at_zero()), atinf);
}

// G(t) = int_t^inf f
inline Fn tail_integral(const Fn& f) {
  if (f.is_zero()) return f;
  if (f.is_infinite()) return f;
  if (!integrable(f.at_inf(), End::Infinity))
    return Fn::infinite(detail::describe_divergence(f.at_inf(), End::Infinity));
  if (f.is_monomial()) {
    double p1 = f.power().to_double() + 1.0;
    return Fn::monomial(f.coef() / -p1, f.power() + 1);
  }
  auto knots = f.knots();
  auto cum = std::make_shared<std::vector<double>>(knots.size());
  double acc = 0;
  for (std::size_t j = knots.size(); j-- > 0;) {
    acc += j + 1 == knots.size() ? quad::infinite_segment(f, knots[j]) : quad::finite_segment(f, knots[j], knots[j + 1]);
    (*cum)[j] = acc;
  }
  Asymptote at0;
  if (integrable(f.at_zero(), End::Zero)) {
    double total = knots.empty() ? integrate(f, 0.0, detail::kInf).value() : acc + quad::finite_segment(f, 0.0, knots[0]);
    at0 = std::isinf(total) ? Asymptote::infinite() : Asymptote::constant(total);
  } else {
    at0 = divergent_integral_at_zero(f.at_zero());
  }
  auto eval = [f, knots, cum](double t) {
    if (std::isinf(t)) return 0.0;
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t i = static_cast<std::size_t>(it - knots.begin());
    if (i == knots.size()) return quad::infinite_segment(f, t);
    return quad::finite_segment(f, t, knots[i]) + (*cum)[i];
  };
  return Fn::make(eval, knots, at0, tail_integral_at_inf(f.at_inf()));
}

namespace detail {

inline double limit_value(const Asymptote& a, End e) {
  int g = growth(a, e);
  if (g > 0) return kInf;
  if (g < 0) return 0.0;
  return a.coef;
}

// sup of f over [a, b] (b may be inf; a may be 0), with end limits from asymptotes.
inline double segment_sup(const Fn& f, double a, double b) {
  double best = 0.0;
  double lo = a, hi = b;
  if (a == 0.0) {
    best = std::max(best, limit_value(f.at_zero(), End::Zero));
    lo = std::isinf(b) ? 1e-12 : std::min(b, 1.0) * 1e-12;
  }
  if (std::isinf(b)) {
    best = std::max(best, limit_value(f.at_inf(), End::Infinity));
    hi = std::max(lo, 1.0) * 1e12;
  }
  int samples = 24;
  if (lo > 0 && hi / lo > 1e3) samples = static_cast<int>(std::min(400.0, 6.0 * std::log10(hi / lo)));
  auto m = quad::maximize(f, lo, hi, samples);
  if (a > 0) best = std::max(best, f(a));
  return std::max(best, m.second);
}

}  // namespace detail

inline ExtReal supremum(const Fn& f) {
  if (f.is_zero()) return ExtReal::zero();
  if (f.is_infinite()) return ExtReal::infinite(f.why());
  if (growth(f.at_zero(), End::Zero) > 0) return ExtReal::infinite("unbounded at 0, ~ " + f.at_zero().str());
  if (growth(f.at_inf(), End::Infinity) > 0) return ExtReal::infinite("unbounded at infinity, ~ " + f.at_inf().str());
  if (f.is_monomial()) return ExtReal::finite(f.coef());
  try {
    const auto& k = f.knots();
    std::vector<double> cuts{0.0};
    cuts.insert(cuts.end(), k.begin(), k.end());
    cuts.push_back(detail::kInf);
    double best = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) best = std::max(best, detail::segment_sup(f, cuts[i], cuts[i + 1]));
    if (std::isinf(best)) return ExtReal::infinite("infinite on a set of positive measure");
    return ExtReal::finite(detail::checked(best));
  } catch (const std::exception& e) {
    return ExtReal::indeterminate(std::string("maximization failed: ") + e.what());
  }
}

namespace detail {

// Running supremum in one direction, cached at knots.
inline Fn running_sup(const Fn& f, bool from_left) {
  if (f.is_zero() || f.is_infinite()) return f;
  if (from_left && growth(f.at_zero(), End::Zero) > 0) return Fn::infinite("unbounded at 0");
  if (!from_left && growth(f.at_inf(), End::Infinity) > 0) return Fn::infinite("unbounded at infinity");
  auto knots = f.knots();
  std::size_t n = knots.size();
  auto best = std::make_shared<std::vector<double>>(n, 0.0);
  if (from_left) {
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc = std::max(acc, segment_sup(f, i == 0 ? 0.0 : knots[i - 1], knots[i]));
      (*best)[i] = acc;
    }
  } else {
    double acc = 0;
    for (std::size_t j = n; j-- > 0;) {
      acc = std::max(acc, segment_sup(f, knots[j], j + 1 == n ? kInf : knots[j + 1]));
      (*best)[j] = acc;
    }
  }
  double global = 0;
  if (n == 0) {
    global = segment_sup(f, 0.0, kInf);
  } else {
    global = from_left ? std::max((*best)[n - 1], segment_sup(f, knots[n - 1], kInf))
                       : std::max((*best)[0], segment_sup(f, 0.0, knots[0]));
  }
  Asymptote at0, atinf;
  if (from_left) {
    at0 = f.at_zero();
    atinf = growth(f.at_inf(), End::Infinity) > 0 ? f.at_inf() : Asymptote::constant(global);
  } else {
    atinf = f.at_inf();
    at0 = growth(f.at_zero(), End::Zero) > 0 ? f.at_zero() : Asymptote::constant(global);
  }
  auto eval = [f, knots, best, from_left](double t) {
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t i = static_cast<std::size_t>(it - knots.begin());
    if (from_left) {
      double lo = i == 0 ? 0.0 : knots[i - 1];
      double prev = i == 0 ? 0.0 : (*best)[i - 1];
      return std::max({prev, segment_sup(f, lo, t), f(t)});
    }
    double hi = i == knots.size() ? kInf : knots[i];
    double next = i == knots.size() ? 0.0 : (*best)[i];
    return std::max({next, segment_sup(f, t, hi), f(t)});
  };
  return Fn::make(eval, knots, at0, atinf);
}

}  // namespace detail

// t -> sup_{0 < y <= t} f(y)
inline Fn head_sup(const Fn& f) { return detail::running_sup(f, true); }
// t -> sup_{y >= t} f(y)
inline Fn tail_sup(const Fn& f) { return detail::running_sup(f, false); }

// 1 + log_+(t)
inline Fn one_plus_log_plus() {
  return Fn::make([](double t) { return 1.0 + std::max(0.0, std::log(t)); }, {1.0}, Asymptote::constant(1.0),
                  Asymptote::monomial(1.0, 0, 1));
}

}  // namespace wfi
