#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "rational.hpp"

namespace wfi {

enum class End { Zero, Infinity };

// Leading behaviour of a non-negative function at one end of (0, inf):
//   coef * t^power * L^log_power * LL^loglog_power,
// with L = log t at infinity and L = log(1/t) at zero, LL = log L.
struct Asymptote {
  enum class Kind { Zero, Regular, Infinite };
  Kind kind = Kind::Zero;
  double coef = 0.0;
  Rational power, log_power, loglog_power;

  static Asymptote zero() { return {}; }
  static Asymptote infinite() {
    Asymptote a;
    a.kind = Kind::Infinite;
    a.coef = std::numeric_limits<double>::infinity();
    return a;
  }
  static Asymptote monomial(double c, Rational p, Rational lp = 0, Rational llp = 0) {
    if (c == 0.0) return zero();
    if (std::isinf(c)) return infinite();
    Asymptote a;
    a.kind = Kind::Regular;
    a.coef = c;
    a.power = p;
    a.log_power = lp;
    a.loglog_power = llp;
    return a;
  }
  static Asymptote constant(double c) { return monomial(c, 0); }

  bool is_zero() const { return kind == Kind::Zero; }
  bool is_infinite() const { return kind == Kind::Infinite; }
  bool is_regular() const { return kind == Kind::Regular; }
  bool is_constant() const {
    return is_regular() && power.is_zero() && log_power.is_zero() && loglog_power.is_zero();
  }

  std::string str() const {
    if (is_zero()) return "0";
    if (is_infinite()) return "inf";
    std::ostringstream os;
    os << coef << "*t^" << power.str();
    if (!log_power.is_zero()) os << "*L^" << log_power.str();
    if (!loglog_power.is_zero()) os << "*LL^" << loglog_power.str();
    return os.str();
  }
};

namespace detail {

inline std::tuple<Rational, Rational, Rational> growth_key(const Asymptote& a, End e) {
  return {e == End::Infinity ? a.power : -a.power, a.log_power, a.loglog_power};
}

inline int lex_sign(const std::tuple<Rational, Rational, Rational>& k) {
  if (std::get<0>(k).sign() != 0) return std::get<0>(k).sign();
  if (std::get<1>(k).sign() != 0) return std::get<1>(k).sign();
  return std::get<2>(k).sign();
}

}  // namespace detail

// +1: tends to infinity, 0: tends to a positive constant, -1: tends to zero.
inline int growth(const Asymptote& a, End e) {
  if (a.is_zero()) return -1;
  if (a.is_infinite()) return 1;
  return detail::lex_sign(detail::growth_key(a, e));
}

inline Asymptote operator*(const Asymptote& a, const Asymptote& b) {
  if (a.is_zero() || b.is_zero()) return Asymptote::zero();
  if (a.is_infinite() || b.is_infinite()) return Asymptote::infinite();
  return Asymptote::monomial(a.coef * b.coef, a.power + b.power, a.log_power + b.log_power,
                             a.loglog_power + b.loglog_power);
}

inline Asymptote scale(const Asymptote& a, double c) {
  if (c == 0.0) return Asymptote::zero();
  if (!a.is_regular()) return a;
  Asymptote r = a;
  r.coef *= c;
  return r;
}

inline Asymptote pow(const Asymptote& a, const Rational& e) {
  if (e.is_zero()) return Asymptote::constant(1.0);
  if (a.is_zero()) return e.sign() > 0 ? Asymptote::zero() : Asymptote::infinite();
  if (a.is_infinite()) return e.sign() > 0 ? Asymptote::infinite() : Asymptote::zero();
  return Asymptote::monomial(std::pow(a.coef, e.to_double()), a.power * e, a.log_power * e, a.loglog_power * e);
}

// Leading term of a sum of non-negative functions.
inline Asymptote add(const Asymptote& a, const Asymptote& b, End e) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_infinite() || b.is_infinite()) return Asymptote::infinite();
  auto ka = detail::growth_key(a, e);
  auto kb = detail::growth_key(b, e);
  if (ka == kb) return Asymptote::monomial(a.coef + b.coef, a.power, a.log_power, a.loglog_power);
  return ka > kb ? a : b;
}

// Behaviour of t -> f(1/t) at the opposite end.
inline Asymptote reflect(const Asymptote& a) {
  if (!a.is_regular()) return a;
  Asymptote r = a;
  r.power = -a.power;
  return r;
}

// Behaviour of t -> f(t^k), k > 0, at the same end.
inline Asymptote compose_power(const Asymptote& a, const Rational& k) {
  if (!a.is_regular()) return a;
  Asymptote r = a;
  r.power = a.power * k;
  r.coef = a.coef * std::pow(k.to_double(), a.log_power.to_double());
  return r;
}

inline bool integrable(const Asymptote& a, End e) {
  if (a.is_zero()) return true;
  if (a.is_infinite()) return false;
  Asymptote shifted = a;
  shifted.power = a.power + 1;
  auto k = detail::growth_key(shifted, e);
  // integrable iff t*f(t) ~ t^0 L^b LL^m with (0, b, m) < (0, -1, -1) lexicographically
  if (std::get<0>(k).sign() != 0) return std::get<0>(k).sign() < 0;
  if (std::get<1>(k) != Rational(-1)) return std::get<1>(k) < Rational(-1);
  return std::get<2>(k) < Rational(-1);
}

namespace detail {

// Leading term of the integral of a over the side of the end where it lives,
// i.e. of int_t^{end} a (integrable case) or int_{t0}^{t} a (divergent case).
inline Asymptote integrated(const Asymptote& a, End e) {
  if (a.is_zero()) return Asymptote::zero();
  if (a.is_infinite()) return Asymptote::infinite();
  Rational ap1 = a.power + 1;
  if (!ap1.is_zero()) {
    double c = std::abs(a.coef / ap1.to_double());
    return Asymptote::monomial(c, ap1, a.log_power, a.loglog_power);
  }
  Rational bp1 = a.log_power + 1;
  if (!bp1.is_zero()) {
    double c = std::abs(a.coef / bp1.to_double());
    return Asymptote::monomial(c, 0, bp1, a.loglog_power);
  }
  Rational mp1 = a.loglog_power + 1;
  if (!mp1.is_zero()) {
    double c = std::abs(a.coef / mp1.to_double());
    return Asymptote::monomial(c, 0, 0, mp1);
  }
  (void)e;
  throw std::domain_error("integral of t^-1 L^-1 LL^-1 is not representable");
}

}  // namespace detail

// t -> int_0^t f near zero (requires integrability at zero).
inline Asymptote head_integral_at_zero(const Asymptote& a) { return detail::integrated(a, End::Zero); }
// t -> int_t^inf f near infinity (requires integrability at infinity).
inline Asymptote tail_integral_at_inf(const Asymptote& a) { return detail::integrated(a, End::Infinity); }
// t -> int_c^t f near infinity when f is not integrable there.
inline Asymptote divergent_integral_at_inf(const Asymptote& a) { return detail::integrated(a, End::Infinity); }
// t -> int_t^c f near zero when f is not integrable there.
inline Asymptote divergent_integral_at_zero(const Asymptote& a) { return detail::integrated(a, End::Zero); }

}  // namespace wfi
