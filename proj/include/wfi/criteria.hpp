#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "extreal.hpp"
#include "fn.hpp"
#include "legs.hpp"
#include "rational.hpp"
#include "rearrange.hpp"
#include "step_function.hpp"
#include "weight.hpp"

namespace wfi {

enum class Regime { I, II, III, IV, V, DegenerateQInf, DegenerateP1 };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::I: return "I";
    case Regime::II: return "II";
    case Regime::III: return "III";
    case Regime::IV: return "IV";
    case Regime::V: return "V";
    case Regime::DegenerateQInf: return "DegenerateQInf";
    case Regime::DegenerateP1: return "DegenerateP1";
  }
  return "?";
}

inline const Rational kHalf(1, 2);

struct ExponentConfig {
  Exponent p = Exponent::finite(2);
  Exponent q = Exponent::finite(2);
  int d = 1;

  ExponentConfig() = default;
  ExponentConfig(Exponent p_, Exponent q_, int d_ = 1) : p(p_), q(q_), d(d_) {
    if (p.inv() > Rational(1)) throw std::invalid_argument("p must be at least 1, got " + p.str());
    if (d < 1) throw std::invalid_argument("dimension must be positive");
  }
  static ExponentConfig parse(std::string_view p, std::string_view q, int d = 1) {
    return ExponentConfig(Exponent::parse(p), Exponent::parse(q), d);
  }

  Exponent p_prime() const { return p.conjugate(); }
  Exponent q_prime() const {
    if (q.inv() > Rational(1)) throw std::domain_error("q' is undefined for q < 1");
    return q.conjugate();
  }
  bool has_r() const { return q < p; }
  Exponent r() const {
    if (!has_r()) throw std::domain_error("r is undefined unless q < p");
    return Exponent::from_reciprocal(q.inv() - p.inv());
  }
  Exponent p_sharp() const { return Exponent::from_reciprocal((kHalf - p.inv()).abs()); }
  Exponent q_sharp() const { return Exponent::from_reciprocal((kHalf - q.inv()).abs()); }

  std::string str() const { return "p=" + p.str() + " q=" + q.str() + " d=" + std::to_string(d); }
};

inline Regime classify(const ExponentConfig& c) {
  const Rational ip = c.p.inv(), iq = c.q.inv();
  if (c.q.is_infinite()) return Regime::DegenerateQInf;
  if (ip == Rational(1)) return Regime::DegenerateP1;
  if (c.p <= c.q) return Regime::I;
  // max(q, p') >= 2  <=>  q >= 2 or p <= 2
  if (iq <= Rational(1) && (iq <= kHalf || ip >= kHalf)) return Regime::II;
  if (iq > kHalf && ip < kHalf) return c.p.is_infinite() ? Regime::IV : Regime::III;
  if (iq > Rational(1) && ip >= kHalf) return Regime::V;
  throw std::logic_error("unclassified exponent pair " + c.str());
}

// Rearranged weights on the half-line, in the measure where the unit ball has measure 1.
struct Profiles {
  StepFunction ustar;  // u^*
  StepFunction vstar;  // v_*
};

inline Profiles rearranged(const WeightSpec& u, const WeightSpec& v, int d) {
  if (u.role() != Role::U || v.role() != Role::V) throw std::invalid_argument("weights given in the wrong roles");
  for (const WeightSpec* w : {&u, &v})
    if (w->dim() != 1 && w->dim() != d)
      throw std::invalid_argument("weight " + w->str() + " has dimension " + std::to_string(w->dim()) +
                                  " but the configuration has d=" + std::to_string(d));
  return {circ_profile(u.profile(), d), lower_star(v.profile(), d)};
}

// U(t) = int_0^t u^{*,q}
inline Fn U_of(const StepFunction& ustar, const Exponent& q) {
  if (q.is_infinite()) throw std::domain_error("U needs finite q");
  return pow_compose(ustar, q.value()).antiderivative_fn();
}
inline Fn U_func(const WeightSpec& u, const Exponent& q, int d = 1) {
  return U_of(circ_profile(u.profile(), std::max(d, u.dim())), q);
}

// xi(t) = U(t) + t^{q/2} (int_t^inf u^{*,q#})^{q/q#}, q < 2
inline Fn xi_of(const StepFunction& ustar, const Exponent& q) {
  if (!(q < Exponent::finite(2))) throw std::domain_error("xi needs q < 2");
  Rational qv = q.value();
  Rational qs = (q.inv() - kHalf).reciprocal();
  Fn T = pow_compose(ustar, qs).tail_integral_fn();
  return U_of(ustar, q) + power_fn(qv / 2) * pow(T, qv / qs);
}
inline Fn xi_func(const WeightSpec& u, const Exponent& q, int d = 1) {
  return xi_of(circ_profile(u.profile(), std::max(d, u.dim())), q);
}

// (sup xi/U, sup U/xi)
inline std::pair<ExtReal, ExtReal> xi_U_bounds(const StepFunction& ustar, const Exponent& q) {
  Fn xi = xi_of(ustar, q), U = U_of(ustar, q);
  if (U.is_zero() || U.is_infinite() || xi.is_infinite()) {
    auto why = ExtReal::indeterminate(U.is_zero() ? "U vanishes" : "U or xi is infinite");
    return {why, why};
  }
  return {supremum(xi * reciprocal(U)), supremum(U * reciprocal(xi))};
}
inline std::pair<ExtReal, ExtReal> xi_U_bounds(const WeightSpec& u, const Exponent& q, int d = 1) {
  return xi_U_bounds(circ_profile(u.profile(), std::max(d, u.dim())), q);
}

// int_1^inf u^{*,q#}
inline ExtReal tail_uqsharp(const Profiles& w, const ExponentConfig& c) {
  Exponent qs = c.q_sharp();
  if (qs.is_infinite()) throw std::domain_error("q# is infinite for q = 2");
  return integrate(pow_compose(w.ustar, qs.value()), 1.0, detail::kInf);
}

inline ExtReal C3(const Profiles& w, const ExponentConfig& c) {
  Fn a = head_norm(w.ustar, c.q);
  Fn b = head_norm(recip(w.vstar), c.p_prime());
  return supremum(a * recip_arg(b));
}

inline ExtReal C4(const Profiles& w, const ExponentConfig& c) {
  Exponent r = c.r();
  if (c.q.is_infinite()) throw std::domain_error("C4 needs finite q");
  Rational ir = r.inv();
  Rational r_p = c.p.inv() / ir;
  Rational r_pp = (Rational(1) - c.p.inv()) / ir;
  StepFunction uq = pow_compose(w.ustar, c.q.value());
  Fn f = uq.to_fn() * pow(uq.antiderivative_fn(), r_p);
  if (!r_pp.is_zero()) {
    Fn wv = pow_compose(w.vstar, -c.p_prime().value(), ZeroPolicy::ToInfinity).antiderivative_fn();
    f = f * pow(recip_arg(wv), r_pp);
  }
  return pow(integrate(f, 0.0, detail::kInf), ir.to_double());
}

namespace detail {

// g = u^{*,q} U^{q#/2} xi^{-q#/2} t^{-q/2}; infinite when xi is.
inline Fn g_kernel(const StepFunction& ustar, const ExponentConfig& c) {
  Rational qv = c.q.value();
  Rational qs = c.q_sharp().value();
  StepFunction uq = pow_compose(ustar, qv);
  Fn xi = xi_of(ustar, c.q);
  if (xi.is_infinite()) return xi;
  return uq.to_fn() * pow(uq.antiderivative_fn(), qs / 2) * pow(xi, -qs / 2) * power_fn(-qv / 2);
}

inline ExtReal tail_certificate(const ExtReal& tail) {
  return ExtReal::infinite("TailUqsharp divergent: " + tail.reason());
}

}  // namespace detail

inline ExtReal C6(const Profiles& w, const ExponentConfig& c) {
  ExtReal tail = tail_uqsharp(w, c);
  if (tail.is_infinite()) return detail::tail_certificate(tail);
  Rational ir = c.r().inv();
  Rational pv = c.p.value();
  Rational ps = c.p_sharp().value();
  Fn g = detail::g_kernel(w.ustar, c);
  Fn G = tail_integral(g);
  Fn vf = w.vstar.to_fn();
  Fn V = pow_compose(w.vstar, pv).antiderivative_fn();
  Fn h = pow(vf, ps * (pv / 2 - 1)) * pow(V, -ps / 2) * power_fn(ps / 2);
  Fn H = tail_integral(h);
  Fn f = g * pow(G, c.p.inv() / ir) * pow(recip_arg(H), ps.reciprocal() / ir);
  return pow(integrate(f, 0.0, detail::kInf), ir.to_double());
}

inline ExtReal C7(const Profiles& w, const ExponentConfig& c) {
  ExtReal tail = tail_uqsharp(w, c);
  if (tail.is_infinite()) return detail::tail_certificate(tail);
  Rational qv = c.q.value();
  Fn g = detail::g_kernel(w.ustar, c);
  Fn inner = recip_arg(recip(w.vstar).antiderivative_fn());
  Fn P = antiderivative(pow(inner, Rational(2)));
  return pow(integrate(g * pow(P, qv / 2), 0.0, detail::kInf), c.q.inv().to_double());
}

inline ExtReal C9(const Profiles& w, const ExponentConfig& c) {
  ExtReal tail = tail_uqsharp(w, c);
  if (tail.is_infinite()) return detail::tail_certificate(tail);
  Rational ir = c.r().inv();
  Rational rv = ir.reciprocal();
  Fn g = detail::g_kernel(w.ustar, c);
  Fn G = tail_integral(g);
  Fn V = pow_compose(w.vstar, c.p.value()).antiderivative_fn();
  Fn m = power_fn(rv / 2) * pow(V, -(c.p.inv() * rv));
  Fn S = recip_arg(tail_sup(m));
  Fn f = g * pow(G, c.p.inv() / ir) * S;
  return pow(integrate(f, 0.0, detail::kInf), ir.to_double());
}

// ||u||_q ||1/v||_{p'}
inline ExtReal degenerate_constant(const Profiles& w, const ExponentConfig& c) {
  return full_norm(w.ustar, c.q) * full_norm(recip(w.vstar), c.p_prime());
}

// sup over centered intervals |A| = s, |B| = 1/s of (int_A u^q)^{1/q} (int_B v^{-p'})^{1/p'},
// Lebesgue measure on the line.
inline ExtReal cube_pair_condition(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c) {
  if (c.d != 1) throw std::domain_error("the cube condition is evaluated for d=1 only");
  const Exponent pp = c.p_prime();
  Fn a = scale(scale_arg(head_norm(u.profile(), c.q), 0.5), std::pow(2.0, c.q.inv().to_double()));
  Fn b = scale(scale_arg(head_norm(recip(v.profile()), pp), 0.5), std::pow(2.0, pp.inv().to_double()));
  return supremum(a * recip_arg(b));
}

struct CriterionReport {
  ExponentConfig cfg;
  Regime regime = Regime::I;
  std::map<std::string, ExtReal> constants;
  std::vector<std::string> required;
  bool holds = false;
  Finiteness verdict = Finiteness::Indeterminate;
  ExtReal cube = ExtReal::indeterminate("not computed");
  std::string u, v;

  // The constant that is equivalent to the best constant in this regime.
  ExtReal regime_constant() const {
    switch (regime) {
      case Regime::I: return constants.at("C3");
      case Regime::II: return constants.at("C4");
      case Regime::III: return constants.at("C5");
      case Regime::IV: return constants.at("C7");
      case Regime::V: return constants.at("C8");
      case Regime::DegenerateQInf:
      case Regime::DegenerateP1: return constants.at("degenerate");
    }
    return ExtReal::indeterminate("unknown regime");
  }
};

namespace detail {

template <class F>
ExtReal guarded_constant(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return ExtReal::indeterminate(e.what());
  }
}

}  // namespace detail

inline CriterionReport evaluate(const Profiles& w, const ExponentConfig& c) {
  CriterionReport rep;
  rep.cfg = c;
  rep.regime = classify(c);
  auto put = [&](const std::string& name, auto&& fn) {
    rep.constants[name] = detail::guarded_constant(fn);
    return rep.constants[name];
  };
  put("C3", [&] { return C3(w, c); });
  switch (rep.regime) {
    case Regime::DegenerateQInf:
    case Regime::DegenerateP1:
      put("degenerate", [&] { return degenerate_constant(w, c); });
      rep.required = {"degenerate"};
      break;
    case Regime::I: rep.required = {"C3"}; break;
    case Regime::II:
      put("C4", [&] { return C4(w, c); });
      rep.required = {"C4"};
      break;
    case Regime::III: {
      put("TailUqsharp", [&] { return tail_uqsharp(w, c); });
      ExtReal a = put("C4", [&] { return C4(w, c); });
      ExtReal b = put("C6", [&] { return C6(w, c); });
      rep.constants["C5"] = a + b;
      rep.required = {"TailUqsharp", "C5"};
      break;
    }
    case Regime::IV:
      put("TailUqsharp", [&] { return tail_uqsharp(w, c); });
      put("C7", [&] { return C7(w, c); });
      rep.required = {"TailUqsharp", "C7"};
      break;
    case Regime::V: {
      put("TailUqsharp", [&] { return tail_uqsharp(w, c); });
      ExtReal a = put("C4", [&] { return C4(w, c); });
      ExtReal b = put("C9", [&] { return C9(w, c); });
      rep.constants["C8"] = a + b;
      rep.required = {"TailUqsharp", "C8"};
      break;
    }
  }
  bool any_inf = false, any_ind = false;
  for (const auto& k : rep.required) {
    const ExtReal& x = rep.constants.at(k);
    any_inf = any_inf || x.is_infinite();
    any_ind = any_ind || x.is_indeterminate();
  }
  rep.verdict = any_inf ? Finiteness::Infinite : any_ind ? Finiteness::Indeterminate : Finiteness::Finite;
  rep.holds = rep.verdict == Finiteness::Finite;
  return rep;
}

inline CriterionReport evaluate(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c) {
  CriterionReport rep = evaluate(rearranged(u, v, c.d), c);
  rep.u = u.str();
  rep.v = v.str();
  if (c.d == 1) rep.cube = detail::guarded_constant([&] { return cube_pair_condition(u, v, c); });
  else rep.cube = ExtReal::indeterminate("the cube condition is evaluated for d=1 only");
  return rep;
}

struct DualProblem {
  WeightSpec u, v;
  ExponentConfig cfg;
};

// (u, v, p, q) -> (1/v, 1/u, q', p')
inline DualProblem dual_config(const WeightSpec& u, const WeightSpec& v, const ExponentConfig& c) {
  if (c.q.inv() > Rational(1)) throw std::invalid_argument("duality needs q >= 1");
  return {v.reciprocal(), u.reciprocal(), ExponentConfig(c.q_prime(), c.p_prime(), c.d)};
}

}  // namespace wfi
