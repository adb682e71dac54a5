#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "asymptote.hpp"
#include "extreal.hpp"
#include "fn.hpp"
#include "quadrature.hpp"
#include "rational.hpp"

namespace wfi {

struct TailSpec {
  enum class Kind { Zero, Power, PowerLog };
  Kind kind = Kind::Zero;
  Rational a, b;

  static TailSpec zero() { return {}; }
  static TailSpec power(Rational a) { return {Kind::Power, a, 0}; }
  static TailSpec powerlog(Rational a, Rational b) { return {Kind::PowerLog, a, b}; }
};

struct LeadSpec {
  enum class Kind { None, Power, PowerLog };
  Kind kind = Kind::None;
  Rational a, b;

  static LeadSpec none() { return {}; }
  static LeadSpec power(Rational a) { return {Kind::Power, a, 0}; }
  static LeadSpec powerlog(Rational a, Rational b) { return {Kind::PowerLog, a, b}; }
};

struct ImplicitData {
  std::function<double(double)> eval;
  Asymptote at0, atinf;
  int direction = 2;  // -1 non-increasing, +1 non-decreasing, 0 constant, 2 unknown
};

// One analytic piece. Power pieces evaluate
//   offset + coef * u^{-decay} * log(e + u^{log_scale})^{-log_decay},
// with u = t - shift, or u = shift - t when reflected.
struct Piece {
  enum class Kind { Constant, Power, Implicit };
  Kind kind = Kind::Constant;
  double coef = 0.0;
  double offset = 0.0;
  double shift = 0.0;
  bool reflected = false;
  Rational decay, log_decay, log_scale = 1;
  std::shared_ptr<const ImplicitData> implicit;

  static Piece constant(double c) {
    Piece p;
    p.coef = c;
    return p;
  }
  static Piece power(double c, Rational a, Rational b = 0, Rational sigma = 1, double shift = 0.0, double offset = 0.0,
                     bool reflected = false) {
    if (a.is_zero() && b.is_zero()) return constant(c + offset);
    if (c == 0.0) return constant(offset);
    Piece p;
    p.kind = Kind::Power;
    p.coef = c;
    p.decay = a;
    p.log_decay = b;
    p.log_scale = sigma;
    p.shift = shift;
    p.offset = offset;
    p.reflected = reflected;
    return p;
  }
  static Piece make_implicit(std::function<double(double)> f, Asymptote at0, Asymptote atinf, int dir) {
    Piece p;
    p.kind = Kind::Implicit;
    auto d = std::make_shared<ImplicitData>();
    d->eval = std::move(f);
    d->at0 = at0;
    d->atinf = atinf;
    d->direction = dir;
    p.implicit = std::move(d);
    return p;
  }

  bool is_constant() const { return kind == Kind::Constant; }
  bool is_pure_power() const { return kind == Kind::Power && log_decay.is_zero(); }

  double u_of(double t) const { return std::max(0.0, reflected ? shift - t : t - shift); }

  double core(double u) const {
    double a = decay.to_double();
    double v;
    if (u == 0.0) {
      if (a > 0) return std::numeric_limits<double>::infinity();
      if (a < 0) return 0.0;
      v = 1.0;
      if (!log_decay.is_zero()) {
        if (log_scale.sign() > 0) return 1.0;
        return log_decay.sign() > 0 ? 0.0 : std::numeric_limits<double>::infinity();
      }
      return v;
    }
    if (std::isinf(u)) {
      if (a > 0) return 0.0;
      if (a < 0) return std::numeric_limits<double>::infinity();
      if (log_decay.is_zero() || log_scale.sign() < 0) return 1.0;
      return log_decay.sign() > 0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    v = a == 0.0 ? 1.0 : std::pow(u, -a);
    if (!log_decay.is_zero()) v *= std::pow(std::log(M_E + std::pow(u, log_scale.to_double())), -log_decay.to_double());
    return v;
  }

  double value(double t) const {
    switch (kind) {
      case Kind::Constant: return coef;
      case Kind::Power: return offset + detail::mul0(coef, core(u_of(t)));
      case Kind::Implicit: return implicit->eval(t);
    }
    return 0.0;
  }

  // Leading behaviour as t -> 0 (piece starting at 0) or t -> inf (unbounded piece).
  Asymptote asymptote(End e) const {
    if (kind == Kind::Constant) return std::isinf(coef) ? Asymptote::infinite() : Asymptote::constant(coef);
    if (kind == Kind::Implicit) return e == End::Zero ? implicit->at0 : implicit->atinf;
    if (e == End::Zero && (shift != 0.0 || reflected)) return Asymptote::constant(value(0.0));
    Asymptote core_asym;
    bool log_active = e == End::Zero ? log_scale.sign() < 0 : log_scale.sign() > 0;
    if (log_active && !log_decay.is_zero()) {
      double sc = std::pow(std::abs(log_scale.to_double()), -log_decay.to_double());
      core_asym = Asymptote::monomial(coef * sc, -decay, -log_decay);
    } else {
      core_asym = Asymptote::monomial(coef, -decay);
    }
    return add(Asymptote::constant(offset), core_asym, e);
  }
};

namespace detail {

inline ExtReal power_primitive_diff(double a, double u1, double u2) {
  // int_{u1}^{u2} u^{-a} du, 0 <= u1 < u2 <= inf
  if (a == 1.0) {
    if (u1 == 0.0 || std::isinf(u2)) return ExtReal::infinite("logarithmic divergence of u^-1");
    return ExtReal::finite(std::log(u2 / u1));
  }
  double e = 1.0 - a;
  if (u1 == 0.0 && e < 0) return ExtReal::infinite("non-integrable power singularity");
  if (std::isinf(u2) && e > 0) return ExtReal::infinite("non-integrable power tail");
  double hi = std::isinf(u2) ? 0.0 : std::pow(u2, e);
  double lo = u1 == 0.0 ? 0.0 : std::pow(u1, e);
  return ExtReal::finite((hi - lo) / e);
}

inline bool log_piece_integrable(const Piece& p, bool at_u_zero) {
  Rational a = p.decay, b = p.log_decay;
  bool log_active = at_u_zero ? p.log_scale.sign() < 0 : p.log_scale.sign() > 0;
  if (at_u_zero) {
    if (a < Rational(1)) return true;
    if (a > Rational(1)) return false;
    return log_active && b > Rational(1);
  }
  if (a > Rational(1)) return true;
  if (a < Rational(1)) return false;
  return log_active && b > Rational(1);
}

}  // namespace detail

// Integral of a piece over [x, y] inside its cell; y may be inf.
inline ExtReal piece_integral(const Piece& p, double x, double y) {
  if (!(y > x)) return ExtReal::zero();
  switch (p.kind) {
    case Piece::Kind::Constant: {
      if (p.coef == 0.0) return ExtReal::zero();
      if (std::isinf(y)) return ExtReal::infinite("non-zero constant on an unbounded interval");
      if (std::isinf(p.coef)) return ExtReal::infinite("infinite value on an interval");
      return ExtReal::finite(p.coef * (y - x));
    }
    case Piece::Kind::Power: {
      ExtReal off = ExtReal::zero();
      if (p.offset != 0.0) {
        if (std::isinf(y)) return ExtReal::infinite("non-zero offset on an unbounded interval");
        off = ExtReal::finite(p.offset * (y - x));
      }
      if (p.coef == 0.0) return off;
      double u1 = p.u_of(x), u2 = p.u_of(y);
      if (p.reflected) std::swap(u1, u2);
      if (p.is_pure_power()) {
        ExtReal core = detail::power_primitive_diff(p.decay.to_double(), u1, u2);
        if (!core.is_finite()) return p.coef > 0 ? core : ExtReal::indeterminate("signed divergent piece");
        return off + ExtReal::finite(p.coef * core.value());
      }
      if (u1 == 0.0 && !detail::log_piece_integrable(p, true))
        return ExtReal::infinite("non-integrable power-log singularity");
      if (std::isinf(u2) && !detail::log_piece_integrable(p, false))
        return ExtReal::infinite("non-integrable power-log tail");
      auto g = [&p](double u) { return p.core(u); };
      double v = std::isinf(u2) ? (u1 == 0.0 ? quad::finite_segment(g, 0.0, 1.0) + quad::infinite_segment(g, 1.0)
                                             : quad::infinite_segment(g, u1))
                                : quad::finite_segment(g, u1, u2);
      return off + ExtReal::finite(p.coef * v);
    }
    case Piece::Kind::Implicit: {
      const auto& d = *p.implicit;
      if (x == 0.0 && !integrable(d.at0, End::Zero)) return ExtReal::infinite("non-integrable at 0");
      if (std::isinf(y) && !integrable(d.atinf, End::Infinity)) return ExtReal::infinite("non-integrable at infinity");
      try {
        auto g = [&d](double t) { return d.eval(t); };
        double v;
        if (std::isinf(y)) {
          double m = std::max(x, 1.0);
          v = (m > x ? quad::finite_segment(g, x, m) : 0.0) + quad::infinite_segment(g, m);
        } else {
          v = quad::finite_segment(g, x, y);
        }
        if (std::isinf(v)) return ExtReal::infinite("infinite on an interval");
        return ExtReal::finite(v);
      } catch (const std::exception& e) {
        return ExtReal::indeterminate(e.what());
      }
    }
  }
  return ExtReal::zero();
}

// Limit of the piece at t from inside its cell (t may be inf).
inline double piece_limit(const Piece& p, double t) {
  if (p.kind == Piece::Kind::Implicit) {
    if (std::isinf(t)) {
      int g = growth(p.implicit->atinf, End::Infinity);
      return g > 0 ? std::numeric_limits<double>::infinity() : g < 0 ? 0.0 : p.implicit->atinf.coef;
    }
    if (t == 0.0) {
      int g = growth(p.implicit->at0, End::Zero);
      return g > 0 ? std::numeric_limits<double>::infinity() : g < 0 ? 0.0 : p.implicit->at0.coef;
    }
    return p.implicit->eval(t);
  }
  if (p.kind == Piece::Kind::Power && std::isinf(t)) return p.offset + detail::mul0(p.coef, p.core(t));
  return p.value(t);
}

// A function on (0, inf) given by finitely many analytic pieces:
// piece i lives on [t_i, t_{i+1}), the last one on [t_n, inf).
class StepFunction {
 public:
  StepFunction() : StepFunction({0.0}, {Piece::constant(0.0)}) {}

  StepFunction(std::vector<double> breaks, std::vector<Piece> pieces) {
    if (breaks.empty() || breaks.front() != 0.0) throw std::invalid_argument("grid must start at 0");
    for (std::size_t i = 1; i < breaks.size(); ++i)
      if (!(breaks[i] > breaks[i - 1]) || std::isinf(breaks[i]))
        throw std::invalid_argument("grid must be strictly increasing and finite");
    if (pieces.size() != breaks.size()) throw std::invalid_argument("need one piece per breakpoint");
    for (const auto& p : pieces)
      if (p.kind == Piece::Kind::Constant && !(p.coef >= 0.0))
        throw std::invalid_argument("values must be non-negative");
    auto d = std::make_shared<Data>();
    d->breaks = std::move(breaks);
    d->pieces = std::move(pieces);
    d_ = std::move(d);
  }

  // Cell values on [t_i, t_{i+1}); values.back() anchors the tail at t_n.
  static StepFunction from_values(std::vector<double> breaks, const std::vector<double>& values,
                                  TailSpec tail = TailSpec::zero(), LeadSpec lead = LeadSpec::none()) {
    if (values.size() != breaks.size()) throw std::invalid_argument("need one value per breakpoint");
    for (double v : values)
      if (!(v >= 0.0)) throw std::invalid_argument("values must be non-negative");
    std::size_t n = breaks.size() - 1;
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < n; ++i) pieces.push_back(Piece::constant(values[i]));
    double tn = breaks.back();
    double vn = values.back();
    switch (tail.kind) {
      case TailSpec::Kind::Zero: pieces.push_back(Piece::constant(0.0)); break;
      case TailSpec::Kind::Power:
      case TailSpec::Kind::PowerLog: {
        if (tail.a.is_zero() && tail.b.is_zero()) {
          pieces.push_back(Piece::constant(vn));
          break;
        }
        if (tn == 0.0 && !tail.a.is_zero()) throw std::invalid_argument("a power tail anchored at 0 has no value there");
        double c = vn * std::pow(tn, tail.a.to_double());
        if (tail.kind == TailSpec::Kind::PowerLog) c *= std::pow(std::log(M_E + tn), tail.b.to_double());
        pieces.push_back(Piece::power(c, tail.a, tail.kind == TailSpec::Kind::PowerLog ? tail.b : Rational(0), 1));
        break;
      }
    }
    if (lead.kind != LeadSpec::Kind::None) {
      if (n == 0) throw std::invalid_argument("a lead needs at least one cell");
      double t1 = breaks[1];
      double c = values[0] * std::pow(t1, lead.a.to_double());
      Rational b = lead.kind == LeadSpec::Kind::PowerLog ? lead.b : Rational(0);
      if (!b.is_zero()) c *= std::pow(std::log(M_E + 1.0 / t1), b.to_double());
      pieces[0] = Piece::power(c, lead.a, b, -1);
    }
    return StepFunction(std::move(breaks), std::move(pieces));
  }

  static StepFunction constant(double c) { return StepFunction({0.0}, {Piece::constant(c)}); }
  // c * t^{-a} * log(e + t^sigma)^{-b} on all of (0, inf)
  static StepFunction power(double c, Rational a, Rational b = 0, Rational sigma = 1) {
    return StepFunction({0.0}, {Piece::power(c, a, b, sigma)});
  }
  static StepFunction indicator(double r, double c = 1.0) {
    return StepFunction({0.0, r}, {Piece::constant(c), Piece::constant(0.0)});
  }
  // x_1, x_2, ... placed on the unit cells [n-1, n).
  static StepFunction from_sequence(const std::vector<double>& xs) {
    std::vector<double> br{0.0};
    std::vector<double> vals;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      br.push_back(static_cast<double>(i + 1));
      vals.push_back(xs[i]);
    }
    vals.push_back(0.0);
    if (xs.empty()) return constant(0.0);
    return from_values(br, vals);
  }

  const std::vector<double>& breaks() const { return d_->breaks; }
  const std::vector<Piece>& pieces() const { return d_->pieces; }
  std::size_t size() const { return d_->pieces.size(); }
  double cell_end(std::size_t i) const {
    return i + 1 < d_->breaks.size() ? d_->breaks[i + 1] : std::numeric_limits<double>::infinity();
  }

  std::size_t locate(double t) const {
    const auto& b = d_->breaks;
    auto it = std::upper_bound(b.begin(), b.end(), t);
    return it == b.begin() ? 0 : static_cast<std::size_t>(it - b.begin()) - 1;
  }

  double operator()(double t) const { return d_->pieces[locate(t)].value(t); }

  bool all_constant() const {
    for (const auto& p : d_->pieces)
      if (!p.is_constant()) return false;
    return true;
  }

  Asymptote at_zero() const {
    if (d_->pieces[0].kind == Piece::Kind::Constant && d_->pieces[0].coef == 0.0) return Asymptote::zero();
    return d_->pieces[0].asymptote(End::Zero);
  }
  Asymptote at_inf() const {
    const Piece& p = d_->pieces.back();
    if (p.kind == Piece::Kind::Constant && p.coef == 0.0) return Asymptote::zero();
    return p.asymptote(End::Infinity);
  }

  Fn to_fn() const {
    StepFunction self = *this;
    std::vector<double> knots(d_->breaks.begin() + 1, d_->breaks.end());
    if (all_constant() && size() == 1) return Fn::constant(d_->pieces[0].coef);
    if (size() == 1 && d_->pieces[0].is_pure_power() && d_->pieces[0].offset == 0.0 && d_->pieces[0].shift == 0.0 &&
        !d_->pieces[0].reflected)
      return Fn::monomial(d_->pieces[0].coef, -d_->pieces[0].decay);
    return Fn::make([self](double t) { return self(t); }, std::move(knots), at_zero(), at_inf());
  }

  // Closed-form primitives where available.
  Fn antiderivative_fn() const;
  Fn tail_integral_fn() const;

 private:
  struct Data {
    std::vector<double> breaks;
    std::vector<Piece> pieces;
  };
  std::shared_ptr<const Data> d_;
};

using Grid = std::vector<double>;

inline ExtReal integrate(const StepFunction& f, double a, double b) {
  if (a < 0) throw std::invalid_argument("integration range must lie in [0, inf]");
  if (!(b > a)) return ExtReal::zero();
  ExtReal s = ExtReal::zero();
  std::size_t i = f.locate(a);
  for (; i < f.size(); ++i) {
    double lo = std::max(a, f.breaks()[i]);
    double hi = std::min(b, f.cell_end(i));
    if (!(hi > lo)) {
      if (f.breaks()[i] >= b) break;
      continue;
    }
    s = s + piece_integral(f.pieces()[i], lo, hi);
    if (s.is_infinite() || s.is_indeterminate()) return s;
  }
  return s;
}

inline Fn StepFunction::antiderivative_fn() const {
  StepFunction self = *this;
  std::size_t n = size();
  auto cum = std::make_shared<std::vector<double>>(n, 0.0);
  ExtReal acc = ExtReal::zero();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    acc = acc + piece_integral(pieces()[i], breaks()[i], breaks()[i + 1]);
    (*cum)[i + 1] = acc.is_finite() ? acc.value() : std::numeric_limits<double>::infinity();
  }
  ExtReal head = piece_integral(pieces()[0], 0.0, std::min(1.0, cell_end(0)));
  if (head.is_infinite()) return Fn::infinite("divergent at 0");
  Fn base = to_fn();
  if (base.is_monomial() || base.is_zero()) return antiderivative(base);
  Asymptote at0 = base.at_zero().is_zero() ? Asymptote::zero() : head_integral_at_zero(base.at_zero());
  ExtReal total = acc + piece_integral(pieces()[n - 1], breaks()[n - 1], std::numeric_limits<double>::infinity());
  Asymptote atinf;
  if (total.is_finite()) atinf = total.value() == 0.0 ? Asymptote::zero() : Asymptote::constant(total.value());
  else if (integrable(base.at_inf(), End::Infinity)) atinf = Asymptote::infinite();
  else atinf = divergent_integral_at_inf(base.at_inf());
  auto eval = [self, cum](double t) {
    if (!(t > 0)) return 0.0;
    if (std::isinf(t)) return integrate(self, 0.0, t).value();
    std::size_t i = self.locate(t);
    double c = (*cum)[i];
    if (std::isinf(c)) return c;
    ExtReal r = piece_integral(self.pieces()[i], self.breaks()[i], t);
    return c + r.value();
  };
  std::vector<double> knots(breaks().begin() + 1, breaks().end());
  return Fn::make(eval, std::move(knots), at0, atinf);
}

inline Fn StepFunction::tail_integral_fn() const {
  StepFunction self = *this;
  std::size_t n = size();
  Fn base = to_fn();
  if (base.is_monomial() || base.is_zero()) return tail_integral(base);
  ExtReal last = piece_integral(pieces()[n - 1], breaks()[n - 1], std::numeric_limits<double>::infinity());
  if (last.is_infinite()) return Fn::infinite("divergent at infinity");
  auto cum = std::make_shared<std::vector<double>>(n, 0.0);
  ExtReal acc = last;
  (*cum)[n - 1] = acc.value();
  for (std::size_t j = n - 1; j-- > 0;) {
    acc = acc + piece_integral(pieces()[j], breaks()[j], breaks()[j + 1]);
    (*cum)[j] = acc.is_finite() ? acc.value() : std::numeric_limits<double>::infinity();
  }
  Asymptote at0;
  if (acc.is_finite()) at0 = acc.value() == 0.0 ? Asymptote::zero() : Asymptote::constant(acc.value());
  else if (integrable(base.at_zero(), End::Zero)) at0 = Asymptote::infinite();
  else at0 = divergent_integral_at_zero(base.at_zero());
  Asymptote atinf = base.at_inf().is_zero() ? Asymptote::zero() : tail_integral_at_inf(base.at_inf());
  auto eval = [self, cum](double t) {
    std::size_t i = self.locate(t);
    double nxt = i + 1 < self.size() ? (*cum)[i + 1] : 0.0;
    ExtReal r = piece_integral(self.pieces()[i], t, self.cell_end(i));
    return r.value() + nxt;
  };
  std::vector<double> knots(breaks().begin() + 1, breaks().end());
  return Fn::make(eval, std::move(knots), at0, atinf);
}

enum class ZeroPolicy { Reject, ToInfinity };

inline Piece pow_piece(const Piece& p, const Rational& e) {
  double ed = e.to_double();
  switch (p.kind) {
    case Piece::Kind::Constant: return Piece::constant(detail::pow0(p.coef, ed));
    case Piece::Kind::Power:
      if (p.offset == 0.0 && p.coef > 0.0) {
        Piece q = p;
        q.coef = std::pow(p.coef, ed);
        q.decay = p.decay * e;
        q.log_decay = p.log_decay * e;
        return q;
      }
      [[fallthrough]];
    case Piece::Kind::Implicit: {
      Piece src = p;
      Asymptote a0 = pow(src.asymptote(End::Zero), e);
      Asymptote ai = pow(src.asymptote(End::Infinity), e);
      int dir = p.kind == Piece::Kind::Implicit ? p.implicit->direction : 2;
      if (dir == 1 || dir == -1) dir = e.sign() > 0 ? dir : -dir;
      return Piece::make_implicit([src, ed](double t) { return detail::pow0(src.value(t), ed); }, a0, ai, dir);
    }
  }
  return p;
}

// t -> f(t)^e
inline StepFunction pow_compose(const StepFunction& f, const Rational& e, ZeroPolicy zp = ZeroPolicy::Reject) {
  if (e.sign() < 0 && zp == ZeroPolicy::Reject) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Piece& p = f.pieces()[i];
      if (p.is_constant() && p.coef == 0.0)
        throw std::domain_error("negative power of a function that vanishes on a cell");
    }
  }
  std::vector<Piece> out;
  for (const auto& p : f.pieces()) out.push_back(pow_piece(p, e));
  return StepFunction(f.breaks(), std::move(out));
}

// t -> f(t^k), k > 0
inline StepFunction map_arg_power(const StepFunction& f, const Rational& k) {
  if (k.sign() <= 0) throw std::invalid_argument("argument power must be positive");
  if (k == Rational(1)) return f;
  double kd = k.to_double();
  std::vector<double> br;
  for (double t : f.breaks()) br.push_back(t == 0.0 ? 0.0 : std::pow(t, 1.0 / kd));
  for (std::size_t i = 1; i < br.size(); ++i)
    if (!(br[i] > br[i - 1])) throw std::domain_error("argument map collapses grid points");
  std::vector<Piece> out;
  for (const auto& p : f.pieces()) {
    if (p.kind == Piece::Kind::Constant) {
      out.push_back(p);
    } else if (p.kind == Piece::Kind::Power && p.shift == 0.0 && !p.reflected) {
      Piece q = p;
      q.decay = p.decay * k;
      q.log_scale = p.log_scale * k;
      out.push_back(q);
    } else {
      Piece src = p;
      out.push_back(Piece::make_implicit([src, kd](double t) { return src.value(std::pow(t, kd)); },
                                         compose_power(src.asymptote(End::Zero), k),
                                         compose_power(src.asymptote(End::Infinity), k),
                                         src.kind == Piece::Kind::Implicit ? src.implicit->direction : 2));
    }
  }
  return StepFunction(std::move(br), std::move(out));
}

inline StepFunction scale(const StepFunction& f, double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("scale factor must be non-negative");
  std::vector<Piece> out;
  for (const auto& p : f.pieces()) {
    Piece q = p;
    switch (p.kind) {
      case Piece::Kind::Constant: q.coef = detail::mul0(c, p.coef); break;
      case Piece::Kind::Power:
        q.coef *= c;
        q.offset *= c;
        break;
      case Piece::Kind::Implicit: {
        Piece src = p;
        q = Piece::make_implicit([src, c](double t) { return detail::mul0(c, src.value(t)); },
                                 wfi::scale(src.implicit->at0, c), wfi::scale(src.implicit->atinf, c),
                                 src.implicit->direction);
        break;
      }
    }
    out.push_back(q);
  }
  return StepFunction(f.breaks(), std::move(out));
}

namespace detail {

// Direction of a piece on [x, y): -1 non-increasing, +1 non-decreasing, 0 constant, 2 mixed.
inline int piece_direction(const Piece& p, double x, double y) {
  if (p.kind == Piece::Kind::Constant) return 0;
  if (p.kind == Piece::Kind::Implicit) {
    if (p.implicit->direction != 2) return p.implicit->direction;
    double a = piece_limit(p, x), b = piece_limit(p, y);
    return a > b ? -1 : a < b ? 1 : 0;
  }
  if (p.coef == 0.0) return 0;
  int s = p.coef > 0 ? 1 : -1;
  int in_t = p.reflected ? -1 : 1;  // du/dt
  double a = p.decay.to_double();
  double bs = p.log_decay.to_double() * p.log_scale.to_double();
  // d/du log core = -(a + b*sigma*w(u))/u, w > 0
  int du;
  if (a >= 0 && bs >= 0 && (a > 0 || bs > 0)) du = -1;
  else if (a <= 0 && bs <= 0 && (a < 0 || bs < 0)) du = 1;
  else if (a == 0 && bs == 0) return 0;
  else return 2;
  (void)x;
  (void)y;
  return du * in_t * s;
}

}  // namespace detail

// sup_t f(t) g(t) over the common refinement of the grids.
inline ExtReal sup_over(const StepFunction& f, const StepFunction& g) {
  std::vector<double> cuts;
  std::merge(f.breaks().begin(), f.breaks().end(), g.breaks().begin(), g.breaks().end(), std::back_inserter(cuts));
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double inf = std::numeric_limits<double>::infinity();
  double best = 0.0;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    double x = cuts[c];
    double y = c + 1 < cuts.size() ? cuts[c + 1] : inf;
    const Piece& pf = f.pieces()[f.locate(x)];
    const Piece& pg = g.pieces()[g.locate(x)];
    auto prod = [&](double t) { return detail::mul0(pf.value(t), pg.value(t)); };
    double lx, ly;
    if (x == 0.0) {
      Asymptote a = (pf.kind == Piece::Kind::Constant && pf.coef == 0.0) || (pg.kind == Piece::Kind::Constant && pg.coef == 0.0)
                        ? Asymptote::zero()
                        : pf.asymptote(End::Zero) * pg.asymptote(End::Zero);
      int gr = growth(a, End::Zero);
      lx = gr > 0 ? inf : gr < 0 ? 0.0 : a.coef;
      if (pf.is_constant() && pg.is_constant()) lx = detail::mul0(pf.coef, pg.coef);
    } else {
      lx = detail::mul0(piece_limit(pf, x), piece_limit(pg, x));
    }
    if (std::isinf(y)) {
      Asymptote a = (pf.kind == Piece::Kind::Constant && pf.coef == 0.0) || (pg.kind == Piece::Kind::Constant && pg.coef == 0.0)
                        ? Asymptote::zero()
                        : pf.asymptote(End::Infinity) * pg.asymptote(End::Infinity);
      int gr = growth(a, End::Infinity);
      ly = gr > 0 ? inf : gr < 0 ? 0.0 : a.coef;
    } else {
      ly = detail::mul0(piece_limit(pf, y), piece_limit(pg, y));
    }
    best = std::max({best, lx, ly});
    if (std::isinf(best)) return ExtReal::infinite("unbounded product");
    int df = detail::piece_direction(pf, x, y), dg = detail::piece_direction(pg, x, y);
    bool monotone = df == 0 || dg == 0 || df == dg;
    if (df == 2 || dg == 2) monotone = false;
    if (!monotone) {
      double lo = x == 0.0 ? (std::isinf(y) ? 1e-12 : y * 1e-12) : x;
      double hi = std::isinf(y) ? std::max(lo, 1.0) * 1e12 : y;
      auto m = quad::maximize(prod, lo, hi, 48);
      best = std::max(best, m.second);
    }
  }
  if (std::isinf(best)) return ExtReal::infinite("unbounded product");
  return ExtReal::finite(best);
}

inline ExtReal ess_sup(const StepFunction& f) { return sup_over(f, StepFunction::constant(1.0)); }

// CSV: header "t,value", rows "t_i,v_i", optional "lead,<kind>,<a>[,<b>]",
// final "tail,<kind>,<a>[,<b>]" with kind in {zero, power, powerlog}.
inline StepFunction parse_step_csv(std::istream& in) {
  std::string line;
  std::vector<double> br, vals;
  TailSpec tail;
  LeadSpec lead;
  bool header = false, have_tail = false;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> StepFunction {
    throw std::invalid_argument("step csv line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (!header) {
      if (cols.size() < 2 || cols[0] != "t" || cols[1] != "value") return fail("expected header t,value");
      header = true;
      continue;
    }
    if (cols[0] == "tail" || cols[0] == "lead") {
      if (cols.size() < 2) return fail("missing kind");
      const std::string& kind = cols[1];
      Rational a = cols.size() > 2 ? Rational::parse(cols[2]) : Rational(0);
      Rational b = cols.size() > 3 ? Rational::parse(cols[3]) : Rational(0);
      if (cols[0] == "tail") {
        if (kind == "zero") tail = TailSpec::zero();
        else if (kind == "power") tail = TailSpec::power(a);
        else if (kind == "powerlog") tail = TailSpec::powerlog(a, b);
        else return fail("unknown tail kind " + kind);
        have_tail = true;
      } else {
        if (kind == "none") lead = LeadSpec::none();
        else if (kind == "power") lead = LeadSpec::power(a);
        else if (kind == "powerlog") lead = LeadSpec::powerlog(a, b);
        else return fail("unknown lead kind " + kind);
      }
      continue;
    }
    if (have_tail) return fail("rows after the tail line");
    if (cols.size() != 2) return fail("expected t,value");
    try {
      br.push_back(std::stod(cols[0]));
      vals.push_back(cols[1] == "inf" ? std::numeric_limits<double>::infinity() : std::stod(cols[1]));
    } catch (const std::exception&) {
      return fail("bad number");
    }
  }
  if (!header) throw std::invalid_argument("step csv: empty input");
  if (!have_tail) throw std::invalid_argument("step csv: missing tail line");
  if (br.empty()) throw std::invalid_argument("step csv: no breakpoints");
  return StepFunction::from_values(br, vals, tail, lead);
}

inline StepFunction load_step_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return parse_step_csv(in);
}

inline std::vector<double> parse_sequence_csv(std::istream& in) {
  std::string line;
  std::vector<double> xs;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (!header) {
      if (line.substr(0, comma) != "n") throw std::invalid_argument("sequence csv: expected header n,value");
      header = true;
      continue;
    }
    if (comma == std::string::npos) throw std::invalid_argument("sequence csv: expected n,value");
    xs.push_back(std::stod(line.substr(comma + 1)));
  }
  return xs;
}

inline std::vector<double> load_sequence_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return parse_sequence_csv(in);
}

}  // namespace wfi
