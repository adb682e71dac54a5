#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

namespace wfi {

enum class Finiteness { Finite, Infinite, Indeterminate };

inline const char* to_string(Finiteness f) {
  switch (f) {
    case Finiteness::Finite: return "finite";
    case Finiteness::Infinite: return "infinite";
    case Finiteness::Indeterminate: return "indeterminate";
  }
  return "?";
}

// A value in [0, inf] together with the reason it is (or may not be) finite.
class ExtReal {
 public:
  ExtReal() = default;

  static ExtReal finite(double v, std::string note = {}) {
    if (std::isnan(v)) return indeterminate("not a number");
    if (std::isinf(v)) return indeterminate("floating-point overflow");
    ExtReal r;
    r.state_ = Finiteness::Finite;
    r.value_ = v;
    r.reason_ = std::move(note);
    return r;
  }
  static ExtReal infinite(std::string reason) {
    ExtReal r;
    r.state_ = Finiteness::Infinite;
    r.value_ = std::numeric_limits<double>::infinity();
    r.reason_ = std::move(reason);
    return r;
  }
  static ExtReal indeterminate(std::string reason) {
    ExtReal r;
    r.state_ = Finiteness::Indeterminate;
    r.value_ = std::numeric_limits<double>::quiet_NaN();
    r.reason_ = std::move(reason);
    return r;
  }
  static ExtReal zero() { return finite(0.0); }

  Finiteness state() const { return state_; }
  bool is_finite() const { return state_ == Finiteness::Finite; }
  bool is_infinite() const { return state_ == Finiteness::Infinite; }
  bool is_indeterminate() const { return state_ == Finiteness::Indeterminate; }
  double value() const { return value_; }
  const std::string& reason() const { return reason_; }

  ExtReal with_reason(std::string r) const {
    ExtReal c = *this;
    c.reason_ = std::move(r);
    return c;
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.state_ != b.state_) return false;
    if (a.state_ == Finiteness::Finite) return a.value_ == b.value_;
    return true;
  }

 private:
  Finiteness state_ = Finiteness::Finite;
  double value_ = 0.0;
  std::string reason_;
};

inline ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.is_indeterminate()) return a;
  if (b.is_indeterminate()) return b;
  if (a.is_infinite()) return a;
  if (b.is_infinite()) return b;
  return ExtReal::finite(a.value() + b.value());
}

// 0 * inf = 0, the measure-theoretic convention.
inline ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  if (a.is_finite() && a.value() == 0.0) return ExtReal::zero();
  if (b.is_finite() && b.value() == 0.0) return ExtReal::zero();
  if (a.is_indeterminate()) return a;
  if (b.is_indeterminate()) return b;
  if (a.is_infinite()) return a;
  if (b.is_infinite()) return b;
  return ExtReal::finite(a.value() * b.value());
}

inline ExtReal pow(const ExtReal& a, double e) {
  if (a.is_indeterminate()) return a;
  if (e == 0.0) return ExtReal::finite(1.0);
  if (a.is_infinite()) return e > 0 ? a : ExtReal::zero();
  if (a.value() == 0.0) return e > 0 ? ExtReal::zero() : ExtReal::infinite("negative power of zero");
  return ExtReal::finite(std::pow(a.value(), e));
}

inline ExtReal scale(const ExtReal& a, double c) { return a * ExtReal::finite(c); }

inline std::ostream& operator<<(std::ostream& os, const ExtReal& x) {
  if (x.is_finite()) return os << x.value();
  os << to_string(x.state());
  if (!x.reason().empty()) os << " (" << x.reason() << ")";
  return os;
}

}  // namespace wfi
