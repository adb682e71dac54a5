#pragma once

#include <cstdint>
#include <cmath>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wfi {

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Rational operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  Rational abs() const { return num_ < 0 ? -*this : *this; }
  Rational reciprocal() const { return Rational(1) / *this; }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "3", "-3/4", "0.25", "1.5e-2".
  static Rational parse(std::string_view s) {
    auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational number: '" + std::string(s) + "'"); };
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) return fail();
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      Rational a = parse(s.substr(0, slash));
      Rational b = parse(s.substr(slash + 1));
      if (b.is_zero()) return fail();
      return a / b;
    }
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') { neg = s[i] == '-'; ++i; }
    __int128 n = 0;
    __int128 d = 1;
    bool digits = false;
    const __int128 cap = static_cast<__int128>(1) << 100;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
      n = n * 10 + (s[i] - '0');
      digits = true;
      if (n > cap) return fail();
    }
    if (i < s.size() && s[i] == '.') {
      ++i;
      for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
        n = n * 10 + (s[i] - '0');
        d *= 10;
        digits = true;
        if (n > cap || d > cap) return fail();
      }
    }
    if (!digits) return fail();
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      ++i;
      bool eneg = false;
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) { eneg = s[i] == '-'; ++i; }
      int e = 0;
      bool edigits = false;
      for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
        e = e * 10 + (s[i] - '0');
        edigits = true;
        if (e > 30) return fail();
      }
      if (!edigits) return fail();
      for (int k = 0; k < e; ++k) {
        if (eneg) d *= 10; else n *= 10;
        if (n > cap || d > cap) return fail();
      }
    }
    if (i != s.size()) return fail();
    return from_wide(neg ? -n : n, d);
  }

 private:
  static Rational from_wide(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    const __int128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  void normalize() { *this = from_wide(num_, den_); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// An exponent in (0, inf]; held through its reciprocal so that inf is exact.
class Exponent {
 public:
  Exponent() : inv_(1) {}
  static Exponent finite(Rational v) {
    if (v.sign() <= 0) throw std::invalid_argument("exponent must be positive: " + v.str());
    Exponent e;
    e.inv_ = v.reciprocal();
    return e;
  }
  static Exponent infinity() {
    Exponent e;
    e.inv_ = Rational(0);
    return e;
  }
  static Exponent from_reciprocal(Rational inv) {
    if (inv.sign() < 0) throw std::invalid_argument("negative reciprocal exponent");
    Exponent e;
    e.inv_ = inv;
    return e;
  }
  static Exponent parse(std::string_view s) {
    if (s == "inf" || s == "infinity" || s == "Inf" || s == "oo") return infinity();
    return finite(Rational::parse(s));
  }

  bool is_infinite() const { return inv_.is_zero(); }
  const Rational& inv() const { return inv_; }
  Rational value() const {
    if (is_infinite()) throw std::domain_error("infinite exponent has no rational value");
    return inv_.reciprocal();
  }
  double to_double() const { return is_infinite() ? INFINITY : 1.0 / inv_.to_double(); }

  // Conjugate exponent; only meaningful for values >= 1.
  Exponent conjugate() const {
    if (inv_ > Rational(1)) throw std::domain_error("conjugate exponent needs value >= 1");
    return from_reciprocal(Rational(1) - inv_);
  }

  std::string str() const { return is_infinite() ? "inf" : value().str(); }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.inv_ == b.inv_; }
  // Order by value: larger reciprocal means smaller exponent.
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) { return b.inv_ <=> a.inv_; }

 private:
  Rational inv_;
};

}  // namespace wfi
