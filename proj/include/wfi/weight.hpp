#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rational.hpp"
#include "rearrange.hpp"
#include "step_function.hpp"

namespace wfi {

// The Fourier-side weight u is radial and non-increasing; the space-side
// weight v is radial and non-decreasing.
enum class Role { U, V };

// A radial weight w(x) = w0(|x|) on R^d.
//   pow(a):       w0(r) = r^{-a} for u, r^{a} for v
//   powlog(a,b):  w0(r) = r^{-a} log(e+r)^{-b} for u, the reciprocal for v
//   ind(R):       w0 = 1 on [0,R), 0 after (u), or 1 then inf (v)
//   table(path):  w0 read from a step csv in the radius variable
class WeightSpec {
 public:
  enum class Family { Power, PowerLog, Indicator, Table };

  WeightSpec() = default;

  static WeightSpec power(Rational a, Role role, int d = 1) {
    WeightSpec w;
    w.family_ = Family::Power;
    w.a_ = a;
    w.role_ = role;
    w.dim_ = d;
    w.profile_ = role == Role::U ? StepFunction::power(1.0, a) : StepFunction::power(1.0, -a);
    return w;
  }
  static WeightSpec powerlog(Rational a, Rational b, Role role, int d = 1) {
    WeightSpec w;
    w.family_ = Family::PowerLog;
    w.a_ = a;
    w.b_ = b;
    w.role_ = role;
    w.dim_ = d;
    w.profile_ = role == Role::U ? StepFunction::power(1.0, a, b) : StepFunction::power(1.0, -a, -b);
    return w;
  }
  static WeightSpec indicator(double r, Role role, int d = 1) {
    if (!(r > 0) || std::isinf(r)) throw std::invalid_argument("indicator radius must be positive and finite");
    WeightSpec w;
    w.family_ = Family::Indicator;
    w.radius_ = r;
    w.role_ = role;
    w.dim_ = d;
    w.profile_ = role == Role::U
                     ? StepFunction::indicator(r)
                     : StepFunction({0.0, r}, {Piece::constant(1.0), Piece::constant(std::numeric_limits<double>::infinity())});
    return w;
  }
  static WeightSpec table(StepFunction profile, Role role, int d = 1, std::string path = {}) {
    bool ok = role == Role::U ? is_nonincreasing(profile) : is_nondecreasing(profile);
    if (!ok) throw std::invalid_argument(std::string("table weight is not monotone in the required direction") +
                                         (path.empty() ? "" : ": " + path));
    WeightSpec w;
    w.family_ = Family::Table;
    w.role_ = role;
    w.dim_ = d;
    w.path_ = std::move(path);
    w.profile_ = std::move(profile);
    return w;
  }

  // "pow(1/4)@d=1", "powlog(1,2)", "ind(1)", "table(u.csv)@d=2"
  static WeightSpec parse(std::string_view s, Role role) {
    std::string src(s);
    int d = 1;
    if (auto at = s.find('@'); at != std::string_view::npos) {
      std::string_view suf = s.substr(at + 1);
      if (suf.substr(0, 2) != "d=") throw std::invalid_argument("weight suffix must be @d=<dim>: " + src);
      try {
        d = std::stoi(std::string(suf.substr(2)));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad dimension in " + src);
      }
      if (d < 1) throw std::invalid_argument("dimension must be positive: " + src);
      s = s.substr(0, at);
    }
    auto open = s.find('(');
    if (open == std::string_view::npos || s.back() != ')') throw std::invalid_argument("malformed weight: " + src);
    std::string_view name = s.substr(0, open);
    std::string_view args = s.substr(open + 1, s.size() - open - 2);
    if (name == "pow") return power(Rational::parse(args), role, d);
    if (name == "powlog") {
      auto comma = args.find(',');
      if (comma == std::string_view::npos) throw std::invalid_argument("powlog needs two arguments: " + src);
      return powerlog(Rational::parse(args.substr(0, comma)), Rational::parse(args.substr(comma + 1)), role, d);
    }
    if (name == "ind") return indicator(Rational::parse(args).to_double(), role, d);
    if (name == "table") return table(load_step_csv(std::string(args)), role, d, std::string(args));
    throw std::invalid_argument("unknown weight family: " + src);
  }

  Family family() const { return family_; }
  Role role() const { return role_; }
  int dim() const { return dim_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  double radius() const { return radius_; }
  const std::string& path() const { return path_; }
  // w0 as a function of the radius
  const StepFunction& profile() const { return profile_; }

  std::string str() const {
    std::string base;
    switch (family_) {
      case Family::Power: base = "pow(" + a_.str() + ")"; break;
      case Family::PowerLog: base = "powlog(" + a_.str() + "," + b_.str() + ")"; break;
      case Family::Indicator: {
        std::ostringstream os;
        os.precision(17);
        os << radius_;
        base = "ind(" + os.str() + ")";
        break;
      }
      case Family::Table: base = "table(" + path_ + ")"; break;
    }
    return dim_ == 1 ? base : base + "@d=" + std::to_string(dim_);
  }

  // Rearranged profile on the half-line: u^* for role U, v_* for role V.
  StepFunction rearranged() const {
    return role_ == Role::U ? circ_profile(profile_, dim_) : lower_star(profile_, dim_);
  }

  // Same weight seen in the opposite role through w -> 1/w.
  WeightSpec reciprocal() const {
    Role other = role_ == Role::U ? Role::V : Role::U;
    switch (family_) {
      case Family::Power: return power(a_, other, dim_);
      case Family::PowerLog: return powerlog(a_, b_, other, dim_);
      case Family::Indicator: return indicator(radius_, other, dim_);
      case Family::Table: break;
    }
    WeightSpec w = *this;
    w.role_ = other;
    w.profile_ = pow_compose(profile_, Rational(-1), ZeroPolicy::ToInfinity);
    w.path_ = "1/" + (path_.empty() ? str() : path_);
    return w;
  }

 private:
  Family family_ = Family::Power;
  Role role_ = Role::U;
  int dim_ = 1;
  Rational a_, b_;
  double radius_ = 1.0;
  std::string path_;
  StepFunction profile_ = StepFunction::constant(1.0);
};

}  // namespace wfi
