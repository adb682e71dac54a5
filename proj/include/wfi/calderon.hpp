#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "extreal.hpp"
#include "fn.hpp"
#include "quadrature.hpp"
#include "rearrange.hpp"
#include "signal.hpp"
#include "step_function.hpp"

namespace wfi {

struct DominationCert {
  bool dominated = true;
  ExtReal bestK = ExtReal::zero();
  double witness_x = 0.0;
};

// Psi_F(x) = int_0^x F^{*,2}
inline ExtReal psi(const StepFunction& F, double x) { return integrate(pow_compose(star(F), 2), 0.0, x); }

namespace detail {

inline Fn phi_fn(const StepFunction& gstar) {
  Fn A = gstar.antiderivative_fn();
  return antiderivative(pow(recip_arg(A), Rational(2)));
}

// Closed forms when F^* and G^* are piecewise constant.
class ConstantPsi {
 public:
  explicit ConstantPsi(const StepFunction& fs) : fs_(fs), cum_(fs.size(), 0.0) {
    for (std::size_t j = 0; j + 1 < fs.size(); ++j) {
      double c = fs.pieces()[j].coef;
      cum_[j + 1] = cum_[j] + c * c * (fs.breaks()[j + 1] - fs.breaks()[j]);
    }
  }
  double operator()(double x) const {
    std::size_t j = fs_.locate(x);
    double c = fs_.pieces()[j].coef;
    if (c == 0.0) return cum_[j];
    return cum_[j] + c * c * (x - fs_.breaks()[j]);
  }
  double slope(double x) const {
    double c = fs_.pieces()[fs_.locate(x)].coef;
    return c * c;
  }
  double level(std::size_t j) const { return fs_.pieces()[j].coef; }
  const std::vector<double>& knots() const { return fs_.breaks(); }
  bool unbounded() const { return fs_.pieces().back().coef > 0; }

 private:
  StepFunction fs_;
  std::vector<double> cum_;
};

// Phi(x) = int_0^x A(1/t)^2 dt with A(y) = int_0^y G^*; G^* has a zero tail.
// In the t variable, cell i of G^* maps to [1/b_{i+1}, 1/b_i] where
// A(1/t) = alpha_i + c_i / t.
class ConstantPhi {
 public:
  explicit ConstantPhi(const StepFunction& gs) {
    std::size_t n = gs.size() - 1;
    std::vector<double> Acum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      Acum[i + 1] = Acum[i] + gs.pieces()[i].coef * (gs.breaks()[i + 1] - gs.breaks()[i]);
    mass_ = Acum[n];
    // t-knots ascending: 1/b_n < ... < 1/b_1
    for (std::size_t i = n; i >= 1; --i) {
      tk_.push_back(1.0 / gs.breaks()[i]);
      std::size_t cell = i - 1;  // y-cell just below b_i
      double c = gs.pieces()[cell].coef;
      alpha_.push_back(Acum[cell] - c * gs.breaks()[cell]);
      coef_.push_back(c);
    }
    cum_.assign(tk_.size(), 0.0);
    if (!tk_.empty()) cum_[0] = mass_ * mass_ * tk_[0];
    for (std::size_t k = 0; k + 1 < tk_.size(); ++k) cum_[k + 1] = cum_[k] + prim(k, tk_[k + 1]) - prim(k, tk_[k]);
  }
  double mass() const { return mass_; }
  const std::vector<double>& knots() const { return tk_; }

  double operator()(double x) const {
    if (tk_.empty() || x <= tk_[0]) return mass_ * mass_ * x;
    std::size_t k = idx(x);
    return cum_[k] + prim(k, x) - prim(k, tk_[k]);
  }
  double limit() const {
    if (tk_.empty()) return 0.0;
    std::size_t k = tk_.size() - 1;
    // last segment has alpha = 0: primitive -c^2/t
    return cum_[k] + coef_[k] * coef_[k] / tk_[k];
  }
  // A(1/x)^2
  double slope(double x) const {
    if (tk_.empty() || x <= tk_[0]) return mass_ * mass_;
    std::size_t k = idx(x);
    double a = alpha_[k] + coef_[k] / x;
    return a * a;
  }

 private:
  std::size_t idx(double x) const {
    auto it = std::upper_bound(tk_.begin(), tk_.end(), x);
    return static_cast<std::size_t>(it - tk_.begin()) - 1;
  }
  double prim(std::size_t k, double t) const {
    double a = alpha_[k], c = coef_[k];
    return a * a * t + 2 * a * c * std::log(t) - c * c / t;
  }
  double mass_ = 0.0;
  std::vector<double> tk_, alpha_, coef_, cum_;
};

inline DominationCert make_cert(double best2, double x) {
  DominationCert c;
  if (std::isinf(best2)) {
    c.bestK = ExtReal::infinite("Psi/Phi unbounded");
    c.dominated = false;
  } else {
    double k = std::sqrt(std::max(0.0, best2));
    c.bestK = ExtReal::finite(k);
    c.dominated = k <= 1.0;
  }
  c.witness_x = x;
  return c;
}

inline DominationCert dominates_constant(const StepFunction& fs, const StepFunction& gs) {
  const double inf = std::numeric_limits<double>::infinity();
  ConstantPsi ps(fs);
  if (ps.level(0) == 0.0) return make_cert(0.0, 0.0);
  if (gs.pieces().back().coef > 0) return make_cert(0.0, 0.0);  // Phi = inf everywhere
  ConstantPhi ph(gs);
  if (ph.mass() == 0.0) return make_cert(inf, 0.0);
  if (ps.unbounded()) return make_cert(inf, inf);
  std::vector<double> xs;
  for (double a : ps.knots())
    if (a > 0) xs.push_back(a);
  xs.insert(xs.end(), ph.knots().begin(), ph.knots().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  auto R = [&](double x) { return ps(x) / ph(x); };
  // derivative sign of Psi/Phi
  auto dR = [&](double x) { return ps.slope(x) * ph(x) - ps(x) * ph.slope(x); };
  double best = ps.level(0) * ps.level(0) / (ph.mass() * ph.mass());
  double wx = 0.0;
  auto consider = [&](double x, double v) {
    if (v > best) {
      best = v;
      wx = x;
    }
  };
  double prev = 0.0;
  for (double x : xs) {
    consider(x, R(x));
    if (prev > 0) {
      double eps = 1e-9 * (x - prev);
      if (dR(prev + eps) > 0 && dR(x - eps) < 0) {
        auto m = quad::maximize(R, prev, x, 4);
        consider(m.first, m.second);
      }
    }
    prev = x;
  }
  // beyond the last knot Psi is flat and Phi increases
  return make_cert(best, wx);
}

}  // namespace detail

// Phi_G(x) = int_0^x (int_0^{1/t} G^*)^2 dt
inline ExtReal phi(const StepFunction& G, double x) {
  StepFunction gs = star(G);
  if (gs.all_constant() && gs.pieces().back().coef == 0.0) return ExtReal::finite(detail::ConstantPhi(gs)(x));
  return integrate(pow(recip_arg(gs.antiderivative_fn()), Rational(2)), 0.0, x);
}

inline DominationCert dominates(const StepFunction& F, const StepFunction& G) {
  StepFunction fs = star(F), gs = star(G);
  if (fs.all_constant() && gs.all_constant()) return detail::dominates_constant(fs, gs);
  Fn P = pow_compose(fs, 2).antiderivative_fn();
  Fn Q = detail::phi_fn(gs);
  if (P.is_zero()) return detail::make_cert(0.0, 0.0);
  if (Q.is_zero()) return detail::make_cert(std::numeric_limits<double>::infinity(), 0.0);
  Fn R = P * reciprocal(Q);
  ExtReal s = supremum(R);
  if (s.is_indeterminate()) {
    DominationCert c;
    c.bestK = s;
    c.dominated = false;
    return c;
  }
  double best = s.is_infinite() ? std::numeric_limits<double>::infinity() : s.value();
  // locate a witness on the knot grid
  double wx = 0.0, wv = -1.0;
  std::vector<double> cuts{1e-12};
  for (double k : R.knots()) cuts.push_back(k);
  cuts.push_back(std::max(1e12, cuts.back() * 10));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto m = quad::maximize(R, cuts[i], cuts[i + 1], 24);
    if (m.second > wv) {
      wv = m.second;
      wx = m.first;
    }
  }
  return detail::make_cert(best, wx);
}

struct JointTypeReport {
  double bestK = 0.0;
  std::size_t worst = 0;
  std::vector<double> per_signal;
};

// Empirical Calderon constant sup_f bestK(|T f|, |f|).
inline JointTypeReport verify_joint_type(const std::vector<SampledSignal>& samples,
                                         const std::function<SampledSignal(const SampledSignal&)>& T = dft) {
  JointTypeReport rep;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto c = dominates(cell_profile(T(samples[i])), cell_profile(samples[i]));
    double k = c.bestK.is_finite() ? c.bestK.value() : std::numeric_limits<double>::infinity();
    rep.per_signal.push_back(k);
    if (k > rep.bestK || i == 0) {
      rep.bestK = k;
      rep.worst = i;
    }
  }
  return rep;
}

}  // namespace wfi
