#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "extreal.hpp"
#include "fn.hpp"
#include "legs.hpp"
#include "parallel.hpp"
#include "rational.hpp"
#include "rearrange.hpp"
#include "step_function.hpp"

namespace wfi {

enum class HardyKind {
  HeadSum,       // (sum u_n (sum_{j>=n} x_j)^q)^{1/q} <= K (sum v_n x_n^p)^{1/p}
  TailIntegral,  // (int u (int_x^inf g)^q)^{1/q} <= K (int v g^p)^{1/p}
  HeadIntegral,  // (int u (int_0^x g)^q)^{1/q} <= K (int v g^p)^{1/p}
  Reverse        // (int f^q w)^{1/q} <= K sup_x nu(x)/x int_0^x f, f non-increasing
};

inline const char* to_string(HardyKind k) {
  switch (k) {
    case HardyKind::HeadSum: return "HeadSum";
    case HardyKind::TailIntegral: return "TailIntegral";
    case HardyKind::HeadIntegral: return "HeadIntegral";
    case HardyKind::Reverse: return "Reverse";
  }
  return "?";
}

inline HardyKind parse_hardy_kind(std::string_view s) {
  for (auto k : {HardyKind::HeadSum, HardyKind::TailIntegral, HardyKind::HeadIntegral, HardyKind::Reverse})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown Hardy kind: " + std::string(s));
}

// For Reverse, u plays w and v plays nu.
struct HardyProblem {
  HardyKind kind = HardyKind::HeadIntegral;
  StepFunction u, v;
  std::vector<double> us, vs;
  Exponent p = Exponent::finite(2), q = Exponent::finite(2);

  void validate() const {
    if (p.is_infinite() || q.is_infinite()) throw std::invalid_argument("Hardy exponents must be finite");
    switch (kind) {
      case HardyKind::HeadSum:
        if (us.size() != vs.size() || us.empty()) throw std::invalid_argument("u and v sequences must have equal length");
        for (double x : us)
          if (!(x >= 0) || std::isinf(x)) throw std::invalid_argument("u must be finite and non-negative");
        for (double x : vs)
          if (!(x >= 0)) throw std::invalid_argument("v must be non-negative");
        break;
      case HardyKind::TailIntegral:
      case HardyKind::HeadIntegral:
        if (p.inv() > Rational(1)) throw std::invalid_argument("continuous Hardy inequalities need p >= 1");
        break;
      case HardyKind::Reverse: {
        if (!(q.inv() > Rational(1))) throw std::invalid_argument("the reverse inequality needs q < 1");
        if (!is_nondecreasing(v)) throw std::invalid_argument("nu must be non-decreasing");
        // nu(t)/t non-increasing, checked on a log grid and at the breakpoints
        std::vector<double> ts;
        for (double b : v.breaks())
          if (b > 0) {
            ts.push_back(b * (1 - 1e-9));
            ts.push_back(b);
          }
        for (int i = -40; i <= 40; ++i) ts.push_back(std::pow(10.0, i / 4.0));
        std::sort(ts.begin(), ts.end());
        double prev = std::numeric_limits<double>::infinity();
        for (double t : ts) {
          double r = v(t) / t;
          if (r > prev * (1 + 1e-9)) throw std::invalid_argument("nu(t)/t must be non-increasing");
          prev = r;
        }
        break;
      }
    }
  }
};

namespace detail {

// v^{1/(1-p)} leg as a norm of v^{-1/p} in L^{p'}
inline StepFunction v_leg_base(const StepFunction& v, const Exponent& p) {
  return pow_compose(v, -p.inv(), ZeroPolicy::ToInfinity);
}

inline ExtReal sup_or_integral(const Fn& u, const Fn& a, const Fn& b, const Exponent& p, const Exponent& q) {
  if (q >= p) return supremum(pow(a, q.inv()) * b);
  Rational ir = q.inv() - p.inv();
  Fn f = u * pow(a, p.inv() / ir) * pow(b, ir.reciprocal());
  return pow(integrate(f, 0.0, kInf), ir.to_double());
}

inline ExtReal discrete_K(const HardyProblem& pr) {
  const auto& u = pr.us;
  const auto& v = pr.vs;
  std::size_t n = u.size();
  double ip = pr.p.inv().to_double(), iq = pr.q.inv().to_double();
  // leg_n over j >= n
  std::vector<double> leg(n);
  if (pr.p.inv() >= Rational(1)) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = n; j-- > 0;) {
      m = std::min(m, v[j]);
      leg[j] = std::pow(m, -ip);
    }
  } else {
    double e = 1.0 / (1.0 - 1.0 / ip);  // 1/(1-p)
    double s = 0;
    for (std::size_t j = n; j-- > 0;) {
      s += v[j] == 0.0 ? std::numeric_limits<double>::infinity() : std::pow(v[j], e);
      leg[j] = std::pow(s, 1.0 - ip);
    }
  }
  double head = 0;
  if (pr.q >= pr.p) {
    double best = 0;
    for (std::size_t k = 0; k < n; ++k) {
      head += u[k];
      best = std::max(best, mul0(std::pow(head, iq), leg[k]));
    }
    if (std::isinf(best)) return ExtReal::infinite("a zero weight in v admits unbounded mass");
    return ExtReal::finite(best);
  }
  double ir = iq - ip;
  double s = 0;
  for (std::size_t k = 0; k < n; ++k) {
    head += u[k];
    s += mul0(u[k], mul0(std::pow(head, ip / ir), std::pow(leg[k], 1.0 / ir)));
  }
  if (std::isinf(s)) return ExtReal::infinite("a zero weight in v admits unbounded mass");
  return ExtReal::finite(std::pow(s, ir));
}

}  // namespace detail

inline ExtReal reverse_hardy_K(const StepFunction& w, const StepFunction& nu, const Exponent& q) {
  if (!(q.inv() > Rational(1))) throw std::invalid_argument("the reverse inequality needs q < 1");
  Rational qv = q.value();
  Rational one_m = Rational(1) - qv;
  Rational e = one_m.reciprocal();  // 1/(1-q)
  Fn W = w.antiderivative_fn();
  if (W.is_zero()) return ExtReal::zero();
  Fn inner = tail_integral(power_fn(-e) * pow(W, e));
  if (inner.is_infinite()) return ExtReal::infinite("xi is infinite: " + inner.why());
  Fn xi = power_fn(qv) * pow(inner, one_m);
  Rational qd = qv * e;
  Fn f = pow(nu.to_fn(), -qv) * pow(xi, -qd) * pow(W, qd) * w.to_fn();
  return pow(integrate(f, 0.0, detail::kInf), q.inv().to_double());
}

inline ExtReal hardy_K(const HardyProblem& pr) {
  pr.validate();
  switch (pr.kind) {
    case HardyKind::HeadSum: return detail::discrete_K(pr);
    case HardyKind::HeadIntegral: {
      Fn a = pr.u.tail_integral_fn();
      Fn b = head_norm(detail::v_leg_base(pr.v, pr.p), pr.p.conjugate());
      return detail::sup_or_integral(pr.u.to_fn(), a, b, pr.p, pr.q);
    }
    case HardyKind::TailIntegral: {
      Fn a = pr.u.antiderivative_fn();
      Fn b = tail_norm(detail::v_leg_base(pr.v, pr.p), pr.p.conjugate());
      return detail::sup_or_integral(pr.u.to_fn(), a, b, pr.p, pr.q);
    }
    case HardyKind::Reverse: return reverse_hardy_K(pr.u, pr.v, pr.q);
  }
  return ExtReal::indeterminate("unknown kind");
}

namespace detail {

// Ratio LHS/RHS for a non-negative coefficient vector; each evaluation is a
// certified lower bound for the optimal constant.
struct HardyRatio {
  std::function<double(const std::vector<double>&)> eval;
  std::size_t dim = 0;
  std::vector<std::vector<double>> candidates;
};

inline double cell_inf(const Piece& p, double a, double b) {
  if (p.is_constant()) return p.coef;
  int dir = piece_direction(p, a, b);
  if (dir == 2) return 0.0;
  return std::min(piece_limit(p, a), piece_limit(p, b));
}

inline double cell_sup(const Piece& p, double a, double b) {
  if (p.is_constant()) return p.coef;
  int dir = piece_direction(p, a, b);
  if (dir == 2) return std::numeric_limits<double>::infinity();
  return std::max(piece_limit(p, a), piece_limit(p, b));
}

// int_a^b (A + s (x - a))^q dx
inline double linear_power_integral(double A, double B, double len, double q) {
  if (len <= 0) return 0.0;
  if (std::abs(B - A) <= 1e-14 * std::max(A, B)) return std::pow(0.5 * (A + B), q) * len;
  return len * (std::pow(B, q + 1) - std::pow(A, q + 1)) / ((q + 1) * (B - A));
}

inline Grid merged_grid(const Grid& g, const StepFunction& a, const StepFunction& b) {
  Grid out = g;
  out.insert(out.end(), a.breaks().begin(), a.breaks().end());
  out.insert(out.end(), b.breaks().begin(), b.breaks().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  double hi = g.empty() ? 0.0 : g.back();
  while (!out.empty() && out.back() > hi) out.pop_back();
  if (out.empty() || out.front() != 0.0) out.insert(out.begin(), 0.0);
  return out;
}

inline HardyRatio continuous_ratio(const HardyProblem& pr, const Grid& grid_in) {
  Grid x = merged_grid(grid_in, pr.u, pr.v);
  std::size_t n = x.size() - 1;
  double q = pr.q.to_double(), p = pr.p.to_double();
  bool head = pr.kind == HardyKind::HeadIntegral;
  std::vector<double> uint(n + 1), umin(n), vint(n);
  for (std::size_t i = 0; i < n; ++i) {
    uint[i] = integrate(pr.u, x[i], x[i + 1]).value();
    vint[i] = integrate(pr.v, x[i], x[i + 1]).value();
    umin[i] = cell_inf(pr.u.pieces()[pr.u.locate(x[i])], x[i], x[i + 1]);
  }
  // u beyond the grid
  ExtReal ut = integrate(pr.u, x[n], std::numeric_limits<double>::infinity());
  uint[n] = ut.is_finite() ? ut.value() : std::numeric_limits<double>::infinity();
  HardyRatio R;
  R.dim = n;
  R.eval = [=](const std::vector<double>& g) {
    double rhs = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (g[i] > 0) rhs += mul0(vint[i], std::pow(g[i], p));
    if (!(rhs > 0) || std::isinf(rhs)) return 0.0;
    double lhs = 0;
    double G = 0;
    if (head) {
      for (std::size_t i = 0; i < n; ++i) {
        double A = G, B = G + g[i] * (x[i + 1] - x[i]);
        double lo = std::max(mul0(uint[i], std::pow(A, q)), mul0(umin[i], linear_power_integral(A, B, x[i + 1] - x[i], q)));
        lhs += lo;
        G = B;
      }
      lhs += mul0(uint[n], std::pow(G, q));
    } else {
      std::vector<double> T(n + 1, 0.0);
      for (std::size_t i = n; i-- > 0;) T[i] = T[i + 1] + g[i] * (x[i + 1] - x[i]);
      for (std::size_t i = 0; i < n; ++i) {
        double A = T[i], B = T[i + 1];
        lhs += std::max(mul0(uint[i], std::pow(B, q)), mul0(umin[i], linear_power_integral(A, B, x[i + 1] - x[i], q)));
      }
    }
    if (std::isinf(lhs)) return std::numeric_limits<double>::infinity();
    return std::pow(lhs, 1.0 / q) / std::pow(rhs, 1.0 / p);
  };
  // indicators of intervals and the extremal profile v^{1/(1-p)} on heads/tails
  std::vector<double> vmean(n);
  for (std::size_t i = 0; i < n; ++i) vmean[i] = vint[i] / (x[i + 1] - x[i]);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<double> ind(n, 0.0), ext(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      bool in = head ? i < k : i >= k - 1;
      if (!in) continue;
      ind[i] = 1.0;
      ext[i] = vmean[i] > 0 && std::isfinite(vmean[i]) ? (p == 1.0 ? 0.0 : std::pow(vmean[i], 1.0 / (1.0 - p))) : 0.0;
    }
    if (p == 1.0) {
      // concentrate on the cell of smallest v
      std::size_t best = n;
      for (std::size_t i = 0; i < n; ++i)
        if (ind[i] > 0 && vmean[i] > 0 && (best == n || vmean[i] < vmean[best])) best = i;
      if (best < n) ext[best] = 1.0;
    }
    R.candidates.push_back(ind);
    R.candidates.push_back(ext);
    std::vector<double> single(n, 0.0);
    single[k - 1] = 1.0;
    R.candidates.push_back(single);
  }
  return R;
}

inline HardyRatio discrete_ratio(const HardyProblem& pr) {
  std::size_t n = pr.us.size();
  double q = pr.q.to_double(), p = pr.p.to_double();
  auto u = pr.us, v = pr.vs;
  HardyRatio R;
  R.dim = n;
  R.eval = [=](const std::vector<double>& x) {
    double rhs = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] > 0) rhs += mul0(v[i], std::pow(x[i], p));
    if (!(rhs > 0) || std::isinf(rhs)) return 0.0;
    double lhs = 0, X = 0;
    for (std::size_t i = n; i-- > 0;) {
      X += x[i];
      lhs += mul0(u[i], std::pow(X, q));
    }
    return std::pow(lhs, 1.0 / q) / std::pow(rhs, 1.0 / p);
  };
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<double> ind(n, 0.0), ext(n, 0.0), single(n, 0.0);
    for (std::size_t i = k - 1; i < n; ++i) {
      ind[i] = 1.0;
      if (p > 1 && v[i] > 0) ext[i] = std::pow(v[i], 1.0 / (1.0 - p));
    }
    single[k - 1] = 1.0;
    R.candidates.push_back(ind);
    R.candidates.push_back(ext);
    R.candidates.push_back(single);
  }
  return R;
}

// f = sum_j c_j 1_{[0, x_{j+1})}, so f is non-increasing with level sum_{j>=i} c_j on cell i.
inline HardyRatio reverse_ratio(const HardyProblem& pr, const Grid& grid_in) {
  Grid x = merged_grid(grid_in, pr.u, pr.v);
  std::size_t n = x.size() - 1;
  double q = pr.q.to_double();
  std::vector<double> wint(n), nua(n), nub(n);
  for (std::size_t i = 0; i < n; ++i) {
    wint[i] = integrate(pr.u, x[i], x[i + 1]).value();
    nua[i] = pr.v(x[i]);
    nub[i] = cell_sup(pr.v.pieces()[pr.v.locate(x[i])], x[i], x[i + 1]);
  }
  double nun = pr.v(x[n]);
  HardyRatio R;
  R.dim = n;
  R.eval = [=](const std::vector<double>& c) {
    std::vector<double> f(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) f[i] = f[i + 1] + c[i];
    double lhs = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (f[i] > 0) lhs += mul0(wint[i], std::pow(f[i], q));
    // upper bound of sup_x nu(x)/x F(x), cell by cell
    double rhs = 0, F = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double a = x[i], b = x[i + 1];
      double first = a > 0 ? nua[i] / a * std::max(0.0, F - f[i] * a) : 0.0;
      rhs = std::max(rhs, first + nub[i] * f[i]);
      F += f[i] * (b - a);
    }
    rhs = std::max(rhs, nun / x[n] * F);
    if (!(rhs > 0)) return 0.0;
    return std::pow(lhs, 1.0 / q) / rhs;
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> ind(n, 0.0);
    ind[k] = 1.0;
    R.candidates.push_back(ind);
  }
  return R;
}

// One pass of coordinate ascent on log-coordinates, including the option of zeroing a coordinate.
inline double ascend(const HardyRatio& R, std::vector<double>& c, int sweeps) {
  double best = R.eval(c);
  for (int s = 0; s < sweeps; ++s) {
    double before = best;
    for (std::size_t i = 0; i < R.dim; ++i) {
      double scale_ref = 0;
      for (double v : c) scale_ref = std::max(scale_ref, v);
      if (scale_ref == 0) scale_ref = 1;
      double old = c[i];
      auto at = [&](double y) {
        c[i] = std::exp(y);
        double r = R.eval(c);
        return std::isnan(r) ? std::numeric_limits<double>::infinity() : -r;
      };
      double centre = std::log(old > 0 ? old : scale_ref * 1e-3);
      std::uintmax_t it = 60;
      auto m = boost::math::tools::brent_find_minima(at, centre - 12.0, centre + 12.0, 30, it);
      double cand = -m.second;
      c[i] = 0.0;
      double zero = R.eval(c);
      if (cand >= zero && cand > best) {
        c[i] = std::exp(m.first);
        best = cand;
      } else if (zero > best) {
        best = zero;
      } else {
        c[i] = old;
      }
    }
    if (!(best > before * (1 + 1e-6))) break;
  }
  return best;
}

}  // namespace detail

inline Grid uniform_grid(double T, std::size_t cells) {
  Grid g;
  for (std::size_t i = 0; i <= cells; ++i) g.push_back(T * static_cast<double>(i) / static_cast<double>(cells));
  return g;
}

struct BruteForceResult {
  double K = 0.0;
  std::vector<double> profile;  // coefficients of the best test function found
};

// Best ratio LHS/RHS found over non-negative step functions on the grid.
inline BruteForceResult brute_force_argmax(const HardyProblem& pr, const Grid& grid, int iters, std::uint64_t seed,
                                           int restarts = 32) {
  pr.validate();
  detail::HardyRatio R;
  switch (pr.kind) {
    case HardyKind::HeadSum: R = detail::discrete_ratio(pr); break;
    case HardyKind::TailIntegral:
    case HardyKind::HeadIntegral: R = detail::continuous_ratio(pr, grid); break;
    case HardyKind::Reverse: R = detail::reverse_ratio(pr, grid); break;
  }
  BruteForceResult out;
  if (R.dim == 0) return out;
  out.profile.assign(R.dim, 0.0);
  for (const auto& c : R.candidates) {
    double r = R.eval(c);
    if (r > out.K) {
      out.K = r;
      out.profile = c;
    }
  }
  if (std::isinf(out.K)) return out;
  using Run = std::pair<double, std::vector<double>>;
  auto runs = parallel_map<Run>(static_cast<std::size_t>(std::max(restarts, 0)), [&](std::size_t k) {
    std::vector<double> c(R.dim);
    if (k == 0 && out.K > 0) {
      c = out.profile;
    } else {
      auto rng = task_rng(seed, k);
      std::exponential_distribution<double> ex(1.0);
      for (auto& x : c) x = ex(rng);
    }
    double r = detail::ascend(R, c, iters);
    return Run{r, std::move(c)};
  });
  for (auto& [r, c] : runs)
    if (r > out.K) {
      out.K = r;
      out.profile = std::move(c);
    }
  return out;
}

inline double brute_force_K(const HardyProblem& pr, const Grid& grid, int iters, std::uint64_t seed, int restarts = 32) {
  return brute_force_argmax(pr, grid, iters, seed, restarts).K;
}

// Random problems with finite constants: compactly supported u, and v = inf
// where the leg integral must stay finite.
inline HardyProblem random_problem(HardyKind kind, Exponent p, Exponent q, std::mt19937_64& rng, std::size_t cells = 6) {
  std::uniform_real_distribution<double> len(0.3, 2.0), val(0.2, 3.0);
  HardyProblem pr;
  pr.kind = kind;
  pr.p = p;
  pr.q = q;
  if (kind == HardyKind::HeadSum) {
    for (std::size_t i = 0; i < cells; ++i) {
      pr.us.push_back(val(rng));
      pr.vs.push_back(val(rng));
    }
    return pr;
  }
  std::vector<double> br{0.0};
  for (std::size_t i = 0; i < cells; ++i) br.push_back(br.back() + len(rng));
  std::vector<double> uv, vv;
  for (std::size_t i = 0; i < cells; ++i) {
    uv.push_back(val(rng));
    vv.push_back(val(rng));
  }
  if (kind == HardyKind::Reverse) {
    std::sort(uv.begin(), uv.end(), std::greater<>());
    uv.push_back(0.0);
    pr.u = StepFunction::from_values(br, uv);
    // nu = c (t/t1)^theta on [0, t1), then c
    std::uniform_real_distribution<double> th(0.2, 1.0);
    double t1 = br[1 + rng() % cells];
    Rational theta(static_cast<std::int64_t>(std::round(th(rng) * 8)), 8);
    double c = val(rng);
    pr.v = StepFunction::from_values({0.0, t1}, {c, c}, TailSpec::power(0), LeadSpec::power(-theta));
    return pr;
  }
  uv.push_back(0.0);
  pr.u = StepFunction::from_values(br, uv);
  std::vector<Piece> vp;
  for (double x : vv) vp.push_back(Piece::constant(x));
  vp.push_back(Piece::constant(kind == HardyKind::TailIntegral ? std::numeric_limits<double>::infinity() : vv.back()));
  pr.v = StepFunction(br, vp);
  return pr;
}

// Grid refining the problem's own breakpoints `refine` times per cell.
inline Grid problem_grid(const HardyProblem& pr, std::size_t refine) {
  Grid base;
  base.insert(base.end(), pr.u.breaks().begin(), pr.u.breaks().end());
  base.insert(base.end(), pr.v.breaks().begin(), pr.v.breaks().end());
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  if (base.size() < 2) base = {0.0, 1.0};
  Grid g;
  for (std::size_t i = 0; i + 1 < base.size(); ++i)
    for (std::size_t k = 0; k < refine; ++k)
      g.push_back(base[i] + (base[i + 1] - base[i]) * static_cast<double>(k) / static_cast<double>(refine));
  g.push_back(base.back());
  return g;
}

}  // namespace wfi
