#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "fn.hpp"
#include "step_function.hpp"

namespace wfi {

namespace detail {

inline constexpr double kInfR = std::numeric_limits<double>::infinity();

// A monotone stretch of a step function.
struct Segment {
  double x = 0, y = 0;  // [x, y), y may be inf
  int dir = 0;          // 0 flat, -1 decreasing, +1 increasing
  double vlo = 0, vhi = 0;
  Piece piece;
};

// Position in [x, y] where a monotone segment takes the value lam.
inline double segment_inverse(const Segment& s, double lam) {
  const Piece& p = s.piece;
  if (p.is_pure_power() && p.coef > 0 && !p.decay.is_zero()) {
    double u = std::pow((lam - p.offset) / p.coef, -1.0 / p.decay.to_double());
    double t = p.reflected ? p.shift - u : p.shift + u;
    return std::clamp(t, s.x, s.y);
  }
  // g(t) = value - lam changes sign once on the segment
  auto g = [&](double t) { return p.value(t) - lam; };
  double lo = s.x, hi = s.y;
  if (std::isinf(hi)) {
    hi = std::max(1.0, 2.0 * lo + 1.0);
    for (int i = 0; i < 2000 && (s.dir < 0 ? g(hi) > 0 : g(hi) < 0); ++i) hi *= 2.0;
  }
  if (lo == 0.0) lo = std::min(hi, 1.0) * 1e-300;
  for (int i = 0; i < 200; ++i) {
    double mid = (lo > 0 && hi / lo > 4.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double v = g(mid);
    bool right = s.dir < 0 ? v > 0 : v < 0;
    if (right) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// |{t in segment : f(t) > lam}|
inline double segment_measure(const Segment& s, double lam) {
  if (s.dir == 0) return s.vhi > lam ? s.y - s.x : 0.0;
  if (lam >= s.vhi) return 0.0;
  if (lam < s.vlo) return s.y - s.x;
  double t = segment_inverse(s, lam);
  return s.dir < 0 ? t - s.x : s.y - t;
}

inline void split_mixed(const Piece& p, double x, double y, std::vector<std::pair<double, double>>& out) {
  // locate turning points of a power-log piece by scanning the sign of the log-derivative
  auto v = [&](double t) { return p.value(t); };
  double lo = x == 0.0 ? (std::isinf(y) ? 1e-12 : y * 1e-12) : x;
  double hi = std::isinf(y) ? std::max(lo, 1.0) * 1e12 : y;
  const int n = 400;
  std::vector<double> ts;
  for (int i = 0; i <= n; ++i) ts.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
  double start = x;
  int prev = 0;
  for (int i = 1; i <= n; ++i) {
    double d = v(ts[i]) - v(ts[i - 1]);
    int sg = d > 0 ? 1 : d < 0 ? -1 : 0;
    if (sg != 0 && prev != 0 && sg != prev) {
      auto r = quad::maximize([&](double t) { return prev > 0 ? v(t) : -v(t); }, ts[i - 2 < 0 ? 0 : i - 2], ts[i]);
      out.push_back({start, r.first});
      start = r.first;
    }
    if (sg != 0) prev = sg;
  }
  out.push_back({start, y});
}

inline std::vector<Segment> segments_of(const StepFunction& f) {
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Piece& p = f.pieces()[i];
    double x = f.breaks()[i], y = f.cell_end(i);
    std::vector<std::pair<double, double>> parts;
    int dir = piece_direction(p, x, y);
    if (dir == 2) split_mixed(p, x, y, parts);
    else parts.push_back({x, y});
    for (auto [a, b] : parts) {
      Segment s;
      s.x = a;
      s.y = b;
      s.piece = p;
      double la = piece_limit(p, a);
      double lb = piece_limit(p, b);
      int d = dir == 2 ? (la > lb ? -1 : la < lb ? 1 : 0) : dir;
      if (la == lb) d = 0;
      s.dir = d;
      s.vlo = std::min(la, lb);
      s.vhi = std::max(la, lb);
      if (d == 0) s.vlo = s.vhi = la;
      if (b - a > 0) segs.push_back(s);
    }
  }
  return segs;
}

inline Asymptote dominant_singularity(const std::vector<const Segment*>& act) {
  // f* near 0 when several singular stretches share the top band
  Rational best_a;
  double csum = 0;
  Rational lp;
  bool have = false;
  for (const Segment* s : act) {
    Asymptote a = s->piece.asymptote(End::Zero);
    if (!a.is_regular() || a.power.sign() >= 0) continue;
    Rational dec = -a.power;
    if (!have || dec > best_a) {
      best_a = dec;
      csum = std::pow(a.coef, 1.0 / dec.to_double());
      lp = a.log_power;
      have = true;
    } else if (dec == best_a) {
      csum += std::pow(a.coef, 1.0 / dec.to_double());
    }
  }
  if (!have) return Asymptote::infinite();
  return Asymptote::monomial(std::pow(csum, best_a.to_double()), -best_a, lp);
}

}  // namespace detail

// Decreasing rearrangement on the half-line.
inline StepFunction star(const StepFunction& f) {
  using detail::kInfR;
  if (f.all_constant()) {
    const Piece& last = f.pieces().back();
    if (last.coef > 0 || std::isinf(last.coef)) {
      // tail level c > 0 on an unbounded set: everything below c is pushed to infinity
      double c = last.coef;
      std::vector<std::pair<double, double>> cells;
      for (std::size_t i = 0; i + 1 < f.size(); ++i)
        if (f.pieces()[i].coef > c) cells.push_back({f.pieces()[i].coef, f.cell_end(i) - f.breaks()[i]});
      std::stable_sort(cells.begin(), cells.end(), [](auto& a, auto& b) { return a.first > b.first; });
      std::vector<double> br{0.0};
      std::vector<Piece> ps;
      double t = 0;
      for (std::size_t k = 0; k < cells.size();) {
        double v = cells[k].first, len = 0;
        for (; k < cells.size() && cells[k].first == v; ++k) len += cells[k].second;
        ps.push_back(Piece::constant(v));
        t += len;
        br.push_back(t);
      }
      ps.push_back(Piece::constant(c));
      return StepFunction(std::move(br), std::move(ps));
    }
    std::vector<std::pair<double, double>> cells;
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      if (f.pieces()[i].coef > 0) cells.push_back({f.pieces()[i].coef, f.cell_end(i) - f.breaks()[i]});
    std::stable_sort(cells.begin(), cells.end(), [](auto& a, auto& b) { return a.first > b.first; });
    std::vector<double> br{0.0};
    std::vector<Piece> ps;
    double t = 0;
    for (std::size_t k = 0; k < cells.size();) {
      double v = cells[k].first, len = 0;
      for (; k < cells.size() && cells[k].first == v; ++k) len += cells[k].second;
      ps.push_back(Piece::constant(v));
      t += len;
      br.push_back(t);
    }
    ps.push_back(Piece::constant(0.0));
    return StepFunction(std::move(br), std::move(ps));
  }

  auto segs = detail::segments_of(f);
  for (const auto& s : segs)
    if (std::isinf(s.y) && s.vhi > 0 && (s.dir > 0 ? std::isinf(s.vhi) : false))
      return StepFunction::constant(kInfR);

  std::vector<double> levels;
  for (const auto& s : segs) {
    levels.push_back(s.vhi);
    levels.push_back(s.vlo);
  }
  levels.push_back(0.0);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<double> br;
  std::vector<Piece> ps;
  double t = 0;
  auto emit = [&](Piece p, double len) {
    // levels one ulp apart leave bands too thin to move t
    if (!(len > 0) || t + len == t) return;
    if (!ps.empty() && p.is_constant() && ps.back().is_constant() && ps.back().coef == p.coef) {
      t += len;
      return;
    }
    br.push_back(t);
    ps.push_back(std::move(p));
    t += len;
  };
  bool done = false;
  for (std::size_t k = 0; k < levels.size() && !done; ++k) {
    double L = levels[k];
    double flat = 0;
    for (const auto& s : segs)
      if (s.dir == 0 && s.vhi == L) flat += s.y - s.x;
    if (flat > 0) {
      emit(Piece::constant(L), flat);
      if (std::isinf(flat)) { done = true; break; }
    }
    if (k + 1 == levels.size()) break;
    double Ln = levels[k + 1];
    std::vector<const detail::Segment*> act;
    for (const auto& s : segs)
      if (s.dir != 0 && s.vlo <= Ln && s.vhi >= L) act.push_back(&s);
    if (act.empty()) continue;
    double band = 0;
    std::vector<double> top_pos;
    for (const auto* s : act) {
      double m_lo = detail::segment_measure(*s, Ln);
      double m_hi = std::isinf(L) ? 0.0 : detail::segment_measure(*s, L);
      band += m_lo - m_hi;
      top_pos.push_back(std::isinf(L) ? (s->dir < 0 ? s->x : s->y) : detail::segment_inverse(*s, L));
    }
    double t0 = t;
    Piece out;
    if (act.size() == 1) {
      const auto& s = *act[0];
      const Piece& p = s.piece;
      double pos = top_pos[0];
      if (s.dir < 0) {
        double delta = pos - t0;  // original position = tau + delta
        if (p.kind == Piece::Kind::Power) {
          out = p;
          out.shift = p.shift - delta;
        } else {
          Piece src = p;
          out = Piece::make_implicit([src, delta](double tau) { return src.value(tau + delta); },
                                     t0 == 0.0 ? src.asymptote(End::Zero) : Asymptote::constant(1.0),
                                     src.asymptote(End::Infinity), -1);
        }
      } else {
        double C = pos + t0;  // original position = C - tau
        if (p.kind == Piece::Kind::Power) {
          out = p;
          out.shift = C - p.shift;
          out.reflected = !p.reflected;
        } else {
          Piece src = p;
          out = Piece::make_implicit([src, C](double tau) { return src.value(C - tau); }, Asymptote::constant(1.0),
                                     Asymptote::constant(1.0), -1);
        }
      }
    } else {
      std::vector<detail::Segment> act_copy;
      for (const auto* s : act) act_copy.push_back(*s);
      std::vector<double> base;
      for (const auto& s : act_copy) base.push_back(std::isinf(L) ? 0.0 : detail::segment_measure(s, L));
      auto eval = [act_copy, base, L, Ln, t0](double tau) {
        double target = tau - t0;
        auto excess = [&](double lam) {
          double m = 0;
          for (std::size_t j = 0; j < act_copy.size(); ++j) m += detail::segment_measure(act_copy[j], lam) - base[j];
          return m;
        };
        double lo = Ln, hi = L;
        if (std::isinf(hi)) {
          hi = std::max(1.0, 2.0 * lo);
          while (excess(hi) > target && hi < 1e300) hi *= 2.0;
        }
        for (int i = 0; i < 200; ++i) {
          double mid = (lo > 0 && hi / lo > 4.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          if (excess(mid) > target) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
      };
      Asymptote a0 = t0 == 0.0 && std::isinf(L) ? detail::dominant_singularity(act) : Asymptote::constant(1.0);
      Asymptote ai = Asymptote::constant(Ln);
      for (const auto* s : act)
        if (std::isinf(s->y)) ai = s->piece.asymptote(End::Infinity);
      out = Piece::make_implicit(eval, a0, ai, -1);
    }
    emit(out, band);
    if (std::isinf(band)) done = true;
  }
  if (!done) emit(Piece::constant(0.0), kInfR);
  if (br.empty()) return StepFunction::constant(0.0);
  // the last emitted piece carries to infinity; drop the pending end
  return StepFunction(std::move(br), std::move(ps));
}

// lambda -> |{f > lambda}|
inline StepFunction distribution(const StepFunction& f) {
  using detail::kInfR;
  auto segs = detail::segments_of(f);
  std::vector<double> levels{0.0};
  for (const auto& s : segs) {
    if (!std::isinf(s.vhi)) levels.push_back(s.vhi);
    if (!std::isinf(s.vlo)) levels.push_back(s.vlo);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<Piece> ps;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    double a = levels[k];
    double b = k + 1 < levels.size() ? levels[k + 1] : kInfR;
    double K = 0;
    std::vector<detail::Segment> act;
    for (const auto& s : segs) {
      if (s.dir == 0) {
        if (s.vhi >= b && s.vhi > a) K += s.y - s.x;
      } else if (s.vlo <= a && s.vhi >= b) {
        act.push_back(s);
      } else if (s.vlo >= b) {
        K += s.y - s.x;
      }
    }
    if (act.empty()) {
      ps.push_back(Piece::constant(K));
      continue;
    }
    if (std::isinf(K)) {
      ps.push_back(Piece::constant(kInfR));
      continue;
    }
    const Piece& p = act[0].piece;
    if (act.size() == 1 && p.is_pure_power() && p.coef > 0 && !p.decay.is_zero()) {
      const auto& s = act[0];
      double inva = 1.0 / p.decay.to_double();
      double c = std::pow(p.coef, inva);
      // inverse position: shift +/- c * (lam - offset)^{-1/a}
      double sgn_pos = p.reflected ? -1.0 : 1.0;
      double base, sgn;
      if (s.dir < 0) {
        base = K + p.shift - s.x;
        sgn = sgn_pos;
      } else {
        base = K + s.y - p.shift;
        sgn = -sgn_pos;
      }
      ps.push_back(Piece::power(sgn * c, Rational(p.decay.den(), p.decay.num()), 0, 1, p.offset, base));
      continue;
    }
    auto eval = [act, K](double lam) {
      double m = K;
      for (const auto& s : act) m += detail::segment_measure(s, lam);
      return m;
    };
    ps.push_back(Piece::make_implicit(eval, Asymptote::constant(1.0), Asymptote::zero(), -1));
  }
  return StepFunction(levels, ps);
}

// t -> (1/t) int_0^t f*
inline StepFunction double_star(const StepFunction& f) {
  StepFunction fs = star(f);
  std::vector<Piece> out;
  double acc = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Piece& p = fs.pieces()[i];
    double ti = fs.breaks()[i];
    if (p.is_constant()) {
      if (std::isinf(p.coef)) {
        out.push_back(Piece::constant(p.coef));
      } else {
        out.push_back(Piece::power(acc - p.coef * ti, 1, 0, 1, 0.0, p.coef));
      }
    } else if (ti == 0.0 && p.is_pure_power() && p.offset == 0.0 && p.shift == 0.0 && !p.reflected &&
               p.decay < Rational(1)) {
      out.push_back(Piece::power(p.coef / (1.0 - p.decay.to_double()), p.decay));
    } else {
      Piece src = p;
      double a0 = acc;
      Asymptote ai = Asymptote::constant(1.0);
      if (i + 1 == fs.size()) {
        Asymptote pa = p.asymptote(End::Infinity);
        ai = integrable(pa, End::Infinity) ? Asymptote::zero() : divergent_integral_at_inf(pa) * Asymptote::monomial(1.0, -1);
      }
      Asymptote z = ti == 0.0 ? head_integral_at_zero(p.asymptote(End::Zero)) * Asymptote::monomial(1.0, -1)
                              : Asymptote::constant(1.0);
      out.push_back(Piece::make_implicit(
          [src, a0, ti](double t) { return (a0 + piece_integral(src, ti, t).value()) / t; }, z, ai, -1));
    }
    if (i + 1 < fs.size()) {
      ExtReal r = piece_integral(p, ti, fs.breaks()[i + 1]);
      acc = r.is_finite() ? acc + r.value() : std::numeric_limits<double>::infinity();
    }
  }
  if (std::isinf(acc)) return StepFunction::constant(std::numeric_limits<double>::infinity());
  return StepFunction(fs.breaks(), std::move(out));
}

namespace detail {

inline bool is_monotone(const StepFunction& f, int want) {
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Piece& p = f.pieces()[i];
    double x = f.breaks()[i], y = f.cell_end(i);
    int d = piece_direction(p, x, y);
    if (d == 2 || (d != 0 && d != want)) return false;
    double first = x == 0.0 ? piece_limit(p, 1e-300) : piece_limit(p, x);
    if (!std::isnan(prev) && (want < 0 ? first > prev * (1 + 1e-12) : first < prev * (1 - 1e-12))) return false;
    prev = piece_limit(p, y);
  }
  return true;
}

}  // namespace detail

inline bool is_nonincreasing(const StepFunction& f) { return detail::is_monotone(f, -1); }
inline bool is_nondecreasing(const StepFunction& f) { return detail::is_monotone(f, 1); }

// Rearrangement of a radial profile w0(|x|) on R^d, unit ball of measure one.
inline StepFunction circ_profile(const StepFunction& radial, int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  StepFunction h = map_arg_power(radial, Rational(1, d));
  if (is_nonincreasing(h)) return h;
  return star(h);
}

// v_* = 1 / (1/v)^*, for a radial profile of v.
inline StepFunction lower_star(const StepFunction& radial, int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  StepFunction h = map_arg_power(radial, Rational(1, d));
  if (is_nondecreasing(h)) return h;
  StepFunction inv = pow_compose(h, Rational(-1), ZeroPolicy::ToInfinity);
  return pow_compose(star(inv), Rational(-1), ZeroPolicy::ToInfinity);
}

// (int f g, int f* g*)
inline std::pair<ExtReal, ExtReal> hl_pairing(const StepFunction& f, const StepFunction& g) {
  auto prod = [](const StepFunction& a, const StepFunction& b) {
    if (a.all_constant() && b.all_constant()) {
      std::vector<double> cuts;
      std::merge(a.breaks().begin(), a.breaks().end(), b.breaks().begin(), b.breaks().end(), std::back_inserter(cuts));
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      ExtReal s = ExtReal::zero();
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        double x = cuts[i];
        double y = i + 1 < cuts.size() ? cuts[i + 1] : std::numeric_limits<double>::infinity();
        double v = detail::mul0(a(x), b(x));
        s = s + piece_integral(Piece::constant(v), x, y);
      }
      return s;
    }
    return integrate(a.to_fn() * b.to_fn(), 0.0, std::numeric_limits<double>::infinity());
  };
  return {prod(f, g), prod(star(f), star(g))};
}

}  // namespace wfi
