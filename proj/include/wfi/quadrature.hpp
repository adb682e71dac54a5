#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

namespace wfi::quad {

inline constexpr double kTol = 1e-11;

namespace detail {

// Integrands may themselves integrate, and the Boost integrators grow their
// abscissa tables in place, so every nesting level gets its own instance.
inline thread_local int depth = 0;

struct Nested {
  Nested() { ++depth; }
  ~Nested() { --depth; }
  Nested(const Nested&) = delete;
  Nested& operator=(const Nested&) = delete;
};

template <class Q, class Make>
Q& at_level(std::vector<std::unique_ptr<Q>>& pool, Make make) {
  while (static_cast<int>(pool.size()) <= depth) pool.push_back(make());
  return *pool[static_cast<std::size_t>(depth)];
}

inline boost::math::quadrature::tanh_sinh<double>& tanh_sinh() {
  thread_local std::vector<std::unique_ptr<boost::math::quadrature::tanh_sinh<double>>> pool;
  return at_level(pool, [] { return std::make_unique<boost::math::quadrature::tanh_sinh<double>>(15); });
}
inline boost::math::quadrature::exp_sinh<double>& exp_sinh() {
  thread_local std::vector<std::unique_ptr<boost::math::quadrature::exp_sinh<double>>> pool;
  return at_level(pool, [] { return std::make_unique<boost::math::quadrature::exp_sinh<double>>(9); });
}

// Integrands may legitimately return +inf on a null set near an endpoint;
// quadrature never touches endpoints, but guard against NaN from 0*inf.
template <class F>
auto guarded(const F& f) {
  return [&f](double t) {
    double v = f(t);
    return std::isnan(v) ? 0.0 : v;
  };
}

}  // namespace detail

// Integral of a smooth (up to endpoint singularities) function over [a, b], b finite.
template <class F>
double finite_segment(const F& f, double a, double b) {
  if (!(b > a)) return 0.0;
  auto g = detail::guarded(f);
  // tanh_sinh cannot place abscissas inside a handful of ulps
  if (b - a <= 1e-13 * std::max(1.0, std::abs(b))) return g(0.5 * (a + b)) * (b - a);
  // long ranges are split geometrically so that each piece spans a moderate ratio
  if (a > 0 && b / a > 2e3) {
    double s = 0;
    double lo = a;
    while (lo < b) {
      double hi = std::min(b, lo * 1e3);
      s += finite_segment(f, lo, hi);
      lo = hi;
    }
    return s;
  }
  if (a == 0.0 && b > 1e3) return finite_segment(f, 0.0, 1.0) + finite_segment(f, 1.0, b);
  // integrate in s = x - a so abscissas near a keep their precision, and never
  // let rounding land on an endpoint
  double lo = std::nextafter(a, b), hi = std::nextafter(b, a);
  // an integrand already known to be integrable can still overflow right at a
  // singular endpoint; that sliver carries no mass
  double len = b - a, edge = 1e-9 * len;
  auto h = [&](double t) {
    double v = g(std::clamp(a + t, lo, hi));
    if (std::isinf(v) && (t < edge || len - t < edge)) return 0.0;
    return v;
  };
  auto& q = detail::tanh_sinh();
  detail::Nested guard;
  return q.integrate(h, 0.0, b - a, kTol);
}

// Integral over [a, inf), a > 0.
template <class F>
double infinite_segment(const F& f, double a) {
  auto g = detail::guarded(f);
  // same shifted variable as finite_segment; abscissas may round onto a
  double lo = std::nextafter(a, std::numeric_limits<double>::infinity());
  double edge = 1e-9 * std::max(1.0, a);
  auto h = [&](double s) {
    double v = g(std::max(a + s, lo));
    if (std::isinf(v) && s < edge) return 0.0;
    return v;
  };
  double err = 0;
  auto& q = detail::exp_sinh();
  detail::Nested guard;
  return q.integrate(h, 0.0, std::numeric_limits<double>::infinity(), kTol, &err);
}

// Smooth integrand on a compact interval without endpoint singularities.
template <class F>
double smooth_segment(const F& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(detail::guarded(f), a, b, 8, 1e-12);
}

// Maximum of f over [a, b] (finite, a > 0 allowed to be 0) by scanning in log
// scale and refining the best bracket with Brent's method.
template <class F>
std::pair<double, double> maximize(const F& f, double a, double b, int samples = 24) {
  double best_x = a, best_v = -std::numeric_limits<double>::infinity();
  auto consider = [&](double x) {
    double v = f(x);
    if (std::isnan(v)) return;
    if (v > best_v) { best_v = v; best_x = x; }
  };
  if (!(b > a)) {
    consider(a);
    return {best_x, best_v};
  }
  std::vector<double> xs;
  bool logscale = a > 0 && b / a > 4.0;
  for (int i = 0; i <= samples; ++i) {
    double s = static_cast<double>(i) / samples;
    xs.push_back(logscale ? a * std::pow(b / a, s) : a + (b - a) * s);
  }
  xs.front() = a;
  xs.back() = b;
  std::vector<double> vs;
  for (double x : xs) {
    double v = f(x);
    vs.push_back(std::isnan(v) ? -std::numeric_limits<double>::infinity() : v);
    if (vs.back() > best_v) { best_v = vs.back(); best_x = x; }
  }
  std::size_t k = static_cast<std::size_t>(std::max_element(vs.begin(), vs.end()) - vs.begin());
  if (std::isinf(best_v)) return {best_x, best_v};
  double lo = xs[k == 0 ? 0 : k - 1];
  double hi = xs[std::min(k + 1, xs.size() - 1)];
  if (hi > lo) {
    auto neg = [&](double y) {
      double x = logscale ? std::exp(y) : y;
      double v = f(x);
      return std::isnan(v) ? std::numeric_limits<double>::infinity() : -v;
    };
    double ylo = logscale ? std::log(lo) : lo;
    double yhi = logscale ? std::log(hi) : hi;
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::brent_find_minima(neg, ylo, yhi, 52, iters);
    double x = logscale ? std::exp(r.first) : r.first;
    consider(std::clamp(x, a, b));
  }
  return {best_x, best_v};
}

}  // namespace wfi::quad
