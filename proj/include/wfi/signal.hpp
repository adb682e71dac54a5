#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "step_function.hpp"

namespace wfi {

using cplx = std::complex<double>;

// Samples at x_k = -L/2 + k L/N, k = 0..N-1; each sample stands for the cell
// [x_k - L/(2N), x_k + L/(2N)).
struct SampledSignal {
  std::size_t N = 0;
  double L = 0.0;
  std::vector<cplx> samples;

  SampledSignal() = default;
  SampledSignal(std::size_t n, double l, std::vector<cplx> s) : N(n), L(l), samples(std::move(s)) {
    if (N < 4 || (N & (N - 1)) != 0) throw std::invalid_argument("N must be a power of two >= 4");
    if (!(L > 0) || std::isinf(L)) throw std::invalid_argument("L must be positive");
    if (samples.size() != N) throw std::invalid_argument("sample count does not match N");
  }

  double dx() const { return L / static_cast<double>(N); }
  double x(std::size_t k) const { return -0.5 * L + static_cast<double>(k) * dx(); }

  template <class F>
  static SampledSignal from_function(std::size_t n, double l, F&& f) {
    SampledSignal sig(n, l, std::vector<cplx>(n));
    for (std::size_t k = 0; k < n; ++k) sig.samples[k] = f(sig.x(k));
    return sig;
  }

  std::vector<double> magnitudes() const {
    std::vector<double> m(N);
    for (std::size_t k = 0; k < N; ++k) m[k] = std::abs(samples[k]);
    return m;
  }
};

namespace detail {

// FFTW plans are created under a lock and executed on caller-owned buffers.
class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans p;
    return p;
  }
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lk(m_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan pl = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    plans_[key] = pl;
    return pl;
  }
  ~FftPlans() {
    for (auto& [k, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex m_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : p(fftw_alloc_complex(n)) {}
  ~FftwBuffer() { fftw_free(p); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* p;
};

inline std::vector<cplx> fft(const std::vector<cplx>& a, int sign) {
  std::size_t n = a.size();
  fftw_plan pl = FftPlans::instance().get(n, sign);
  FftwBuffer in(n), out(n);
  for (std::size_t k = 0; k < n; ++k) {
    in.p[k][0] = a[k].real();
    in.p[k][1] = a[k].imag();
  }
  fftw_execute_dft(pl, in.p, out.p);
  std::vector<cplx> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = {out.p[k][0], out.p[k][1]};
  return r;
}

}  // namespace detail

// fhat(xi_m) = dx * sum_k f(x_k) e^{-2 pi i x_k xi_m} on xi_m = (m - N/2)/L.
// The result lives on the dual grid: N samples over length N/L.
inline SampledSignal dft(const SampledSignal& f) {
  std::size_t n = f.N;
  std::vector<cplx> a(n);
  // x_k xi_m = (k/N - 1/2)(m - N/2) gives alternating signs on both sides
  for (std::size_t k = 0; k < n; ++k) a[k] = (k % 2 ? -1.0 : 1.0) * f.samples[k];
  auto b = detail::fft(a, FFTW_FORWARD);
  double dx = f.dx();
  cplx phase = std::polar(1.0, -M_PI * static_cast<double>(n % 4) / 2.0);
  for (std::size_t m = 0; m < n; ++m) b[m] *= (m % 2 ? -1.0 : 1.0) * dx * phase;
  return SampledSignal(n, static_cast<double>(n) / f.L, std::move(b));
}

inline SampledSignal idft(const SampledSignal& g) {
  std::size_t n = g.N;
  std::vector<cplx> a(n);
  for (std::size_t m = 0; m < n; ++m) a[m] = (m % 2 ? -1.0 : 1.0) * g.samples[m];
  auto b = detail::fft(a, FFTW_BACKWARD);
  double dxi = g.dx();
  cplx phase = std::polar(1.0, M_PI * static_cast<double>(n % 4) / 2.0);
  for (std::size_t k = 0; k < n; ++k) b[k] *= (k % 2 ? -1.0 : 1.0) * dxi * phase;
  return SampledSignal(n, static_cast<double>(n) / g.L, std::move(b));
}

inline double l1_norm(const SampledSignal& f) {
  double s = 0;
  for (const auto& z : f.samples) s += std::abs(z);
  return s * f.dx();
}
inline double l2_norm(const SampledSignal& f) {
  double s = 0;
  for (const auto& z : f.samples) s += std::norm(z);
  return std::sqrt(s * f.dx());
}
inline double sup_norm(const SampledSignal& f) {
  double s = 0;
  for (const auto& z : f.samples) s = std::max(s, std::abs(z));
  return s;
}

// |f| laid out cell by cell on the half-line; equimeasurable with |f| on R.
inline StepFunction cell_profile(const SampledSignal& f) {
  std::vector<double> br(f.N + 1), vals(f.N + 1, 0.0);
  double h = f.dx();
  for (std::size_t k = 0; k <= f.N; ++k) br[k] = static_cast<double>(k) * h;
  for (std::size_t k = 0; k < f.N; ++k) vals[k] = std::abs(f.samples[k]);
  return StepFunction::from_values(std::move(br), vals);
}

// Sums of Gaussian wave packets c_j exp(-pi (x - x_j)^2 / s_j^2) e^{2 pi i w_j x};
// numerically band-limited and well inside the window.
inline SampledSignal random_bandlimited(std::mt19937_64& rng, std::size_t N = 4096, double L = 64.0) {
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_real_distribution<double> pos(-L / 8, L / 8), width(0.5, 4.0), freq(-2.0, 2.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int J = count(rng);
  struct Packet {
    cplx c;
    double x0, s, w;
  };
  std::vector<Packet> ps;
  for (int j = 0; j < J; ++j) {
    Packet p;
    p.c = {gauss(rng), gauss(rng)};
    p.x0 = pos(rng);
    p.s = width(rng);
    p.w = freq(rng);
    ps.push_back(p);
  }
  return SampledSignal::from_function(N, L, [&](double x) {
    cplx s = 0;
    for (const auto& p : ps) {
      double z = (x - p.x0) / p.s;
      s += p.c * std::exp(-M_PI * z * z) * std::polar(1.0, 2 * M_PI * p.w * x);
    }
    return s;
  });
}

}  // namespace wfi
