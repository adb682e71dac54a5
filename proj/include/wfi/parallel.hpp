#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace wfi {

// Per-task generator derived from a root seed, independent of scheduling.
inline std::mt19937_64 task_rng(std::uint64_t root, std::uint64_t task) {
  std::seed_seq s{static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32),
                  static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
  return std::mt19937_64(s);
}

inline unsigned worker_count(std::size_t tasks) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(tasks, 1)));
}

// Runs body(i) for i in [0, n); results must be written to caller-owned slots.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  unsigned w = worker_count(n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex m;
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(m);
        if (!err) err = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> ts;
  for (unsigned k = 0; k < w; ++k) ts.emplace_back(run);
  for (auto& t : ts) t.join();
  if (err) std::rethrow_exception(err);
}

template <class T, class Body>
std::vector<T> parallel_map(std::size_t n, Body&& body) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = body(i); });
  return out;
}

}  // namespace wfi
