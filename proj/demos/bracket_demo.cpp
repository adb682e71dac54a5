// Bracket the best Fourier constant for u = 1_[0,1], v = 1 at a few exponents.
#include <cstdio>
#include <sstream>

#include "wfi/extremal.hpp"

int main() {
  using namespace wfi;
  auto u = WeightSpec::indicator(1, Role::U);
  auto v = WeightSpec::power(0, Role::V);
  BracketOptions o;
  o.N = 1024;
  o.L = 32;
  o.budget = 16;
  for (auto [p, q] : {std::pair{"2", "2"}, {"4", "2"}, {"4", "1"}, {"3/2", "inf"}}) {
    auto b = bracket_constant(u, v, ExponentConfig::parse(p, q), o);
    std::ostringstream up;
    up << b.upper;
    std::printf("p=%-4s q=%-4s regime %-14s lower %.5f  upper %s\n", p, q, b.regime.c_str(), b.lower,
                up.str().c_str());
    for (const auto& w : b.witnesses)
      if (w.ratio > 0) std::printf("    %-14s %.5f  %s\n", w.kind.c_str(), w.ratio, w.detail.c_str());
  }
}
