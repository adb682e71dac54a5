// Pitt-type power weights: which (lambda, alpha) pairs pass the criteria at p = 4/3, q = 2.
#include <iostream>

#include "wfi/criteria.hpp"

int main() {
  using namespace wfi;
  auto c = ExponentConfig::parse("4/3", "2");
  std::cout << "regime " << to_string(classify(c)) << "\n";
  for (int k = 0; k <= 4; ++k) {
    Rational alpha(k, 8);
    Rational lam = c.p.inv() + c.q.inv() + alpha - Rational(1);
    auto rep = evaluate(WeightSpec::power(lam, Role::U), WeightSpec::power(alpha, Role::V), c);
    std::cout << "alpha=" << alpha.str() << " lambda=" << lam.str() << "  holds=" << (rep.holds ? "yes" : "no")
              << "  C3=" << rep.constants.at("C3") << "\n";
  }
  // a bounded u with compact support against v = 1 in the q < 2 < p regime
  auto rep = evaluate(WeightSpec::indicator(1, Role::U), WeightSpec::power(0, Role::V), ExponentConfig::parse("4", "1"));
  std::cout << "\nind(1), v=1, p=4, q=1: regime " << to_string(rep.regime) << "\n";
  for (const auto& [k, v] : rep.constants) std::cout << "  " << k << " = " << v << "\n";
}
