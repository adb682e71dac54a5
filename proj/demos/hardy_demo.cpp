// Closed-form Hardy constants next to the brute-force maximizer.
// u = t^{-a} past 1 with a = 1 + q/p', so the sup form stays finite.
#include <cstdio>

#include "wfi/hardy.hpp"

int main() {
  using namespace wfi;
  HardyProblem pr;
  pr.kind = HardyKind::HeadIntegral;
  pr.v = StepFunction::constant(1.0);
  std::printf("%-14s %4s %4s %10s %10s\n", "kind", "p", "q", "K", "brute");
  for (auto [p, q] : {std::pair{2, 2}, {2, 3}, {3, 3}, {3, 5}}) {
    pr.p = Exponent::finite(p);
    pr.q = Exponent::finite(q);
    Rational a = Rational(1) + Rational(q) * (Rational(1) - Rational(1, p));
    pr.u = StepFunction({0.0, 1.0}, {Piece::constant(0.0), Piece::power(1.0, a)});
    double K = hardy_K(pr).value();
    double b = brute_force_K(pr, problem_grid(pr, 5), 10, 7, 8);
    std::printf("%-14s %4d %4d %10.5f %10.5f\n", to_string(pr.kind), p, q, K, b);
  }
}
