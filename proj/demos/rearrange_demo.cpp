// Prints f*, f** and the distribution function of a small step function.
#include <cstdio>

#include "wfi/rearrange.hpp"

int main() {
  using namespace wfi;
  auto f = StepFunction::from_values({0.0, 1.0, 1.5, 3.0, 4.0}, {2.0, 5.0, 1.0, 3.0, 0.0});
  StepFunction fs = star(f);
  auto fss = double_star(f);
  StepFunction mu = distribution(f);
  std::printf("%8s %10s %10s\n", "t", "f*", "f**");
  for (double t : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 3.5, 4.5})
    std::printf("%8.3f %10.4f %10.4f\n", t, fs(t), fss(t));
  std::printf("\n%8s %10s\n", "lambda", "mu_f");
  for (double l : {0.0, 1.0, 2.5, 4.0, 5.0})
    std::printf("%8.3f %10.4f\n", l, mu(l));
}
