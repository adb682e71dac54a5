// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <iostream>

#include "wfi/verify.hpp"

int main() {
  int failed = 0, id = 0;
  for (const auto& [name, run] : wfi::verify::suites()) {
    ++id;
    wfi::verify::SuiteResult r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r.id = id;
      r.name = name;
      r.passed = false;
      r.detail = std::string("threw: ") + e.what();
    }
    std::cout << wfi::verify::summary_line(r) << std::endl;
    if (!r.passed) ++failed;
  }
  auto total = wfi::verify::suites().size();
  if (failed) std::cout << "FAILED " << failed << " of " << total << std::endl;
  else std::cout << "passed " << total << " of " << total << std::endl;
  return failed ? 1 : 0;
}
