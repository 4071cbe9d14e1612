// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
#include "graftlab/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  graftlab::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--quick") opt.profile = graftlab::Profile::Quick;
    else if (a.rfind("--seed=", 0) == 0) opt.seed = std::stoull(a.substr(7));
  }
  bool ok = true;
  for (int id = 1; id <= graftlab::kCriterionCount; ++id) {
    const auto r = graftlab::run_criterion(id, opt);
    std::cout << graftlab::format_line(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
