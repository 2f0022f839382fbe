// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance [--criterion N] [--quick] [--samples N] [--seed N]
#include <CLI11.hpp>

#include <iostream>

#include "scatent/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  scatent::VerifyOptions options;
  int only = 0;
  app.add_option("--criterion", only)->check(CLI::Range(1, scatent::kCriterionCount));
  app.add_flag("--quick", options.quick);
  app.add_option("--samples", options.mc_samples);
  app.add_option("--seed", options.seed);
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (int c = 1; c <= scatent::kCriterionCount; ++c) {
    if (only != 0 && c != only) continue;
    const auto result = scatent::run_criterion(c, options);
    std::cout << scatent::format_check(result) << std::endl;
    failed += (!result.passed && !result.skipped);
  }
  return failed == 0 ? 0 : 1;
}
