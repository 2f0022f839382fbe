#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Acceptance checks shared by `scatent verify` and the acceptance test binary.
namespace scatent {

struct VerifyOptions {
  bool quick = false;  // skip the Monte-Carlo criteria (5-8)
  std::uint64_t mc_samples = 10'000'000;
  std::uint64_t seed = 0x5eed2011ULL;
  // Override of the 1e-5 tolerance on the J golden values.
  std::optional<double> j_tol;
  unsigned threads = 0;
};

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

bool is_monte_carlo_criterion(int criterion);

// Reference E values on the default 21-point grid 0.5, 0.525, ..., 1.0.
const std::vector<double>& reference_table();

CheckResult run_criterion(int criterion, const VerifyOptions& options);
std::vector<CheckResult> run_acceptance(const VerifyOptions& options);

// One line per check: "[PASS] 3 symmetry ... (detail)".
std::string format_check(const CheckResult& check);

}  // namespace scatent
