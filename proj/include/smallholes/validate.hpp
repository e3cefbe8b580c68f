#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace smallholes {

struct CheckResult {
  std::string suite;
  std::string name;
  /// Measured quantity and the bound it must not exceed.
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  int failures() const;
  bool passed() const { return failures() == 0; }
};

/// Runs the invariant suites of every module with randomized inputs drawn
/// from `seed`. With inject_failure every bound is replaced by a negative
/// number, so every check fails (negative control).
ValidationReport run_validate(std::uint64_t seed, bool inject_failure = false);

}  // namespace smallholes
