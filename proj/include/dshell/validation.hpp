#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dshell {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Randomized invariant checks across all modules, sized to finish in seconds.
std::vector<CheckResult> run_validation_suite(std::uint64_t seed = 7);

}  // namespace dshell
