#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hotk {

// One property check outcome; detail carries the measured deviation and the
// tolerance it was held against.
struct CheckResult {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfcheckOptions {
  bool full = false;  // full mode raises sample counts and problem sizes
  std::uint64_t seed = 0;
};

// Runs the built-in property suite over transforms, products, factorizations,
// shrinkage operators, the solver, and the experiment helpers.
std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& opt);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace hotk
