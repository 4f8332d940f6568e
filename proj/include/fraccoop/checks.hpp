#pragma once
#include <string>
#include <vector>

// End-to-end verification checks: each one exercises a library feature
// against an independent oracle or a pinned analytic value and reports a
// single pass/fail with a quantitative summary.  The same checks back the
// standalone verification binary and the CLI preset command, so every
// experiment is reproducible from either entry point.
namespace fraccoop::checks {

struct CheckResult {
  int index = 0;        // canonical position, 1-based
  std::string name;     // stable kebab-case identifier (preset name)
  bool pass = false;
  std::string detail;   // semicolon-separated measurements
};

// Canonical check names in execution order.
std::vector<std::string> check_names();

// Runs one check by name.  Randomized checks draw from mt19937_64 streams
// derived from the seed, so results are bit-reproducible.  Throws
// invalid_input for unknown names.
CheckResult run_check(const std::string& name, unsigned long long seed);

// Runs every check in canonical order.
std::vector<CheckResult> run_all_checks(unsigned long long seed);

}  // namespace fraccoop::checks
