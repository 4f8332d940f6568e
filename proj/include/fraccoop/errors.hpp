#pragma once
#include <stdexcept>
#include <string>

namespace fraccoop {

// Invalid user input: bad domain sizes, sign violations in coupling fields,
// malformed configs.  The CLI maps this to exit code 1.
struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: bracket not found, iteration did not converge, invariant
// breached mid-run.  The CLI maps this to exit code 2.
struct numeric_failure : std::runtime_error {
  explicit numeric_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fraccoop
