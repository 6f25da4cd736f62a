#pragma once

#include <stdexcept>

namespace rsl {

// Thrown when an operation would exceed a configured resource budget
// (exact-arithmetic depth cap, enumeration size, simulation work product).
// Distinct from std::invalid_argument so callers can map it to a
// dedicated exit code.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rsl
