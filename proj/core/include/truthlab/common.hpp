#pragma once

#include <cstddef>
#include <stdexcept>

namespace truthlab {

/// Thrown when an exhaustive enumeration would exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Default cap on the number of candidates any brute-force enumeration may visit.
inline constexpr std::size_t kDefaultEnumerationBudget = 10'000'000;

}  // namespace truthlab
