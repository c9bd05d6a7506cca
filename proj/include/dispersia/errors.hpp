#pragma once

#include <stdexcept>
#include <string>

namespace dispersia {

// Thrown when an enumeration or search would exceed its stated budget.
// The CLI maps this to exit code 2.
class budget_error : public std::runtime_error {
public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dispersia
