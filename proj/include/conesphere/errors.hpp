#pragma once

#include <stdexcept>
#include <string>

namespace conesphere {

// Malformed or out-of-domain user input (bad radius, zero axis, NaN, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a special function or formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The analytic path is too ill-conditioned at this geometry to meet its
// accuracy target. Callers in auto mode reroute to quadrature.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conesphere
