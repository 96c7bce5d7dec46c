#pragma once

#include <stdexcept>
#include <string>

namespace tsbitlab {

/// Argument outside the mathematical domain of an operation (x outside [0,1], q = 1 for H^q, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Position or length outside the valid range for a sequence.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// No sequence with the requested shape could be constructed.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration would exceed the configured work guard.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tsbitlab
