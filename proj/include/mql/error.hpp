#pragma once

#include <stdexcept>
#include <string>

namespace mql {

/// A caller broke a documented precondition (bad index, dimension mismatch,
/// target outside the declared bounds, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The oracle refused a query because its budget is spent.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or construction would exceed its configured work limit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters admit no object of the requested shape.
class InfeasibleParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or rejected file content.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mql
