#pragma once

#include <stdexcept>
#include <string>

namespace subprod {

/// Intermediate integer value left the int64 range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Caller broke a documented precondition (bad dimensions, wrong ambient
/// group, non-injective map, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structural fact that must hold by the underlying mathematics did not.
/// Always a bug in this library, never a property of the input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A search ran out of its node budget.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ContractError(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace subprod
