#pragma once

#include <stdexcept>
#include <string>

#include "prio/rational.hpp"

namespace prio {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance fails a structural invariant (empty job set, bad priority list, ...).
struct InvalidInstance : Error {
  using Error::Error;
};

// Unknown player / machine / resource id.
struct InvalidReference : Error {
  using Error::Error;
};

// Argument outside the operation's domain (alpha < 1, negative load, ...).
struct DomainError : Error {
  using Error::Error;
};

// Operation not defined for this instance class (e.g. two-machine
// construction on m != 2).
struct UnsupportedError : Error {
  using Error::Error;
};

// Exhaustive scan refused: profile space larger than the caller's budget.
// No partial answer is produced.
struct BudgetExceeded : Error {
  BudgetExceeded(const std::string& what, BigInt count)
      : Error(what), profile_count(std::move(count)) {}
  BigInt profile_count;
};

}  // namespace prio
