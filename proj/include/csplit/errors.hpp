#pragma once

#include <stdexcept>
#include <string>

namespace csplit {

// Malformed user input: bad parameters, manifest errors, failed preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal invariant broke (e.g. a chain-map lift had no solution).
// Never caused by user input alone.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace csplit
