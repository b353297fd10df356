#pragma once

#include <stdexcept>
#include <string>

namespace pauli {

/// Bad user input: config keys, parameters, preconditions on arguments.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical contract was violated at run time (non-convergence,
/// delocalized state, non-finite values).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing, unreadable or corrupt files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pauli
