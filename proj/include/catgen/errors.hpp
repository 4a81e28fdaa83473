#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace catgen {

/// Compact "%.3g" rendering for error messages.
inline std::string error_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Base of every numerical failure raised by the library. The CLI maps
/// these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state or outcome has (numerically) zero norm and cannot be normalized.
class ZeroNormError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The requested state does not fit into the Fock truncation.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A channel lost more trace than allowed (Kraus cutoff too small).
class TraceLossError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A matrix that must be positive semidefinite has a significantly
/// negative eigenvalue.
class NonPositiveError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Caller passed arguments that violate a precondition (bad mode index,
/// mismatched truncations, out-of-range parameters).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace catgen
