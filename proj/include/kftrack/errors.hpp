#pragma once

#include <stdexcept>
#include <string>

namespace kftrack {

/// Caller broke a documented precondition (bad dimensions, out-of-range
/// parameter, unknown enum value, out-of-order frame, ...).
class ContractViolation : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that must be invertible is singular or too ill-conditioned.
class NumericalSingularity : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A filtered state can no longer be decoded into a valid box.
class DegenerateState : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Model estimation (e.g. RANSAC) could not produce a usable result.
class EstimationFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A metric has no defined value on the given input (e.g. zero pairs).
class UndefinedMetric : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; message carries the offending line number.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Filesystem-level failure (missing file, unwritable directory).
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace kftrack
