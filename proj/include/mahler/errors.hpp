#pragma once

#include <stdexcept>
#include <string>

namespace mahler {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on caller-supplied data failed (bad shape, bad value,
/// unparsable document).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Division by the zero polynomial or the zero rational.
class DivisionByZero : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A truncated series does not carry enough coefficients for the request.
class InsufficientData : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// An identity that holds mathematically was observed to fail. This always
/// indicates a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace mahler
