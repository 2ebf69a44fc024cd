#pragma once

#include <stdexcept>
#include <string>

namespace forge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition. The CLI maps this to exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operand from a different carrier (field mismatch, field constant in an integer circuit).
class CarrierMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A configured desk-scale budget would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An asserted mathematical property failed on a concrete instance. Exit code 1.
class PropertyViolation : public Error {
 public:
  using Error::Error;
};

/// A search for a witness came back empty. Exit code 1.
class NotFound : public PropertyViolation {
 public:
  using PropertyViolation::PropertyViolation;
};

}  // namespace forge
