#pragma once

#include <stdexcept>
#include <string>

namespace gbessel {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed, non-finite or out-of-domain input (CLI exit code 2).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Repeated or nearly repeated chamber coordinates where a regular point is required.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Parameter value for which an exact construction has a zero pivot.
class DegenerateParameter : public Error {
 public:
  using Error::Error;
};

/// A kernel with negative exponent evaluated on the boundary of its domain.
class SingularEvaluation : public Error {
 public:
  using Error::Error;
};

/// An integrand returned a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A series or exponential left the double range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A consistency check that must hold by construction failed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gbessel
