#pragma once

#include <stdexcept>
#include <string>

namespace pseudoherm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different operator bases (position vs ladder).
class BasisError : public Error {
public:
  using Error::Error;
};

/// A terminating similarity transform did not terminate.
class NonNilpotentError : public Error {
public:
  using Error::Error;
};

/// A graded generator carries a nonzero order-0 part.
class GradingError : public Error {
public:
  using Error::Error;
};

/// Eigensolver, exponential or quadrature failed its accuracy contract.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// A requested object is not uniquely defined (degenerate level, kernel).
class AmbiguityError : public Error {
public:
  using Error::Error;
};

/// Model parameters outside the domain an operation supports.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Malformed operator text or JSON.
class ParseError : public Error {
public:
  using Error::Error;
};

/// The order-by-order linear system for Q was inconsistent.
class DerivationError : public Error {
public:
  using Error::Error;
};

} // namespace pseudoherm
