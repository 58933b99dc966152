#pragma once

#include <stdexcept>
#include <string>

namespace abba {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes of the operands are incompatible.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operands live on different scalar backends.
class BackendError : public Error {
 public:
  using Error::Error;
};

/// A structural hypothesis (EP, PSD, normal, ...) required by an operation does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// The operation is not available for this backend or input form.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix file or scalar literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace abba
