#pragma once

#include <stdexcept>
#include <string>

namespace chainlab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or complex dimensions disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Operands live over different coefficient rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// A structural invariant (d^2 = 0, chain-map commutation, relation
/// compatibility, ...) does not hold.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The requested computation is outside the supported fragment.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace chainlab
