#pragma once

#include <stdexcept>
#include <string>

namespace riccati {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Semi-tensor or plain product requested between incompatible shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Problem data with inconsistent row/column counts.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be inverted or factored is numerically singular.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Input to a positive-semidefinite factorization has a negative eigenvalue
/// beyond tolerance.
class NotPSDError : public Error {
 public:
  using Error::Error;
};

/// An iterate would exceed the configured row-dimension cap.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

/// No Cayley shift candidate produced a usable transformation.
class GammaSelectionError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance or result file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Instance data violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Too few recorded iterates to estimate a convergence rate.
class InsufficientHistoryError : public Error {
 public:
  using Error::Error;
};

}  // namespace riccati
