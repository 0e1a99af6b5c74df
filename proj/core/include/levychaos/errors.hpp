#pragma once

#include <stdexcept>
#include <string>

namespace levychaos {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad measure, mismatched orders, invalid parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A size cap (ground-set size, simplex dimension, polynomial degree) was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Quadrature did not converge, or a value came out non-finite.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The requested operation cannot be carried out on this representation,
/// e.g. a non-monomial integrand against a moment table.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A moment table lacks an entry needed by the computation.
class MissingMomentError : public UnsupportedError {
 public:
  using UnsupportedError::UnsupportedError;
};

}  // namespace levychaos
