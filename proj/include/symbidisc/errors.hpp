#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace symbidisc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together (or exceed the 32x32 cap).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A point fails membership in D, T or G.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what,
                       std::optional<double> modulus = std::nullopt)
      : Error(what), modulus_(modulus) {}

  /// Offending modulus (root of the symmetrisation quadratic, disc value, ...)
  std::optional<double> modulus() const { return modulus_; }

 private:
  std::optional<double> modulus_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Matrices that should commute do not.
class CommutationError : public Error {
 public:
  CommutationError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Structurally invalid input: non-Hermitian data, asymmetric hereditary
/// polynomial, indefinite Gram matrix handed to a factorization, ...
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace symbidisc
