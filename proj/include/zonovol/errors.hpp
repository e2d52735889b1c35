#ifndef ZONOVOL_ERRORS_HPP
#define ZONOVOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zonovol {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch: non-square input, incompatible row counts, empty horizon.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A matrix required to be invertible has |det| at or below the floor.
class SingularMatrixError : public Error {
public:
  SingularMatrixError(const std::string& what, double det)
      : Error(what), det_(det) {}
  double determinant() const { return det_; }

private:
  double det_;
};

/// Why the spectral path cannot handle a given state matrix.
enum class SpectralIssue { Complex, Repeated, NonPositive };

/// Signals "fall back to the generic methods": the state matrix has a
/// complex, repeated/clustered, or non-positive eigenvalue.
class SpectralUnsupported : public Error {
public:
  SpectralUnsupported(SpectralIssue issue, const std::string& what)
      : Error(what), issue_(issue) {}
  SpectralIssue issue() const { return issue_; }

private:
  SpectralIssue issue_;
};

/// A documented precondition was violated by the caller (ordering of
/// eigenvalues or exponents, overlapping label ranges, bad option values).
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// Input outside the mathematical domain of a formula (eigenvalue at or
/// beyond a convergence margin, and similar).
class DomainError : public Error {
public:
  using Error::Error;
};

/// The infinite-time controllable region is unbounded for this system.
class DivergentRegionError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Malformed model file: syntax, types, or dimension diagnostics.
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace zonovol

#endif
