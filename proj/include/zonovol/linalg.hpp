#ifndef ZONOVOL_LINALG_HPP
#define ZONOVOL_LINALG_HPP

#include <optional>
#include <vector>

#include "zonovol/matrix.hpp"

namespace zonovol {

/// Sentinel: resolve tolerances from the data (see eig_real_distinct).
inline constexpr double kAutoTolerance = -1.0;

/// |det| at or below this is treated as singular.
inline constexpr double kSingularDetFloor = 1e-300;

/// Real eigenstructure of a state matrix with distinct positive eigenvalues.
/// W diagonalizes: W * A * W^{-1} = diag(eigenvalues).
struct Spectrum {
  std::vector<double> eigenvalues;  ///< strictly ascending, all > 0
  RealMatrix W;                     ///< inverse of the eigenvector matrix
  RealMatrix W_inv;                 ///< eigenvector matrix, columns unit norm
  std::optional<RealMatrix> gamma;  ///< W * B when built from a model
  std::vector<double> beta;         ///< gamma column when the model is single-input
  double det_W_abs = 0.0;
  double condition_estimate = 0.0;  ///< 2-norm condition number of W
};

/// Determinant by partial-pivot elimination (direct formulas up to 3x3).
double determinant(const RealMatrix& M);

/// Inverse of a square matrix; throws SingularMatrixError (carrying the
/// determinant) when |det| <= kSingularDetFloor.
RealMatrix invert(const RealMatrix& M);

/// Eigendecomposition restricted to the case this library can exploit:
/// all eigenvalues real, simple, and strictly positive. Eigenvalues are
/// returned ascending; eigenvectors have unit Euclidean norm with the first
/// nonzero component positive. separation_tol defaults to 1e-9 * max|lambda|;
/// a gap at or below it raises SpectralUnsupported(Repeated), an imaginary
/// part above it SpectralUnsupported(Complex).
Spectrum eig_real_distinct(const RealMatrix& A,
                           double separation_tol = kAutoTolerance);

/// Same, and additionally fills gamma = W * B (and beta for single input).
Spectrum eig_real_distinct(const SystemModel& model,
                           double separation_tol = kAutoTolerance);

/// [B, AB, ..., A^{horizon-1}B] built by iterated multiplication.
RealMatrix controllability_matrix(const SystemModel& model, int horizon);

/// Number of singular values above 1e-10 * sigma_max.
int numeric_rank(const RealMatrix& M);

namespace detail {

/// Determinant of the n-by-n matrix stored row-major in a; overwrites a.
double determinant_inplace(double* a, int n);

}  // namespace detail

}  // namespace zonovol

#endif
