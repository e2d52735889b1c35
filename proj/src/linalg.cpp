#include "zonovol/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <utility>

namespace zonovol {

namespace detail {

namespace {

// Gaussian elimination with partial pivoting; the pivot is the entry of
// largest magnitude in the column, first row on ties.
double lu_determinant(double* a, int n) {
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a[k * n + k]);
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::abs(a[i * n + k]);
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      det = -det;
    }
    const double akk = a[k * n + k];
    det *= akk;
    for (int i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / akk;
      if (f == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

}  // namespace

double determinant_inplace(double* a, int n) {
  switch (n) {
    case 1:
      return a[0];
    case 2:
      return a[0] * a[3] - a[1] * a[2];
    case 3:
      return a[0] * (a[4] * a[8] - a[5] * a[7]) -
             a[1] * (a[3] * a[8] - a[5] * a[6]) +
             a[2] * (a[3] * a[7] - a[4] * a[6]);
    default:
      return lu_determinant(a, n);
  }
}

}  // namespace detail

namespace {

std::string format_det(double det) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", det);
  return buf;
}

}  // namespace

double determinant(const RealMatrix& M) {
  if (!M.is_square()) {
    throw DimensionError("determinant needs a square matrix, got " +
                         std::to_string(M.rows()) + "x" +
                         std::to_string(M.cols()));
  }
  const int n = static_cast<int>(M.rows());
  constexpr int kStackDim = 8;
  const auto& m = M.mat();
  if (n <= kStackDim) {
    std::array<double, kStackDim * kStackDim> buf;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) buf[i * n + j] = m(i, j);
    return detail::determinant_inplace(buf.data(), n);
  }
  std::vector<double> buf(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) buf[i * static_cast<std::size_t>(n) + j] = m(i, j);
  return detail::determinant_inplace(buf.data(), n);
}

RealMatrix invert(const RealMatrix& M) {
  if (!M.is_square()) {
    throw DimensionError("inverse needs a square matrix, got " +
                         std::to_string(M.rows()) + "x" +
                         std::to_string(M.cols()));
  }
  const double det = determinant(M);
  if (std::abs(det) <= kSingularDetFloor) {
    throw SingularMatrixError(
        "matrix is numerically singular, det = " + format_det(det), det);
  }
  const Eigen::Index n = M.rows();
  Eigen::MatrixXd inv =
      M.mat().partialPivLu().solve(Eigen::MatrixXd::Identity(n, n));
  return RealMatrix(std::move(inv));
}

Spectrum eig_real_distinct(const RealMatrix& A, double separation_tol) {
  if (!A.is_square()) {
    throw DimensionError("eigendecomposition needs a square matrix, got " +
                         std::to_string(A.rows()) + "x" +
                         std::to_string(A.cols()));
  }
  const int n = static_cast<int>(A.rows());
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A.mat());
  if (solver.info() != Eigen::Success) {
    throw Error("eigenvalue iteration failed to converge");
  }
  const auto vals = solver.eigenvalues();
  double max_abs = 0.0;
  for (int i = 0; i < n; ++i) max_abs = std::max(max_abs, std::abs(vals[i]));
  const double tol =
      separation_tol > 0.0 ? separation_tol : 1e-9 * std::max(max_abs, 1e-30);

  for (int i = 0; i < n; ++i) {
    if (std::abs(vals[i].imag()) > tol) {
      throw SpectralUnsupported(
          SpectralIssue::Complex,
          "eigenvalue " + format_det(vals[i].real()) + " + " +
              format_det(vals[i].imag()) + "i is not real");
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return vals[a].real() < vals[b].real();
  });

  std::vector<double> lams(n);
  Eigen::MatrixXd V(n, n);
  const auto vecs = solver.eigenvectors();
  for (int i = 0; i < n; ++i) {
    lams[i] = vals[order[i]].real();
    Eigen::VectorXd v = vecs.col(order[i]).real();
    const double norm = v.norm();
    if (norm <= 0.0) {
      throw Error("eigenvector with zero norm");
    }
    v /= norm;
    for (int k = 0; k < n; ++k) {
      if (v[k] != 0.0) {
        if (v[k] < 0.0) v = -v;
        break;
      }
    }
    V.col(i) = v;
  }

  for (int i = 0; i < n; ++i) {
    if (lams[i] <= 0.0) {
      throw SpectralUnsupported(
          SpectralIssue::NonPositive,
          "eigenvalue " + format_det(lams[i]) + " is not strictly positive");
    }
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (lams[i + 1] - lams[i] <= tol) {
      throw SpectralUnsupported(
          SpectralIssue::Repeated,
          "eigenvalues " + format_det(lams[i]) + " and " +
              format_det(lams[i + 1]) + " are separated by less than " +
              format_det(tol));
    }
  }

  RealMatrix Vm(V);
  const double det_V = determinant(Vm);
  if (std::abs(det_V) <= kSingularDetFloor) {
    throw SpectralUnsupported(SpectralIssue::Repeated,
                              "eigenvector matrix is numerically singular");
  }
  Eigen::MatrixXd W = V.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n));

  // Diagonalization sanity check: W A W^{-1} must reproduce diag(lams).
  Eigen::MatrixXd D = W * A.mat() * V;
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double want = i == j ? lams[i] : 0.0;
      err = std::max(err, std::abs(D(i, j) - want));
    }
  }
  if (err > 1e-7 * std::max(max_abs, 1.0)) {
    throw Error("diagonalization residual " + format_det(err) +
                " too large; eigenvector matrix is ill-conditioned");
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(W);
  const auto& sv = svd.singularValues();
  const double cond =
      sv[n - 1] > 0.0 ? sv[0] / sv[n - 1] : std::numeric_limits<double>::infinity();

  return Spectrum{std::move(lams),
                  RealMatrix(std::move(W)),
                  std::move(Vm),
                  std::nullopt,
                  {},
                  1.0 / std::abs(det_V),
                  cond};
}

Spectrum eig_real_distinct(const SystemModel& model, double separation_tol) {
  Spectrum s = eig_real_distinct(model.A(), separation_tol);
  Eigen::MatrixXd G = s.W.mat() * model.B().mat();
  if (model.input_dim() == 1) {
    s.beta.assign(G.data(), G.data() + G.rows());
  }
  s.gamma = RealMatrix(std::move(G));
  return s;
}

RealMatrix controllability_matrix(const SystemModel& model, int horizon) {
  if (horizon < 1) {
    throw DimensionError("horizon must be at least 1, got " +
                         std::to_string(horizon));
  }
  const Eigen::Index n = model.state_dim();
  const Eigen::Index r = model.input_dim();
  Eigen::MatrixXd P(n, r * horizon);
  Eigen::MatrixXd block = model.B().mat();
  for (int k = 0; k < horizon; ++k) {
    P.middleCols(k * r, r) = block;
    if (k + 1 < horizon) block = model.A().mat() * block;
  }
  return RealMatrix(std::move(P));
}

int numeric_rank(const RealMatrix& M) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M.mat());
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0.0) return 0;
  const double thresh = 1e-10 * sv[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > thresh) ++rank;
  }
  return rank;
}

}  // namespace zonovol
