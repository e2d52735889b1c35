#include "zonovol/matrix.hpp"

#include <cmath>

namespace zonovol {

namespace {

void check_entries(const Eigen::MatrixXd& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j))) {
        throw Error("non-finite entry at (" + std::to_string(i) + ", " +
                    std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

RealMatrix::RealMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  check_entries(m_);
}

RealMatrix::RealMatrix(
    std::initializer_list<std::initializer_list<double>> rows) {
  const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index nc =
      nr > 0 ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  if (nr < 1 || nc < 1) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  m_.resize(nr, nc);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != nc) {
      throw DimensionError("row " + std::to_string(i) + " has " +
                           std::to_string(row.size()) + " entries, expected " +
                           std::to_string(nc));
    }
    Eigen::Index j = 0;
    for (double v : row) m_(i, j++) = v;
    ++i;
  }
  check_entries(m_);
}

RealMatrix RealMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index nc =
      nr > 0 ? static_cast<Eigen::Index>(rows.front().size()) : 0;
  if (nr < 1 || nc < 1) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  Eigen::MatrixXd m(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != nc) {
      throw DimensionError("row " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) +
                           " entries, expected " + std::to_string(nc));
    }
    for (Eigen::Index j = 0; j < nc; ++j) m(i, j) = rows[i][j];
  }
  return RealMatrix(std::move(m));
}

RealMatrix RealMatrix::identity(Eigen::Index n) {
  if (n < 1) {
    throw DimensionError("identity order must be positive");
  }
  return RealMatrix(Eigen::MatrixXd::Identity(n, n));
}

SystemModel::SystemModel(std::string name, RealMatrix A, RealMatrix B)
    : name_(std::move(name)), A_(std::move(A)), B_(std::move(B)) {
  if (!A_.is_square()) {
    throw DimensionError("state matrix must be square, got " +
                         std::to_string(A_.rows()) + "x" +
                         std::to_string(A_.cols()));
  }
  if (B_.rows() != A_.rows()) {
    throw DimensionError("input matrix has " + std::to_string(B_.rows()) +
                         " rows, state matrix has " + std::to_string(A_.rows()));
  }
}

}  // namespace zonovol
