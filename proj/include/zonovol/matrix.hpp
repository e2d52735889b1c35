#ifndef ZONOVOL_MATRIX_HPP
#define ZONOVOL_MATRIX_HPP

#include <Eigen/Dense>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "zonovol/errors.hpp"

namespace zonovol {

/// Dense real matrix. Invariants checked at construction: at least one row
/// and one column, every entry finite.
class RealMatrix {
public:
  explicit RealMatrix(Eigen::MatrixXd m);
  RealMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static RealMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static RealMatrix identity(Eigen::Index n);

  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  bool is_square() const { return m_.rows() == m_.cols(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  const Eigen::MatrixXd& mat() const { return m_; }

private:
  Eigen::MatrixXd m_;
};

/// A named discrete-time linear system x(k+1) = A x(k) + B u(k) with
/// square A and row-compatible B.
class SystemModel {
public:
  SystemModel(std::string name, RealMatrix A, RealMatrix B);

  const std::string& name() const { return name_; }
  const RealMatrix& A() const { return A_; }
  const RealMatrix& B() const { return B_; }

  /// n: number of states.
  Eigen::Index state_dim() const { return A_.rows(); }
  /// r: number of inputs.
  Eigen::Index input_dim() const { return B_.cols(); }

private:
  std::string name_;
  RealMatrix A_;
  RealMatrix B_;
};

}  // namespace zonovol

#endif
