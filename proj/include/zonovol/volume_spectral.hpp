#ifndef ZONOVOL_VOLUME_SPECTRAL_HPP
#define ZONOVOL_VOLUME_SPECTRAL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "zonovol/linalg.hpp"
#include "zonovol/matrix.hpp"
#include "zonovol/volume.hpp"

namespace zonovol {

/// det[lambda_i ^ k_j] for strictly ascending positive lambdas and strictly
/// ascending nonnegative integer exponents; positive for every such input.
double quasi_vandermonde(std::span<const double> lambdas,
                         std::span<const int> exponents);

/// Horizon-stepped table of the normalized volumes of the diagonalized
/// system, one entry per nonempty subset S of the eigenvalues:
///
///   V^S(k) = V^S(k-1) + sum_j (-1)^{|S| + pos(j)} lambda_j^{k-1} V^{S \ j}(k-1)
///
/// with V^emptyset = 1 and V^S(k) = 0 while k < |S|. One advance() updates
/// every entry in place, larger subsets first so each step reads only
/// previous-step values, and costs a horizon-independent number of
/// multiplications (counted in mult_count).
class SpectralTable {
public:
  /// lambdas must be strictly ascending and strictly positive.
  explicit SpectralTable(std::vector<double> lambdas);

  /// Steps the table from horizon step() to step() + 1.
  void advance();
  /// Advances until step() == horizon and returns full_value().
  double advance_to(int horizon);

  int step() const { return step_; }
  int order() const { return static_cast<int>(lams_.size()); }
  /// Entry for the full eigenvalue set: the normalized volume at step().
  double full_value() const;
  /// Entry for the subset encoded by mask (bit i = eigenvalue i), mask
  /// in [1, 2^order).
  double value(std::uint32_t subset_mask) const;
  std::size_t table_size() const { return values_.size() - 1; }
  std::uint64_t mult_count() const { return mults_; }

private:
  std::vector<double> lams_;
  std::vector<double> values_;   // indexed by subset mask; values_[0] = 1
  std::vector<double> powers_;   // lambda_j ^ step()
  std::vector<std::uint32_t> update_order_;  // masks, larger subsets first
  int step_ = 0;
  std::uint64_t mults_ = 0;
};

/// Finite-horizon volume of the unit-cube image zonotope of a single-input
/// model through its eigenstructure: table value scaled by the input gains
/// and the diagonalizing change of basis. Requires real, simple, strictly
/// positive eigenvalues.
VolumeResult volume_spectral(const SystemModel& model, int horizon,
                             double separation_tol = kAutoTolerance);

/// Limit of the normalized volume for eigenvalues inside the unit interval:
///
///   prod_{i<j} (lambda_j - lambda_i) / (1 - lambda_i lambda_j)
///   * prod_i 1 / (1 - lambda_i)
///
/// Requires 0 < lambda_1 < ... < lambda_n <= 1 - 1e-9; multiplications and
/// divisions spent are added to mult_count when given.
double volume_infinite(std::span<const double> lambdas,
                       std::uint64_t* mult_count = nullptr);

}  // namespace zonovol

#endif
