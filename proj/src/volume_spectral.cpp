#include "zonovol/volume_spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace zonovol {

namespace {

std::string format_val(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void check_ascending_positive(std::span<const double> lambdas) {
  if (lambdas.empty()) {
    throw ContractViolation("at least one eigenvalue required");
  }
  if (lambdas[0] <= 0.0) {
    throw ContractViolation("eigenvalue " + format_val(lambdas[0]) +
                            " is not strictly positive");
  }
  for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
    if (lambdas[i + 1] <= lambdas[i]) {
      throw ContractViolation("eigenvalues must be strictly ascending, got " +
                              format_val(lambdas[i]) + " before " +
                              format_val(lambdas[i + 1]));
    }
  }
}

}  // namespace

double quasi_vandermonde(std::span<const double> lambdas,
                         std::span<const int> exponents) {
  if (lambdas.size() != exponents.size()) {
    throw ContractViolation("need one exponent per eigenvalue, got " +
                            std::to_string(lambdas.size()) + " and " +
                            std::to_string(exponents.size()));
  }
  check_ascending_positive(lambdas);
  if (exponents[0] < 0) {
    throw ContractViolation("exponents must be nonnegative, got " +
                            std::to_string(exponents[0]));
  }
  for (std::size_t j = 0; j + 1 < exponents.size(); ++j) {
    if (exponents[j + 1] <= exponents[j]) {
      throw ContractViolation("exponents must be strictly ascending, got " +
                              std::to_string(exponents[j]) + " before " +
                              std::to_string(exponents[j + 1]));
    }
  }
  const int n = static_cast<int>(lambdas.size());
  std::vector<double> buf(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      buf[static_cast<std::size_t>(i) * n + j] =
          std::pow(lambdas[i], static_cast<double>(exponents[j]));
    }
  }
  return detail::determinant_inplace(buf.data(), n);
}

SpectralTable::SpectralTable(std::vector<double> lambdas)
    : lams_(std::move(lambdas)) {
  check_ascending_positive(lams_);
  const int n = order();
  if (n > 30) {
    throw DimensionError("subset table supports at most 30 eigenvalues, got " +
                         std::to_string(n));
  }
  values_.assign(std::size_t{1} << n, 0.0);
  values_[0] = 1.0;
  powers_.assign(n, 1.0);
  update_order_.reserve(values_.size() - 1);
  for (std::uint32_t mask = 1; mask < values_.size(); ++mask) {
    update_order_.push_back(mask);
  }
  // Larger subsets first: each update then reads only previous-step values
  // of the strictly smaller subsets.
  std::stable_sort(update_order_.begin(), update_order_.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     return std::popcount(a) > std::popcount(b);
                   });
}

void SpectralTable::advance() {
  const int k = step_ + 1;
  for (std::uint32_t mask : update_order_) {
    const int s = std::popcount(mask);
    if (k < s) continue;  // not enough columns yet, entry stays 0
    double delta = 0.0;
    int pos = 0;
    std::uint32_t rest = mask;
    while (rest != 0) {
      const int j = std::countr_zero(rest);
      rest &= rest - 1;
      ++pos;
      const double term = powers_[j] * values_[mask ^ (std::uint32_t{1} << j)];
      ++mults_;
      if ((s + pos) % 2 != 0) {
        delta -= term;
      } else {
        delta += term;
      }
    }
    values_[mask] += delta;
  }
  for (int j = 0; j < order(); ++j) {
    powers_[j] *= lams_[j];
    ++mults_;
  }
  step_ = k;
}

double SpectralTable::advance_to(int horizon) {
  if (horizon < step_) {
    throw ContractViolation("table is at step " + std::to_string(step_) +
                            " and cannot run backwards to " +
                            std::to_string(horizon));
  }
  while (step_ < horizon) advance();
  return full_value();
}

double SpectralTable::full_value() const { return values_.back(); }

double SpectralTable::value(std::uint32_t subset_mask) const {
  if (subset_mask == 0 || subset_mask >= values_.size()) {
    throw ContractViolation("subset mask " + std::to_string(subset_mask) +
                            " is outside [1, " +
                            std::to_string(values_.size() - 1) + "]");
  }
  return values_[subset_mask];
}

VolumeResult volume_spectral(const SystemModel& model, int horizon,
                             double separation_tol) {
  if (horizon < 1) {
    throw DimensionError("horizon must be at least 1, got " +
                         std::to_string(horizon));
  }
  if (model.input_dim() != 1) {
    throw ContractViolation("spectral method needs a single-input model, got " +
                            std::to_string(model.input_dim()) + " inputs");
  }
  const Spectrum sp = eig_real_distinct(model, separation_tol);
  const int n = static_cast<int>(sp.eigenvalues.size());

  VolumeResult res;
  res.method = VolumeMethod::Spectral;
  res.horizon = horizon;

  double beta_max = 0.0;
  for (double b : sp.beta) beta_max = std::max(beta_max, std::abs(b));
  for (int i = 0; i < n; ++i) {
    if (std::abs(sp.beta[i]) <= 1e-12 * beta_max) {
      res.notes = "uncontrollable mode: input gain " +
                  format_val(sp.beta[i]) + " for eigenvalue " +
                  format_val(sp.eigenvalues[i]);
      return res;
    }
  }

  SpectralTable table(sp.eigenvalues);
  const double bar_volume = table.advance_to(horizon);

  double gain = sp.beta[0];
  std::uint64_t mults = 0;
  for (int i = 1; i < n; ++i) {
    gain *= sp.beta[i];
    ++mults;
  }
  res.volume = std::abs(gain) * bar_volume / sp.det_W_abs;
  ++mults;
  res.mult_count = table.mult_count() + mults;
  return res;
}

double volume_infinite(std::span<const double> lambdas,
                       std::uint64_t* mult_count) {
  check_ascending_positive(lambdas);
  const int n = static_cast<int>(lambdas.size());
  constexpr double kMargin = 1.0 - 1e-9;
  if (lambdas[n - 1] > kMargin) {
    throw DomainError("eigenvalue " + format_val(lambdas[n - 1]) +
                      " is above the convergence margin " +
                      format_val(kMargin));
  }

  std::uint64_t mults = 0;
  double pairs = 1.0;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double t =
          (lambdas[j] - lambdas[i]) / (1.0 - lambdas[i] * lambdas[j]);
      mults += 2;
      if (first) {
        pairs = t;
        first = false;
      } else {
        pairs *= t;
        ++mults;
      }
    }
  }
  double denom = 1.0 - lambdas[0];
  for (int i = 1; i < n; ++i) {
    denom *= 1.0 - lambdas[i];
    ++mults;
  }
  const double singles = 1.0 / denom;
  ++mults;
  double value = singles;
  if (n >= 2) {
    value = pairs * singles;
    ++mults;
  }
  if (mult_count != nullptr) *mult_count += mults;
  return value;
}

}  // namespace zonovol
