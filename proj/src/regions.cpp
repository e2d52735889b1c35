#include "zonovol/regions.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "zonovol/linalg.hpp"
#include "zonovol/volume_generic.hpp"
#include "zonovol/volume_spectral.hpp"

namespace zonovol {

namespace {

std::string format_val(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

VolumeMethod resolve_method(const SystemModel& model, MethodChoice choice) {
  switch (choice) {
    case MethodChoice::Exact:
      return VolumeMethod::Exact;
    case MethodChoice::Recursive:
      return VolumeMethod::Recursive;
    case MethodChoice::Spectral:
      return VolumeMethod::Spectral;
    case MethodChoice::Analytic:
      throw ContractViolation(
          "analytic: applies to the infinite horizon only");
    case MethodChoice::Auto:
      break;
  }
  if (model.input_dim() != 1) return VolumeMethod::Recursive;
  try {
    eig_real_distinct(model.A());
    return VolumeMethod::Spectral;
  } catch (const SpectralUnsupported&) {
    return VolumeMethod::Recursive;
  }
}

VolumeResult zonotope_volume(const SystemModel& model, int horizon,
                             VolumeMethod method) {
  try {
    switch (method) {
      case VolumeMethod::Exact: {
        VolumeResult res = volume_exact(controllability_matrix(model, horizon));
        res.horizon = horizon;
        return res;
      }
      case VolumeMethod::Recursive:
        return volume_recursive(model, horizon);
      case VolumeMethod::Spectral:
        return volume_spectral(model, horizon);
      case VolumeMethod::Analytic:
        break;
    }
  } catch (const SpectralUnsupported& e) {
    throw SpectralUnsupported(e.issue(), std::string(method_name(method)) +
                                             ": " + e.what());
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(
        std::string(method_name(method)) + ": " + e.what(), e.determinant());
  } catch (const ContractViolation& e) {
    throw ContractViolation(std::string(method_name(method)) + ": " +
                            e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(std::string(method_name(method)) + ": " + e.what());
  }
  throw ContractViolation("analytic: applies to the infinite horizon only");
}

}  // namespace

const char* method_choice_name(MethodChoice m) {
  switch (m) {
    case MethodChoice::Auto:
      return "auto";
    case MethodChoice::Exact:
      return "exact";
    case MethodChoice::Recursive:
      return "recursive";
    case MethodChoice::Spectral:
      return "spectral";
    case MethodChoice::Analytic:
      return "analytic";
  }
  return "?";
}

const char* region_name(RegionKind r) {
  switch (r) {
    case RegionKind::Reachable:
      return "reachable";
    case RegionKind::Controllable:
      return "controllable";
  }
  return "?";
}

VolumeResult region_volume(const SystemModel& model, RegionKind region,
                           int horizon, MethodChoice method) {
  return region == RegionKind::Reachable
             ? reachable_volume(model, horizon, method)
             : controllable_volume(model, horizon, method);
}

VolumeResult reachable_volume(const SystemModel& model, int horizon,
                              MethodChoice method) {
  if (horizon < 1) {
    throw DimensionError("horizon must be at least 1, got " +
                         std::to_string(horizon));
  }
  const VolumeMethod resolved = resolve_method(model, method);
  VolumeResult res = zonotope_volume(model, horizon, resolved);
  // Inputs range over [-1, 1]^r, the engines integrate over [0, 1]^r:
  // exact power-of-two rescale per state dimension.
  res.volume = std::ldexp(res.volume, static_cast<int>(model.state_dim()));
  return res;
}

VolumeResult controllable_volume(const SystemModel& model, int horizon,
                                 MethodChoice method) {
  const double det_A = determinant(model.A());
  if (std::abs(det_A) <= kSingularDetFloor) {
    throw SingularMatrixError(
        "controllable region needs an invertible state matrix, det = " +
            format_val(det_A),
        det_A);
  }
  VolumeResult res = reachable_volume(model, horizon, method);
  res.volume *= std::pow(std::abs(det_A), -static_cast<double>(horizon));
  return res;
}

VolumeResult controllable_volume_infinite(const SystemModel& model) {
  if (model.input_dim() != 1) {
    throw ContractViolation(
        "infinite-horizon volume needs a single-input model, got " +
        std::to_string(model.input_dim()) + " inputs");
  }
  const double det_A = determinant(model.A());
  if (std::abs(det_A) <= kSingularDetFloor) {
    throw SingularMatrixError(
        "infinite-horizon volume needs an invertible state matrix, det = " +
            format_val(det_A),
        det_A);
  }

  // Every eigenvalue must lie strictly outside the unit interval, with the
  // same margin the limit formula enforces on the inverse eigenvalues.
  const Spectrum direct = eig_real_distinct(model.A());
  constexpr double kMargin = 1.0 - 1e-9;
  for (double lam : direct.eigenvalues) {
    if (1.0 / lam > kMargin) {
      throw DivergentRegionError(
          "eigenvalue " + format_val(lam) +
          " is not strictly above 1: the infinite-horizon controllable "
          "region is unbounded");
    }
  }

  // The horizon-N controllable region is the zonotope of the inverse pair
  // {A^{-1}, A^{-1}B}; its generators only reorder, so the volumes agree
  // and the limit exists because the inverse eigenvalues sit inside (0, 1).
  const RealMatrix A_inv = invert(model.A());
  const SystemModel inverse(model.name() + "-inverse", A_inv,
                            RealMatrix(A_inv.mat() * model.B().mat()));
  const Spectrum sp = eig_real_distinct(inverse);
  const int n = static_cast<int>(sp.eigenvalues.size());

  VolumeResult res;
  res.method = VolumeMethod::Analytic;
  res.horizon = kInfiniteHorizon;

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

  std::uint64_t mults = 0;
  const double limit = volume_infinite(sp.eigenvalues, &mults);
  double gain = sp.beta[0];
  for (int i = 1; i < n; ++i) {
    gain *= sp.beta[i];
    ++mults;
  }
  const double bar_volume = std::abs(gain) * limit;
  ++mults;

  res.volume = std::ldexp(bar_volume / sp.det_W_abs, n);
  res.mult_count = mults;
  return res;
}

}  // namespace zonovol
