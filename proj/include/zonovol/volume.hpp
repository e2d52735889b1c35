#ifndef ZONOVOL_VOLUME_HPP
#define ZONOVOL_VOLUME_HPP

#include <cstdint>
#include <string>

namespace zonovol {

enum class VolumeMethod { Exact, Recursive, Spectral, Analytic };

const char* method_name(VolumeMethod m);

/// horizon value standing for "infinite".
inline constexpr long long kInfiniteHorizon = -1;

/// Outcome of one volume computation, with the work counters the methods
/// are compared by: det_count (n-by-n determinant evaluations) and
/// mult_count (multiplications spent in the spectral recursions).
struct VolumeResult {
  double volume = 0.0;
  VolumeMethod method = VolumeMethod::Exact;
  long long horizon = 0;
  std::uint64_t det_count = 0;
  std::uint64_t mult_count = 0;
  std::string notes;

  bool infinite_horizon() const { return horizon == kInfiniteHorizon; }
};

}  // namespace zonovol

#endif
