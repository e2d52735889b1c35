#ifndef ZONOVOL_REGIONS_HPP
#define ZONOVOL_REGIONS_HPP

#include "zonovol/matrix.hpp"
#include "zonovol/volume.hpp"

namespace zonovol {

/// How to evaluate a region volume. Auto picks the spectral path for
/// single-input models whose state matrix it can diagonalize (real, simple,
/// positive eigenvalues) and the generic recursion otherwise.
enum class MethodChoice { Auto, Exact, Recursive, Spectral, Analytic };

const char* method_choice_name(MethodChoice m);

enum class RegionKind { Reachable, Controllable };

const char* region_name(RegionKind r);

/// reachable_volume or controllable_volume, picked by `region`.
VolumeResult region_volume(const SystemModel& model, RegionKind region,
                           int horizon, MethodChoice method = MethodChoice::Auto);

/// Volume of the set of states reachable in `horizon` steps from the origin
/// under inputs with entries in [-1, 1]: 2^n times the volume of the
/// unit-cube zonotope of the controllability matrix.
VolumeResult reachable_volume(const SystemModel& model, int horizon,
                              MethodChoice method = MethodChoice::Auto);

/// Volume of the set of states that can be driven to the origin in
/// `horizon` steps: the reachable volume scaled by |det A|^{-horizon}.
/// A must be invertible.
VolumeResult controllable_volume(const SystemModel& model, int horizon,
                                 MethodChoice method = MethodChoice::Auto);

/// Closed-form volume of the infinite-horizon controllable region, through
/// the eigenvalues of the inverse system. Requires a single-input model
/// whose state matrix has real, simple eigenvalues strictly outside the
/// unit interval (all > 1); otherwise the region is unbounded and
/// DivergentRegionError is raised.
VolumeResult controllable_volume_infinite(const SystemModel& model);

}  // namespace zonovol

#endif
