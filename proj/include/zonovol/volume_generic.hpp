#ifndef ZONOVOL_VOLUME_GENERIC_HPP
#define ZONOVOL_VOLUME_GENERIC_HPP

#include "zonovol/matrix.hpp"
#include "zonovol/volume.hpp"

namespace zonovol {

/// Volume of the zonotope spanned by the columns of Z over [0,1] weights:
/// the sum of |det| over every n-column selection, accumulated with
/// compensated summation. Rank-deficient Z yields volume 0 with a note.
VolumeResult volume_exact(const RealMatrix& Z);

/// Same volume for the horizon-N input-to-state map of a model, but grown
/// horizon by horizon from two exactly-computed seeds: each step adds
/// (1 + |det A|) V(N-1) - |det A| V(N-2) plus the cross determinants that
/// mix the oldest and newest column blocks. Cheaper than volume_exact once
/// the horizon is long, identical in exact arithmetic.
VolumeResult volume_recursive(const SystemModel& model, int horizon);

}  // namespace zonovol

#endif
