#pragma once

// Internal helpers shared between the divisor and Mori translation units.

#include "toric/divisor.hpp"
#include "toric/fan.hpp"

namespace toric::detail {

/// D . V(wall): the jump of Cartier data across the wall, evaluated against
/// the primitive generator of N / (N cap span(wall)) on the right-cone side.
/// Ample divisors give positive values.
Rat wall_jump(const Fan& fan, const CartierData& cd, int wall_index);

/// Classes of every wall curve as functionals on the given Picard basis.
std::vector<RatVec> wall_curve_classes(const Fan& fan, const PicardLattice& pic);

}  // namespace toric::detail
