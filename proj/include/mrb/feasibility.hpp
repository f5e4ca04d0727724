#pragma once

#include <cstddef>
#include <vector>

#include "mrb/setcore.hpp"

// Fourier–Motzkin elimination over doubles. Strict rows are reduced to a
// nonstrict system with one auxiliary slack variable t: {A x <= b, C x < d}
// is feasible iff {A x <= b, C x + t <= d, t <= 1} admits some t > 0.
namespace mrb::fm {

bool feasible(std::size_t dim, const std::vector<HalfSpace>& rows);

// Exact shadow of the polytope on one coordinate axis.
Interval project(std::size_t dim, const std::vector<HalfSpace>& rows, std::size_t axis);

}  // namespace mrb::fm
