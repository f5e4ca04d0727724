#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mrb/lattice.hpp"
#include "mrb/moments.hpp"
#include "mrb/setcore.hpp"

namespace mrb {

enum class CutoffMode { Joint, PerOutcome };

// Whether the monotone-then-flat restriction with cutoff z (1-based) is data-consistent for outcome d.
bool amiv_star_membership(const AMIVMoments& m, std::size_t z, int d);
// Both outcomes at once.
bool amiv_star_membership(const AMIVMoments& m, std::size_t z);

// Bound on theta_d implied by cutoff z_star (meaningful when the membership conditions hold).
Interval amiv_gamma(const AMIVMoments& m, std::size_t z_star, int d);

// [E lower_d, E upper_d]: the bound from support and mean independence alone.
Interval amiv_worst_case(const AMIVMoments& m, int d);
// [max_t q_lower_dt, min_t q_upper_dt], possibly empty.
Interval amiv_mi_interval(const AMIVMoments& m, int d);

struct AMIVResult {
  CutoffMode mode = CutoffMode::Joint;
  // star[d][z-1]: cutoff z retained for outcome d (identical rows in joint mode).
  std::array<std::vector<bool>, 2> star;
  std::array<std::optional<std::size_t>, 2> z_star;
  std::array<Interval, 2> mrb;  // per outcome, index 0 = θ1, 1 = θ0
  std::array<Interval, 2> mi;
  std::array<Interval, 2> miv;
  std::array<bool, 2> fallback{};

  Box mrb_box() const { return Box({mrb[0], mrb[1]}); }
  Box mi_box() const { return Box({mi[0], mi[1]}); }
  Box miv_box() const { return Box({miv[0], miv[1]}); }
};

// Outcome index used in result arrays: slot 0 holds d=1, slot 1 holds d=0.
inline int amiv_slot(int d) { return d == 1 ? 0 : 1; }

AMIVResult amiv_mrb(const AMIVMoments& m, CutoffMode mode = CutoffMode::Joint);

// Family {a_1..a_k, a_dagger} (joint) or {a_1[d1]..a_k[d1], a_1[d0]..a_k[d0], a_dagger} (per outcome).
AssumptionFamily amiv_family(const AMIVMoments& m, CutoffMode mode = CutoffMode::Joint);

}  // namespace mrb
