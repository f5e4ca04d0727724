#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mrb/lattice.hpp"
#include "mrb/moments.hpp"
#include "mrb/setcore.hpp"

namespace mrb {

struct InstrumentalInequality {
  int index = 0;  // 1..4
  double lhs = 0.0;
  double slack = 0.0;  // 1 - lhs
  bool pass = true;
};

std::array<InstrumentalInequality, 4> instrumental_inequalities(const BinaryIVData& d);

// The nine combinations with published closed forms, in case-table order.
const std::vector<BivCombo>& supported_combos();

// Closed-form identified set over (θ11, θ10, θ01, θ00) for one of the nine supported combinations.
HPolytope identified_set_for(const BinaryIVData& d, BivCombo combo);

// Same construction for every combination containing a1: the set factors into a treated block
// (θ11, θ10) governed by a2/a3 and an untreated block (θ01, θ00) governed by a4/a5.
HPolytope identified_set_by_blocks(const BinaryIVData& d, BivCombo combo);

struct AcdeStatement {
  int d = 1;
  std::string direction;  // "zero", "nonnegative" or "nonpositive"
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
};

struct BivCase {
  int row = 1;  // 1..9, rows keyed by the retained assumptions
  BivCombo combo = kFullCombo;
};

// Case row for a pattern of violated inequalities (index 0 = II1). Two-violation patterns map to the
// row whose retained set drops the assumption each violation contradicts.
BivCase select_case(const std::array<bool, 4>& violated);

struct BinaryIVResult {
  std::array<InstrumentalInequality, 4> inequalities;
  BivCase selected;
  HPolytope set;
  std::vector<AcdeStatement> acde;
};

BinaryIVResult mrb_binary_iv(const BinaryIVData& d);
std::vector<AcdeStatement> acde_statements(const BinaryIVData& d, BivCombo combo);

// Lattice family over {a2, a3, a4, a5} with a1 maintained. `consistent` decides whether a1 plus the
// chosen assumptions is compatible with the data; the block construction supplies the sets.
AssumptionFamily binary_iv_family(const BinaryIVData& d, std::function<bool(BivCombo)> consistent);

}  // namespace mrb
