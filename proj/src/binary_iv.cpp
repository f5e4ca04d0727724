#include "mrb/binary_iv.hpp"

#include <algorithm>

namespace mrb {
namespace {

constexpr double kIneqTol = 1e-12;

std::vector<double> unit(std::size_t c) {
  std::vector<double> v(4, 0.0);
  v[c] = 1.0;
  return v;
}

std::vector<double> diff(std::size_t a, std::size_t b) {
  std::vector<double> v(4, 0.0);
  v[a] = 1.0;
  v[b] = -1.0;
  return v;
}

// One treatment block: coordinates (hi_z, lo_z) = (θ_d1, θ_d0) with the data probabilities of
// Y=1 and Y=0 among D=d in each instrument cell.
struct Block {
  std::size_t t1, t0;            // coordinates of θ_d1 and θ_d0
  double p1_z1, p1_z0;           // q_1d(1), q_1d(0)
  double p0_z1, p0_z0;           // q_0d(1), q_0d(0)
  bool up, down;                 // Y_d1 >= Y_d0 imposed, Y_d1 <= Y_d0 imposed
};

void add_block(HPolytope& p, const Block& b) {
  if (b.up && b.down) {
    // Exclusion: pooled bounds from both cells.
    const double lo = std::max(b.p1_z1, b.p1_z0);
    const double hi = 1.0 - std::max(b.p0_z1, b.p0_z0);
    p.add_equality(diff(b.t1, b.t0), 0.0);
    p.add_range(unit(b.t1), lo, hi);
    p.add_range(unit(b.t0), lo, hi);
    return;
  }
  p.add_range(unit(b.t0), b.p1_z0, 1.0 - b.p0_z0);
  p.add_range(unit(b.t1), b.p1_z1, 1.0 - b.p0_z1);
  if (b.up) {
    // θ_d1 - θ_d0 >= max{0, q_1d(1) + q_0d(0) - 1}
    const double floor = std::max(0.0, b.p1_z1 + b.p0_z0 - 1.0);
    p.add_row(diff(b.t0, b.t1), -floor);
  }
  if (b.down) {
    // θ_d1 - θ_d0 <= min{0, 1 - q_0d(1) - q_1d(0)}
    const double ceil = std::min(0.0, 1.0 - b.p0_z1 - b.p1_z0);
    p.add_row(diff(b.t1, b.t0), ceil);
  }
}

Block treated_block(const BinaryIVData& d, BivCombo combo) {
  return {kT11, kT10, d.at(1, 1, 1), d.at(1, 1, 0), d.at(0, 1, 1), d.at(0, 1, 0),
          (combo & kA2) != 0, (combo & kA3) != 0};
}

Block untreated_block(const BinaryIVData& d, BivCombo combo) {
  return {kT01, kT00, d.at(1, 0, 1), d.at(1, 0, 0), d.at(0, 0, 1), d.at(0, 0, 0),
          (combo & kA4) != 0, (combo & kA5) != 0};
}

std::string supported_list() {
  std::string s;
  for (auto c : supported_combos()) s += (s.empty() ? "" : ", ") + combo_name(c);
  return s;
}

}  // namespace

std::array<InstrumentalInequality, 4> instrumental_inequalities(const BinaryIVData& d) {
  const std::array<double, 4> lhs{
      d.at(1, 1, 1) + d.at(0, 1, 0),
      d.at(1, 1, 0) + d.at(0, 1, 1),
      d.at(1, 0, 1) + d.at(0, 0, 0),
      d.at(1, 0, 0) + d.at(0, 0, 1),
  };
  std::array<InstrumentalInequality, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = {k + 1, lhs[k], 1.0 - lhs[k], lhs[k] <= 1.0 + kIneqTol};
  return out;
}

const std::vector<BivCombo>& supported_combos() {
  static const std::vector<BivCombo> combos{
      kFullCombo,
      kA1 | kA2 | kA4 | kA5,
      kA1 | kA3 | kA4 | kA5,
      kA1 | kA2 | kA3 | kA4,
      kA1 | kA2 | kA3 | kA5,
      kA1 | kA2 | kA5,
      kA1 | kA2 | kA4,
      kA1 | kA3 | kA5,
      kA1 | kA3 | kA4,
  };
  return combos;
}

HPolytope identified_set_by_blocks(const BinaryIVData& d, BivCombo combo) {
  if (!(combo & kA1)) throw UnsupportedComboError("closed forms require a1 (instrument independence)");
  HPolytope p(4);
  add_block(p, treated_block(d, combo));
  add_block(p, untreated_block(d, combo));
  return p;
}

HPolytope identified_set_for(const BinaryIVData& d, BivCombo combo) {
  const auto& ok = supported_combos();
  if (std::find(ok.begin(), ok.end(), combo) == ok.end())
    throw UnsupportedComboError("no closed form for " + combo_name(combo) + "; supported: " + supported_list());
  return identified_set_by_blocks(d, combo);
}

BivCase select_case(const std::array<bool, 4>& v) {
  const int pattern = (v[0] ? 1 : 0) | (v[1] ? 2 : 0) | (v[2] ? 4 : 0) | (v[3] ? 8 : 0);
  switch (pattern) {
    case 0: return {1, supported_combos()[0]};
    case 1: return {2, supported_combos()[1]};
    case 2: return {3, supported_combos()[2]};
    case 4: return {4, supported_combos()[3]};
    case 8: return {5, supported_combos()[4]};
    case 1 | 8: return {6, supported_combos()[5]};
    case 1 | 4: return {7, supported_combos()[6]};
    case 2 | 8: return {8, supported_combos()[7]};
    case 2 | 4: return {9, supported_combos()[8]};
    default: break;
  }
  std::string names;
  for (int k = 0; k < 4; ++k)
    if (v[k]) names += (names.empty() ? "II" : ", II") + std::to_string(k + 1);
  throw UnsupportedPatternError("violation pattern {" + names + "} is not covered by the case table");
}

std::vector<AcdeStatement> acde_statements(const BinaryIVData& d, BivCombo combo) {
  std::vector<AcdeStatement> out;
  for (const Block& b : {treated_block(d, combo), untreated_block(d, combo)}) {
    AcdeStatement s;
    s.d = b.t1 == kT11 ? 1 : 0;
    if (b.up && b.down) {
      s.direction = "zero";
      s.lower_bound = 0.0;
      s.upper_bound = 0.0;
    } else if (b.up) {
      s.direction = "nonnegative";
      s.lower_bound = std::max(0.0, b.p1_z1 + b.p0_z0 - 1.0);
    } else if (b.down) {
      s.direction = "nonpositive";
      s.upper_bound = std::min(0.0, 1.0 - b.p0_z1 - b.p1_z0);
    } else {
      continue;
    }
    out.push_back(s);
  }
  return out;
}

BinaryIVResult mrb_binary_iv(const BinaryIVData& d) {
  BinaryIVResult r;
  r.inequalities = instrumental_inequalities(d);
  std::array<bool, 4> violated{};
  for (int k = 0; k < 4; ++k) violated[k] = !r.inequalities[k].pass;
  r.selected = select_case(violated);
  r.set = identified_set_for(d, r.selected.combo);
  r.acde = acde_statements(d, r.selected.combo);
  return r;
}

AssumptionFamily binary_iv_family(const BinaryIVData& d, std::function<bool(BivCombo)> consistent) {
  // Family bit k stands for a_{k+2}; a1 is always imposed.
  auto to_combo = [](Subset s) { return static_cast<BivCombo>(kA1 | (s << 1)); };
  CustomOracle oracle;
  oracle.set_of = [d, to_combo](Subset s) { return IdentifiedSet(identified_set_by_blocks(d, to_combo(s))); };
  oracle.consistent = [consistent, to_combo](Subset s) { return consistent(to_combo(s)); };
  return AssumptionFamily::custom({"a2", "a3", "a4", "a5"}, std::move(oracle));
}

}  // namespace mrb
