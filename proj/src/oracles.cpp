#include "mrb/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "mrb/lp.hpp"

namespace mrb::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGridTol = 1e-9;

// ------------------------------------------------------------ binary IV program

// Bit c of an atom is the value of the potential outcome for coordinate c (θ11, θ10, θ01, θ00);
// treatment bits follow. Coordinate c corresponds to (d, z) = (1 - c/2, 1 - c%2).
int coord(int d, int z) { return (1 - d) * 2 + (1 - z); }
int ybit(unsigned bits, int c) { return static_cast<int>((bits >> c) & 1u); }

bool atom_allowed(unsigned bits, BivCombo combo) {
  const int y11 = ybit(bits, kT11), y10 = ybit(bits, kT10), y01 = ybit(bits, kT01), y00 = ybit(bits, kT00);
  if ((combo & kA2) && y11 < y10) return false;
  if ((combo & kA3) && y11 > y10) return false;
  if ((combo & kA4) && y01 < y00) return false;
  if ((combo & kA5) && y01 > y00) return false;
  return true;
}

// Position of q_ij inside a cell vector ordered (q11, q01, q10, q00).
int cell_pos(int i, int j) { return (1 - j) * 2 + (1 - i); }

struct Atom {
  int cell;  // -1: shared by both instrument values
  unsigned bits;
};

std::vector<Atom> make_atoms(BivCombo combo, BivIndependence ind) {
  std::vector<Atom> atoms;
  if (ind == BivIndependence::JointWithTreatment) {
    for (unsigned b = 0; b < 64; ++b)
      if (atom_allowed(b, combo)) atoms.push_back({-1, b});
  } else {
    for (int z = 0; z < 2; ++z)
      for (unsigned b = 0; b < 32; ++b)
        if (atom_allowed(b, combo)) atoms.push_back({z, b});
  }
  return atoms;
}

int treatment(const Atom& a, int z) {
  return a.cell < 0 ? static_cast<int>((a.bits >> (4 + z)) & 1u) : static_cast<int>((a.bits >> 4) & 1u);
}

bool in_cell(const Atom& a, int z) { return a.cell < 0 || a.cell == z; }

template <class T>
using Cells = std::array<std::array<T, 4>, 2>;

template <class T>
lp::Problem<T> build_program(const Cells<T>& q, BivCombo combo, BivIndependence ind,
                             const std::array<std::optional<T>, 4>& fixed, const std::array<T, 4>* dir) {
  if (!(combo & kA1)) throw UnsupportedComboError("the latent-distribution program always imposes a1");
  const auto atoms = make_atoms(combo, ind);
  const std::size_t n = atoms.size();
  lp::Problem<T> p;
  auto add_row = [&](const std::function<T(const Atom&)>& coef, const T& rhs) {
    std::vector<T> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = coef(atoms[k]);
    p.a.push_back(std::move(row));
    p.b.push_back(rhs);
  };
  // Observed cell probabilities.
  for (int z = 0; z < 2; ++z)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        add_row(
            [&](const Atom& a) {
              return T(in_cell(a, z) && treatment(a, z) == j && ybit(a.bits, coord(j, z)) == i ? 1 : 0);
            },
            q[z][cell_pos(i, j)]);
  // Independence and fixed means.
  switch (ind) {
    case BivIndependence::JointWithTreatment:
      for (int c = 0; c < 4; ++c)
        if (fixed[c]) add_row([&](const Atom& a) { return T(ybit(a.bits, c)); }, *fixed[c]);
      break;
    case BivIndependence::PerOutcome:
      for (int c = 0; c < 4; ++c) {
        if (fixed[c]) {
          for (int z = 0; z < 2; ++z)
            add_row([&](const Atom& a) { return T(a.cell == z && ybit(a.bits, c) ? 1 : 0); }, *fixed[c]);
        } else {
          add_row([&](const Atom& a) { return T(ybit(a.bits, c) ? (a.cell == 0 ? 1 : -1) : 0); }, T(0));
        }
      }
      break;
    case BivIndependence::OutcomeVector:
      for (unsigned v = 0; v < 16; ++v) {
        if (!atom_allowed(v, combo)) continue;
        add_row([&](const Atom& a) { return T((a.bits & 15u) == v ? (a.cell == 0 ? 1 : -1) : 0); }, T(0));
      }
      for (int c = 0; c < 4; ++c)
        if (fixed[c]) add_row([&](const Atom& a) { return T(a.cell == 0 && ybit(a.bits, c) ? 1 : 0); }, *fixed[c]);
      break;
  }
  if (dir) {
    p.c.assign(n, T(0));
    for (std::size_t k = 0; k < n; ++k) {
      if (atoms[k].cell > 0) continue;
      for (int c = 0; c < 4; ++c)
        if (ybit(atoms[k].bits, c)) p.c[k] += (*dir)[c];
    }
  }
  return p;
}

Cells<double> cells_of(const BinaryIVData& d) { return {d.cell(0), d.cell(1)}; }

bool outside_unit_box(const std::array<double, 4>& theta) {
  return std::any_of(theta.begin(), theta.end(), [](double t) { return t < -kGridTol || t > 1.0 + kGridTol; });
}

// Feasible range of coordinate c with the coordinates in `fixed` held at their values.
std::optional<Interval> coordinate_range(const Cells<double>& q, BivCombo combo, BivIndependence ind,
                                         const std::array<std::optional<double>, 4>& fixed, int c) {
  std::array<double, 4> dir{};
  dir[c] = 1.0;
  const auto hi = lp::solve(build_program<double>(q, combo, ind, fixed, &dir));
  if (hi.status != lp::Status::Optimal) return std::nullopt;
  dir[c] = -1.0;
  const auto lo = lp::solve(build_program<double>(q, combo, ind, fixed, &dir));
  if (lo.status != lp::Status::Optimal) return std::nullopt;
  return Interval::closed(-lo.value, hi.value);
}

// ------------------------------------------------------------ random-set transport

bool transport_feasible(const std::vector<std::uint32_t>& sets, const std::vector<double>& mass,
                        const std::vector<double>& p_y) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t j = 0; j < sets.size(); ++j)
    for (std::size_t y = 0; y < p_y.size(); ++y)
      if ((sets[j] >> y) & 1u) edges.emplace_back(j, y);
  lp::Problem<double> p;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    std::vector<double> row(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) row[e] = edges[e].first == j ? 1.0 : 0.0;
    p.a.push_back(std::move(row));
    p.b.push_back(std::max(0.0, mass[j]));
  }
  for (std::size_t y = 0; y < p_y.size(); ++y) {
    std::vector<double> row(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) row[e] = edges[e].second == y ? 1.0 : 0.0;
    p.a.push_back(std::move(row));
    p.b.push_back(p_y[y]);
  }
  return lp::solve(p).status == lp::Status::Optimal;
}

}  // namespace

// ---------------------------------------------------------------- intersection bounds

GridSet intersection_idset(const BoundsMoments& m, const std::vector<double>& axis) {
  std::vector<std::uint8_t> mask(axis.size(), 0);
  for (std::size_t k = 0; k < axis.size(); ++k) {
    bool ok = true;
    for (std::size_t z = 0; z < m.size() && ok; ++z)
      if (m.weights[z] > 0.0)
        ok = m.lower_mean[z] <= axis[k] + kEndpointTol && axis[k] <= m.upper_mean[z] + kEndpointTol;
    mask[k] = ok ? 1 : 0;
  }
  return GridSet({axis}, std::move(mask));
}

GridSet intersection_idset(const BoundsMoments& m, double step) {
  const double lo = *std::min_element(m.lower_mean.begin(), m.lower_mean.end());
  const double hi = *std::max_element(m.upper_mean.begin(), m.upper_mean.end());
  return intersection_idset(m, make_axis_step(lo, hi, step));
}

std::vector<SweepColumn> sweep_columns(const BoundsMoments& m, int resolution) {
  std::vector<SweepColumn> cols;
  const std::size_t n = m.size();
  for (std::size_t a = 0; a < n; ++a) {
    cols.push_back({m.lower_mean[a], m.upper_mean[a]});
    for (std::size_t b = a + 1; b < n; ++b)
      for (int k = 1; k < resolution; ++k) {
        // Instrument column with E[h(Z)] = 1: s/P(a) on z=a and (1-s)/P(b) on z=b.
        const double s = static_cast<double>(k) / resolution;
        const double ha = s / m.weights[a], hb = (1.0 - s) / m.weights[b];
        const double lower = ha * m.weights[a] * m.lower_mean[a] + hb * m.weights[b] * m.lower_mean[b];
        const double upper = ha * m.weights[a] * m.upper_mean[a] + hb * m.weights[b] * m.upper_mean[b];
        cols.push_back({lower, upper});
      }
  }
  return cols;
}

std::vector<double> sweep_axis(const BoundsMoments& m, int resolution) {
  const double lo = *std::min_element(m.lower_mean.begin(), m.lower_mean.end());
  const double hi = *std::max_element(m.upper_mean.begin(), m.upper_mean.end());
  std::vector<double> ax(static_cast<std::size_t>(resolution) + 1);
  for (int i = 0; i <= resolution; ++i) ax[i] = lo + (hi - lo) * i / resolution;
  return ax;
}

GridSet mrb_by_instrument_sweep(const BoundsMoments& m, const OracleConfig& cfg) {
  const int res = cfg.instrument_sweep_resolution;
  const auto axis = sweep_axis(m, res);
  const auto cols = sweep_columns(m, res);
  const double g = axis.size() > 1 ? axis[1] - axis[0] : 0.0;
  // Bucket columns by which output grid point their lower / upper ratio rounds to.
  auto bucket = [&](double v) -> std::optional<std::size_t> {
    if (g <= 0.0) return std::size_t{0};
    const double k = std::round((v - axis.front()) / g);
    if (k < 0 || k >= static_cast<double>(axis.size())) return std::nullopt;
    return static_cast<std::size_t>(k);
  };
  std::vector<std::vector<std::size_t>> by_lower(axis.size()), by_upper(axis.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (auto k = bucket(cols[i].lower)) by_lower[*k].push_back(i);
    if (auto k = bucket(cols[i].upper)) by_upper[*k].push_back(i);
  }
  std::vector<std::uint8_t> mask(axis.size(), 0);
  // A pair (i, j) pins down a point when its outer set [max lower, min upper] is nonempty and no wider
  // than one output step. The binding lower and upper ratios may round to neighbouring buckets.
  for (std::size_t k = 0; k < axis.size(); ++k)
    for (std::size_t i : by_lower[k]) {
      const std::size_t first = k == 0 ? 0 : k - 1, last = std::min(k + 1, axis.size() - 1);
      for (std::size_t kk = first; kk <= last; ++kk)
        for (std::size_t j : by_upper[kk]) {
          const double lo = std::max(cols[i].lower, cols[j].lower);
          const double hi = std::min(cols[i].upper, cols[j].upper);
          if (lo > hi + kEndpointTol || hi - lo > g + kEndpointTol) continue;
          if (auto at = bucket(0.5 * (lo + hi))) mask[*at] = 1;
        }
    }
  return GridSet({axis}, std::move(mask));
}

// ------------------------------------------------------------------ binary IV

const char* to_string(BivIndependence k) {
  switch (k) {
    case BivIndependence::PerOutcome: return "per-outcome";
    case BivIndependence::OutcomeVector: return "outcome-vector";
    case BivIndependence::JointWithTreatment: return "joint-with-treatment";
  }
  return "per-outcome";
}

bool binaryiv_consistent(const BinaryIVData& d, BivCombo combo, BivIndependence ind) {
  return lp::solve(build_program<double>(cells_of(d), combo, ind, {}, nullptr)).status == lp::Status::Optimal;
}

bool binaryiv_feasible(const BinaryIVData& d, BivCombo combo, const std::array<double, 4>& theta,
                       BivIndependence ind) {
  if (outside_unit_box(theta)) return false;
  std::array<std::optional<double>, 4> fixed;
  for (int c = 0; c < 4; ++c) fixed[c] = theta[c];
  return lp::solve(build_program<double>(cells_of(d), combo, ind, fixed, nullptr)).status == lp::Status::Optimal;
}

bool binaryiv_feasible_exact(const BivCellsQ& cells, BivCombo combo, const std::array<mpq_class, 4>& theta,
                             BivIndependence ind) {
  for (const auto& t : theta)
    if (t < 0 || t > 1) return false;
  std::array<std::optional<mpq_class>, 4> fixed;
  for (int c = 0; c < 4; ++c) fixed[c] = theta[c];
  return lp::solve(build_program<mpq_class>(cells, combo, ind, fixed, nullptr)).status == lp::Status::Optimal;
}

bool binaryiv_consistent_exact(const BivCellsQ& cells, BivCombo combo, BivIndependence ind) {
  return lp::solve(build_program<mpq_class>(cells, combo, ind, {}, nullptr)).status == lp::Status::Optimal;
}

std::optional<double> binaryiv_support(const BinaryIVData& d, BivCombo combo, const std::array<double, 4>& dir,
                                       BivIndependence ind) {
  const auto r = lp::solve(build_program<double>(cells_of(d), combo, ind, {}, &dir));
  if (r.status != lp::Status::Optimal) return std::nullopt;
  return r.value;
}

GridSet binaryiv_grid(const BinaryIVData& d, BivCombo combo, const std::vector<double>& axis,
                      BivIndependence ind) {
  const auto q = cells_of(d);
  const std::size_t n = axis.size();
  std::vector<std::uint8_t> mask(n * n * n * n, 0);
  constexpr std::array<int, 4> order{kT00, kT01, kT10, kT11};
  std::array<std::optional<double>, 4> fixed;
  std::array<std::size_t, 4> idx{};
  std::function<void(int)> descend = [&](int level) {
    const int c = order[level];
    const auto range = coordinate_range(q, combo, ind, fixed, c);
    if (!range) return;
    for (std::size_t k = 0; k < n; ++k) {
      if (axis[k] < range->lo() - kGridTol || axis[k] > range->hi() + kGridTol) continue;
      idx[c] = k;
      if (level == 3) {
        mask[((idx[0] * n + idx[1]) * n + idx[2]) * n + idx[3]] = 1;
        continue;
      }
      fixed[c] = axis[k];
      descend(level + 1);
      fixed[c].reset();
    }
  };
  descend(0);
  return GridSet({axis, axis, axis, axis}, std::move(mask));
}

mpq_class max_joint_violation(int first, int second) {
  // Each instrumental inequality as its two cell positions: (z, position) pairs.
  const std::array<std::array<std::pair<int, int>, 2>, 4> terms{{
      {{{1, cell_pos(1, 1)}, {0, cell_pos(0, 1)}}},
      {{{0, cell_pos(1, 1)}, {1, cell_pos(0, 1)}}},
      {{{1, cell_pos(1, 0)}, {0, cell_pos(0, 0)}}},
      {{{0, cell_pos(1, 0)}, {1, cell_pos(0, 0)}}},
  }};
  if (first < 1 || first > 4 || second < 1 || second > 4) throw DomainError("instrumental inequalities are 1..4");
  // Variables: 8 cell probabilities, t+, t-, two slacks. Maximize t = t+ - t-.
  constexpr std::size_t n = 12;
  lp::Problem<mpq_class> p;
  for (int z = 0; z < 2; ++z) {
    std::vector<mpq_class> row(n, 0);
    for (int k = 0; k < 4; ++k) row[z * 4 + k] = 1;
    p.a.push_back(row);
    p.b.push_back(1);
  }
  int slack = 10;
  for (int which : {first, second}) {
    std::vector<mpq_class> row(n, 0);
    for (auto [z, pos] : terms[which - 1]) row[z * 4 + pos] += 1;
    row[8] = -1;
    row[9] = 1;
    row[slack++] = -1;
    p.a.push_back(row);
    p.b.push_back(1);
  }
  p.c.assign(n, 0);
  p.c[8] = 1;
  p.c[9] = -1;
  const auto r = lp::solve(p);
  return r.value;
}

// -------------------------------------------------------------------- AMIV

std::array<std::optional<Interval>, 2> amiv_bounds(const AMIVMoments& m, std::size_t z_star, double step) {
  if (z_star < 1 || z_star > m.k) throw DomainError("cutoff must lie in 1..k");
  std::array<std::optional<Interval>, 2> out;
  for (int d = 0; d < 2; ++d) {
    const auto grid = make_axis_step(m.y_lower[d], m.y_upper[d], step);
    double best_lo = kInf, best_hi = -kInf;
    std::vector<std::size_t> pick(m.k);
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t t, std::size_t from) {
      if (t == m.k) {
        double theta = 0.0;
        for (std::size_t s = 0; s < m.k; ++s) theta += m.z_weights[s] * grid[pick[s]];
        best_lo = std::min(best_lo, theta);
        best_hi = std::max(best_hi, theta);
        return;
      }
      // From the cutoff on the mean sequence stays flat.
      const std::size_t first = from, last = t >= z_star ? from : grid.size() - 1;
      for (std::size_t g = first; g <= last && g < grid.size(); ++g) {
        const double mu = grid[g];
        if (mu < m.q_lower[d][t] - kEndpointTol || mu > m.q_upper[d][t] + kEndpointTol) continue;
        pick[t] = g;
        walk(t + 1, g);
      }
    };
    walk(0, 0);
    if (best_lo <= best_hi) out[d] = Interval::closed(best_lo, best_hi);
  }
  return out;
}

// ------------------------------------------------------------ random sets

bool selectionable(const RandomSetSpec& spec, const std::vector<double>& p_y, std::span<const double> theta) {
  std::vector<double> mass(spec.sets.size());
  for (std::size_t j = 0; j < spec.sets.size(); ++j) mass[j] = spec.probability(j, theta);
  return transport_feasible(spec.sets, mass, p_y);
}

GridSet random_set_sharp_set(const FiniteCapacityModel& model) {
  if (!model.random_set) throw UnsupportedError("transport oracle needs an analytic random-set capacity");
  GridSet grid = GridSet::full(model.theta_axes);
  std::vector<std::uint8_t> mask(grid.size(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto th = grid.point(i);
    bool ok = true;
    for (std::size_t x = 0; x < model.x_support.size() && ok; ++x)
      ok = selectionable(*model.random_set, model.p_y_given_x[x], th);
    mask[i] = ok ? 1 : 0;
  }
  return GridSet(model.theta_axes, std::move(mask));
}

}  // namespace mrb::oracle
