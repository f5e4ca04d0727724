#include "mrb/moments.hpp"

#include <cmath>
#include <numeric>

namespace mrb {
namespace {

void check_weights(const std::vector<double>& w, const char* what) {
  double sum = 0.0;
  for (double v : w) {
    if (!(v > 0.0)) throw ValidationError(std::string(what) + ": weights must be positive");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-12) throw ValidationError(std::string(what) + ": weights must sum to one");
}

}  // namespace

BoundsMoments BoundsMoments::make(std::vector<std::string> labels, std::vector<double> weights,
                                  std::vector<double> lower, std::vector<double> upper) {
  const std::size_t n = weights.size();
  if (n == 0) throw ValidationError("bounds moments need at least one support point");
  if (lower.size() != n || upper.size() != n) throw ValidationError("bounds moments: column lengths differ");
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
  if (labels.size() != n) throw ValidationError("bounds moments: label count differs");
  check_weights(weights, "bounds moments");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
      throw ValidationError("bounds moments: conditional means must be finite");
    if (lower[i] > upper[i] + kEndpointTol)
      throw ValidationError("bounds moments: lower mean exceeds upper mean at z=" + labels[i]);
  }
  return {std::move(labels), std::move(weights), std::move(lower), std::move(upper)};
}

BinaryIVData BinaryIVData::make(const std::array<double, 4>& z0, const std::array<double, 4>& z1) {
  BinaryIVData d;
  const std::array<const std::array<double, 4>*, 2> cells{&z0, &z1};
  for (int z = 0; z < 2; ++z) {
    const auto& c = *cells[z];
    double sum = 0.0;
    for (double v : c) {
      if (!(v >= 0.0)) throw ValidationError("binary IV: probabilities must be nonnegative");
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw ValidationError("binary IV: cell probabilities must sum to one");
    d.q[1][1][z] = c[0];
    d.q[0][1][z] = c[1];
    d.q[1][0][z] = c[2];
    d.q[0][0][z] = c[3];
  }
  return d;
}

std::string combo_name(BivCombo c) {
  std::string s = "{";
  bool first = true;
  for (int k = 0; k < 5; ++k) {
    if (!((c >> k) & 1)) continue;
    if (!first) s += ",";
    s += "a" + std::to_string(k + 1);
    first = false;
  }
  return s + "}";
}

BivCombo combo_from_names(const std::vector<std::string>& names) {
  BivCombo c = 0;
  for (const auto& n : names) {
    if (n.size() != 2 || n[0] != 'a' || n[1] < '1' || n[1] > '5')
      throw KeyError("unknown binary IV assumption \"" + n + "\"");
    c |= static_cast<BivCombo>(1u << (n[1] - '1'));
  }
  return c;
}

AMIVMoments AMIVMoments::make(std::vector<double> weights, std::array<std::vector<double>, 2> q_lower,
                              std::array<std::vector<double>, 2> q_upper, std::array<double, 2> y_lower,
                              std::array<double, 2> y_upper) {
  const std::size_t k = weights.size();
  if (k == 0) throw ValidationError("AMIV moments need at least one instrument value");
  check_weights(weights, "AMIV moments");
  for (int d = 0; d < 2; ++d) {
    if (q_lower[d].size() != k || q_upper[d].size() != k) throw ValidationError("AMIV moments: column lengths differ");
    if (y_lower[d] > y_upper[d]) throw ValidationError("AMIV moments: support bounds crossed");
    for (std::size_t t = 0; t < k; ++t) {
      const double lo = q_lower[d][t], hi = q_upper[d][t];
      if (lo < y_lower[d] - kEndpointTol || hi > y_upper[d] + kEndpointTol || lo > hi + kEndpointTol)
        throw ValidationError("AMIV moments: need y_lower <= q_lower <= q_upper <= y_upper (d=" + std::to_string(d) +
                              ", z=" + std::to_string(t + 1) + ")");
    }
  }
  AMIVMoments m;
  m.k = k;
  m.z_weights = std::move(weights);
  m.q_lower = std::move(q_lower);
  m.q_upper = std::move(q_upper);
  m.y_lower = y_lower;
  m.y_upper = y_upper;
  return m;
}

double RandomSetSpec::probability(std::size_t j, std::span<const double> theta) const {
  const auto& c = coeffs[j];
  if (c.size() != theta.size() + 1) throw DimensionError("random-set coefficients do not match theta");
  double p = c[0];
  for (std::size_t m = 0; m < theta.size(); ++m) p += c[m + 1] * theta[m];
  return p;
}

double RandomSetSpec::hitting(std::uint32_t k, std::span<const double> theta) const {
  double p = 0.0;
  for (std::size_t j = 0; j < sets.size(); ++j)
    if (sets[j] & k) p += probability(j, theta);
  return p;
}

void FiniteCapacityModel::validate() const {
  if (y_support.empty() || y_support.size() > 8) throw BudgetError("outcome support must have 1..8 points");
  if (p_y_given_x.size() != x_support.size()) throw ValidationError("need one probability row per covariate value");
  for (const auto& row : p_y_given_x) {
    if (row.size() != y_support.size()) throw ValidationError("probability row length differs from outcome support");
    double s = 0.0;
    for (double v : row) {
      if (v < 0.0) throw ValidationError("outcome probabilities must be nonnegative");
      s += v;
    }
    if (std::fabs(s - 1.0) > 1e-9) throw ValidationError("outcome probabilities must sum to one");
  }
  if (!capacity) throw ValidationError("capacity model needs a capacity callback");
  if (theta_axes.empty()) throw ValidationError("capacity model needs a theta grid");
}

double FiniteCapacityModel::p_in(std::uint32_t k, std::size_t x) const {
  double p = 0.0;
  for (std::size_t y = 0; y < y_support.size(); ++y)
    if ((k >> y) & 1u) p += p_y_given_x[x][y];
  return p;
}

FiniteCapacityModel random_set_model(std::vector<std::string> y_support, std::vector<std::string> x_support,
                                     std::vector<std::vector<double>> p_y_given_x, RandomSetSpec spec,
                                     std::vector<std::vector<double>> theta_axes) {
  if (spec.sets.size() != spec.coeffs.size()) throw ValidationError("random set: sets and coefficients differ");
  const std::uint32_t all = (std::uint32_t{1} << y_support.size()) - 1;
  for (auto s : spec.sets)
    if (s == 0 || (s & ~all)) throw ValidationError("random set outcomes must be nonempty subsets of the support");
  // The probabilities must form a distribution at every grid point.
  GridSet grid = GridSet::full(theta_axes);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto th = grid.point(i);
    double total = 0.0;
    for (std::size_t j = 0; j < spec.sets.size(); ++j) {
      const double p = spec.probability(j, th);
      if (p < -1e-12) throw ValidationError("random set probability negative on the theta grid");
      total += p;
    }
    if (std::fabs(total - 1.0) > 1e-9) throw ValidationError("random set probabilities do not sum to one on the grid");
  }
  FiniteCapacityModel m;
  m.y_support = std::move(y_support);
  m.x_support = std::move(x_support);
  m.p_y_given_x = std::move(p_y_given_x);
  m.theta_axes = std::move(theta_axes);
  m.random_set = spec;
  m.capacity = [spec](std::uint32_t k, std::size_t, std::span<const double> th) {
    return CapacityValue{spec.hitting(k, th), 0.0};
  };
  m.validate();
  return m;
}

}  // namespace mrb
