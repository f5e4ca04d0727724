#include "mrb/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mrb {
namespace {

struct Ratios {
  double lower;
  double upper;
};

Ratios column_ratios(const BoundsMoments& m, const std::vector<double>& h) {
  if (h.size() != m.size()) throw DimensionError("instrument column length differs from the support of Z");
  double mass = 0.0, lo = 0.0, hi = 0.0;
  for (std::size_t z = 0; z < h.size(); ++z) {
    if (h[z] < 0.0) throw InstrumentError("instrument columns must be nonnegative");
    mass += m.weights[z] * h[z];
    lo += m.weights[z] * h[z] * m.lower_mean[z];
    hi += m.weights[z] * h[z] * m.upper_mean[z];
  }
  if (!(mass > 0.0)) throw InstrumentError("instrument column has zero mass E[h(Z)]");
  return {lo / mass, hi / mass};
}

// Normalized indicator of {z : pick(z)}, or empty when the set has no mass.
std::vector<double> normalized_indicator(const BoundsMoments& m, const std::vector<bool>& pick) {
  double mass = 0.0;
  for (std::size_t z = 0; z < m.size(); ++z)
    if (pick[z]) mass += m.weights[z];
  std::vector<double> h(m.size(), 0.0);
  if (mass <= 0.0) return {};
  for (std::size_t z = 0; z < m.size(); ++z)
    if (pick[z]) h[z] = 1.0 / mass;
  return h;
}

double weighted_mean(const BoundsMoments& m, const std::vector<double>& h, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t z = 0; z < m.size(); ++z) s += m.weights[z] * h[z] * v[z];
  return s;
}

// h = q·h_minus + (1-q)·h_plus with E[h·v] = theta, built from {v <= theta} and {v >= theta}.
std::vector<double> mixing_column(const BoundsMoments& m, const std::vector<double>& v, double theta) {
  std::vector<bool> below(m.size()), above(m.size());
  for (std::size_t z = 0; z < m.size(); ++z) {
    below[z] = v[z] <= theta + kEndpointTol;
    above[z] = v[z] >= theta - kEndpointTol;
  }
  const auto h_minus = normalized_indicator(m, below);
  const auto h_plus = normalized_indicator(m, above);
  if (h_minus.empty() || h_plus.empty()) throw DomainError("theta is not bracketed by the conditional means");
  const double lo = weighted_mean(m, h_minus, v), hi = weighted_mean(m, h_plus, v);
  const double q = hi - lo > 0.0 ? std::clamp((hi - theta) / (hi - lo), 0.0, 1.0) : 0.0;
  std::vector<double> h(m.size());
  for (std::size_t z = 0; z < m.size(); ++z) h[z] = q * h_minus[z] + (1.0 - q) * h_plus[z];
  return h;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

SharpBounds sharp_bounds(const BoundsMoments& m) {
  SharpBounds b;
  b.gamma_lower = -std::numeric_limits<double>::infinity();
  b.gamma_upper = std::numeric_limits<double>::infinity();
  for (std::size_t z = 0; z < m.size(); ++z) {
    if (!(m.weights[z] > 0.0)) continue;
    b.gamma_lower = std::max(b.gamma_lower, m.lower_mean[z]);
    b.gamma_upper = std::min(b.gamma_upper, m.upper_mean[z]);
  }
  b.refuted = b.gamma_lower > b.gamma_upper + kEndpointTol;
  return b;
}

Interval outer_set(const BoundsMoments& m, const Instrument& h) {
  if (h.columns.empty()) throw InstrumentError("instrument has no columns");
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (const auto& col : h.columns) {
    const auto r = column_ratios(m, col);
    lo = std::max(lo, r.lower);
    hi = std::min(hi, r.upper);
  }
  return Interval::closed(lo, hi);
}

MassConditions mass_conditions(const BoundsMoments& m) {
  const auto b = sharp_bounds(m);
  MassConditions c;
  for (std::size_t z = 0; z < m.size(); ++z) {
    if (!(m.weights[z] > 0.0)) continue;
    c.lower_le_gamma_upper |= m.lower_mean[z] <= b.gamma_upper + kEndpointTol;
    c.upper_ge_gamma_lower |= m.upper_mean[z] >= b.gamma_lower - kEndpointTol;
    c.upper_at_gamma_upper |= std::fabs(m.upper_mean[z] - b.gamma_upper) <= kEndpointTol;
    c.lower_at_gamma_lower |= std::fabs(m.lower_mean[z] - b.gamma_lower) <= kEndpointTol;
  }
  return c;
}

Interval five_case_interval(double gamma_lower, double gamma_upper, bool lower_le_gamma_upper, bool upper_ge_gamma_lower) {
  if (gamma_lower <= gamma_upper + kEndpointTol) return Interval::closed(gamma_lower, gamma_upper);
  return Interval(gamma_upper, gamma_lower, !lower_le_gamma_upper, !upper_ge_gamma_lower);
}

Interval mrb_intersection(const BoundsMoments& m) {
  const auto b = sharp_bounds(m);
  const auto c = mass_conditions(m);
  return five_case_interval(b.gamma_lower, b.gamma_upper, c.lower_le_gamma_upper, c.upper_ge_gamma_lower);
}

Interval pointid_region(const BoundsMoments& m) {
  const auto b = sharp_bounds(m);
  if (!b.refuted) throw DomainError("point-identifying instruments exist only for refuted models");
  const auto c = mass_conditions(m);
  return Interval(b.gamma_upper, b.gamma_lower, !c.upper_at_gamma_upper, !c.lower_at_gamma_lower);
}

Instrument construct_pointid_instrument(const BoundsMoments& m, double theta) {
  const auto b = sharp_bounds(m);
  if (!b.refuted) throw DomainError("model is not refuted: gamma_lower <= gamma_upper");
  const auto w = pointid_region(m);
  if (theta < b.gamma_upper - kEndpointTol || (w.lo_open() && theta <= b.gamma_upper + kEndpointTol))
    throw DomainError("theta=" + fmt(theta) + " lies below the lower endpoint gamma_upper=" + fmt(b.gamma_upper));
  if (theta > b.gamma_lower + kEndpointTol || (w.hi_open() && theta >= b.gamma_lower - kEndpointTol))
    throw DomainError("theta=" + fmt(theta) + " lies above the upper endpoint gamma_lower=" + fmt(b.gamma_lower));
  Instrument h;
  h.columns.push_back(mixing_column(m, m.lower_mean, theta));
  h.columns.push_back(mixing_column(m, m.upper_mean, theta));
  return h;
}

AssumptionFamily instrument_family(const BoundsMoments& m, const std::vector<std::vector<double>>& columns) {
  std::vector<std::string> ids;
  std::vector<IdentifiedSet> atoms;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    ids.push_back("h" + std::to_string(i + 1));
    atoms.emplace_back(outer_set(m, Instrument{{columns[i]}}));
  }
  return AssumptionFamily::intersection(std::move(ids), std::move(atoms));
}

}  // namespace mrb
