#include "mrb/amiv.hpp"

#include <algorithm>
#include <limits>

namespace mrb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// max_{t <= z} q_lower (0-based z).
double max_lower_upto(const AMIVMoments& m, int d, std::size_t z) {
  double v = -kInf;
  for (std::size_t t = 0; t <= z; ++t) v = std::max(v, m.q_lower[d][t]);
  return v;
}

// min_{t >= z} q_upper (0-based z).
double min_upper_from(const AMIVMoments& m, int d, std::size_t z) {
  double v = kInf;
  for (std::size_t t = z; t < m.k; ++t) v = std::min(v, m.q_upper[d][t]);
  return v;
}

void check_cutoff(const AMIVMoments& m, std::size_t z) {
  if (z < 1 || z > m.k) throw DomainError("cutoff must lie in 1..k");
}

void check_outcome(int d) {
  if (d != 0 && d != 1) throw DomainError("treatment must be 0 or 1");
}

// Smallest z (1-based) with a_z retained for outcome d, scanning the supplied predicate.
template <class Pred>
std::optional<std::size_t> first_member(std::size_t k, Pred keep) {
  for (std::size_t z = 1; z <= k; ++z)
    if (keep(z)) return z;
  return std::nullopt;
}

}  // namespace

bool amiv_star_membership(const AMIVMoments& m, std::size_t z, int d) {
  check_cutoff(m, z);
  check_outcome(d);
  const std::size_t zs = z - 1;
  for (std::size_t zp = 0; zp < zs; ++zp)
    if (max_lower_upto(m, d, zp) > min_upper_from(m, d, zp) + kEndpointTol) return false;
  return max_lower_upto(m, d, m.k - 1) <= min_upper_from(m, d, zs) + kEndpointTol;
}

bool amiv_star_membership(const AMIVMoments& m, std::size_t z) {
  return amiv_star_membership(m, z, 1) && amiv_star_membership(m, z, 0);
}

Interval amiv_gamma(const AMIVMoments& m, std::size_t z_star, int d) {
  check_cutoff(m, z_star);
  check_outcome(d);
  const std::size_t zs = z_star - 1;
  const double all_lower = max_lower_upto(m, d, m.k - 1);
  const double tail_upper = min_upper_from(m, d, zs);
  double lo = 0.0, hi = 0.0;
  for (std::size_t z = 0; z < m.k; ++z) {
    const double w = m.z_weights[z];
    if (z < zs) {
      lo += w * max_lower_upto(m, d, z);
      hi += w * min_upper_from(m, d, z);
    } else {
      lo += w * all_lower;
      hi += w * tail_upper;
    }
  }
  return Interval::closed(lo, hi);
}

Interval amiv_worst_case(const AMIVMoments& m, int d) {
  check_outcome(d);
  double lo = 0.0, hi = 0.0;
  for (std::size_t t = 0; t < m.k; ++t) {
    lo += m.z_weights[t] * m.q_lower[d][t];
    hi += m.z_weights[t] * m.q_upper[d][t];
  }
  return Interval::closed(lo, hi);
}

Interval amiv_mi_interval(const AMIVMoments& m, int d) {
  check_outcome(d);
  return Interval::closed(max_lower_upto(m, d, m.k - 1), min_upper_from(m, d, 0));
}

AMIVResult amiv_mrb(const AMIVMoments& m, CutoffMode mode) {
  AMIVResult r;
  r.mode = mode;
  for (int d : {1, 0}) {
    const int s = amiv_slot(d);
    r.star[s].resize(m.k);
    for (std::size_t z = 1; z <= m.k; ++z)
      r.star[s][z - 1] = mode == CutoffMode::Joint ? amiv_star_membership(m, z) : amiv_star_membership(m, z, d);
    r.z_star[s] = first_member(m.k, [&](std::size_t z) { return r.star[s][z - 1]; });
    r.fallback[s] = !r.z_star[s].has_value();
    r.mrb[s] = r.z_star[s] ? amiv_gamma(m, *r.z_star[s], d) : amiv_worst_case(m, d);
    r.mi[s] = amiv_mi_interval(m, d);
    r.miv[s] = amiv_star_membership(m, m.k, d) ? amiv_gamma(m, m.k, d) : Interval::empty();
  }
  return r;
}

AssumptionFamily amiv_family(const AMIVMoments& m, CutoffMode mode) {
  const std::size_t k = m.k;
  std::vector<std::string> ids;
  if (mode == CutoffMode::Joint) {
    for (std::size_t z = 1; z <= k; ++z) ids.push_back("a" + std::to_string(z));
  } else {
    for (int d : {1, 0})
      for (std::size_t z = 1; z <= k; ++z) ids.push_back("a" + std::to_string(z) + "[d" + std::to_string(d) + "]");
  }
  ids.push_back("a_dagger");
  const std::size_t dagger = ids.size() - 1;
  // Strongest cutoff imposed on outcome d by subset s; a_z implies a_{z+1}.
  auto cutoff = [k, mode](Subset s, int d) -> std::optional<std::size_t> {
    const std::size_t base = mode == CutoffMode::Joint ? 0 : static_cast<std::size_t>(amiv_slot(d)) * k;
    for (std::size_t z = 1; z <= k; ++z)
      if ((s >> (base + z - 1)) & 1u) return z;
    return std::nullopt;
  };
  auto imposes_mean_independence = [dagger, k, mode](Subset s) {
    const std::size_t cut_bits = mode == CutoffMode::Joint ? k : 2 * k;
    return ((s >> dagger) & 1u) || (s & ((Subset{1} << cut_bits) - 1)) != 0;
  };
  CustomOracle oracle;
  oracle.consistent = [m, cutoff](Subset s) {
    for (int d : {1, 0})
      if (auto z = cutoff(s, d); z && !amiv_star_membership(m, *z, d)) return false;
    return true;
  };
  oracle.set_of = [m, cutoff, imposes_mean_independence, consistent = oracle.consistent](Subset s) {
    if (!imposes_mean_independence(s)) return IdentifiedSet(Box::whole(2));
    if (!consistent(s)) return IdentifiedSet(Box({Interval::empty(), Interval::empty()}));
    std::vector<Interval> dims;
    for (int d : {1, 0}) {
      auto z = cutoff(s, d);
      dims.push_back(z ? amiv_gamma(m, *z, d) : amiv_worst_case(m, d));
    }
    return IdentifiedSet(Box(std::move(dims)));
  };
  return AssumptionFamily::custom(std::move(ids), std::move(oracle));
}

}  // namespace mrb
