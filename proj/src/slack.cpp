#include <algorithm>
#include <cmath>
#include <limits>

#include "mrb/lattice.hpp"

namespace mrb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool relax_lower(SlackDir d) { return d == SlackDir::Lower || d == SlackDir::Both; }
bool relax_upper(SlackDir d) { return d == SlackDir::Upper || d == SlackDir::Both; }

void validate(const SlackFamily& sf) {
  const std::size_t n = sf.ids.size();
  if (sf.lower.size() != n || sf.upper.size() != n || sf.dirs.size() != n)
    throw ValidationError("slack family fields differ in length");
}

// a dominates b: no larger anywhere and strictly smaller somewhere.
bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + kEndpointTol) return false;
    if (a[i] < b[i] - kEndpointTol) strict = true;
  }
  return strict;
}

}  // namespace

AssumptionFamily SlackFamily::base() const {
  validate(*this);
  std::vector<IdentifiedSet> atoms;
  for (std::size_t i = 0; i < ids.size(); ++i) atoms.emplace_back(Interval::closed(lower[i], upper[i]));
  return AssumptionFamily::intersection(ids, std::move(atoms));
}

SlackFamily SlackFamily::from_family(const AssumptionFamily& fam, std::vector<SlackDir> dirs) {
  if (!fam.intersection_rule()) throw UnsupportedError("slack families need interval atoms under intersection");
  SlackFamily sf;
  sf.ids = fam.ids();
  for (const auto& a : fam.atoms()) {
    if (!a.holds<Interval>() || a.as<Interval>().is_empty())
      throw UnsupportedError("slack families need nonempty interval atoms; supply raw endpoints instead");
    sf.lower.push_back(a.as<Interval>().lo());
    sf.upper.push_back(a.as<Interval>().hi());
  }
  sf.dirs = std::move(dirs);
  validate(sf);
  return sf;
}

SlackDir slack_dir_from_string(const std::string& s) {
  if (s == "none") return SlackDir::None;
  if (s == "lower") return SlackDir::Lower;
  if (s == "upper") return SlackDir::Upper;
  if (s == "both") return SlackDir::Both;
  throw ValidationError("unknown slack direction \"" + s + "\"");
}

std::string to_string(SlackDir d) {
  switch (d) {
    case SlackDir::None: return "none";
    case SlackDir::Lower: return "lower";
    case SlackDir::Upper: return "upper";
    case SlackDir::Both: return "both";
  }
  return "none";
}

std::optional<std::vector<double>> required_slack(const SlackFamily& sf, double theta) {
  validate(sf);
  std::vector<double> s(2 * sf.ids.size(), 0.0);
  for (std::size_t i = 0; i < sf.ids.size(); ++i) {
    const double below = sf.lower[i] - theta;
    const double above = theta - sf.upper[i];
    if (below > kEndpointTol) {
      if (!relax_lower(sf.dirs[i])) return std::nullopt;
      s[2 * i] = below;
    }
    if (above > kEndpointTol) {
      if (!relax_upper(sf.dirs[i])) return std::nullopt;
      s[2 * i + 1] = above;
    }
  }
  return s;
}

Interval falsification_adaptive_set(const SlackFamily& sf) {
  validate(sf);
  double hard_lo = -kInf, hard_hi = kInf;  // endpoints that may not move
  double soft_lo = -kInf, soft_hi = kInf;  // largest relaxable lower end, smallest relaxable upper end
  for (std::size_t i = 0; i < sf.ids.size(); ++i) {
    if (relax_lower(sf.dirs[i]))
      soft_lo = std::max(soft_lo, sf.lower[i]);
    else
      hard_lo = std::max(hard_lo, sf.lower[i]);
    if (relax_upper(sf.dirs[i]))
      soft_hi = std::min(soft_hi, sf.upper[i]);
    else
      hard_hi = std::min(hard_hi, sf.upper[i]);
  }
  if (hard_lo > hard_hi + kEndpointTol) return Interval::empty();
  // Moving up from theta lowers some lower-end slack without raising any upper-end slack
  // exactly when theta < min(soft_lo, soft_hi, hard_hi); symmetrically for moving down.
  const double lo = std::max(hard_lo, std::min({soft_lo, soft_hi, hard_hi}));
  const double hi = std::min(hard_hi, std::max({soft_hi, soft_lo, hard_lo}));
  return Interval::closed(lo, hi);
}

GridSet falsification_adaptive_set_on_grid(const SlackFamily& sf, const std::vector<double>& axis) {
  std::vector<std::optional<std::vector<double>>> slack;
  slack.reserve(axis.size());
  for (double t : axis) slack.push_back(required_slack(sf, t));
  std::vector<std::uint8_t> mask(axis.size(), 0);
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!slack[i]) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < axis.size() && !dominated; ++j)
      if (j != i && slack[j] && dominates(*slack[j], *slack[i])) dominated = true;
    mask[i] = dominated ? 0 : 1;
  }
  return GridSet({axis}, std::move(mask));
}

}  // namespace mrb
