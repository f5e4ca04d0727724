#include "mrb/artstein.hpp"

#include <algorithm>
#include <cmath>

namespace mrb {
namespace {

constexpr double kCapTol = 1e-9;
constexpr double kSaturationTol = 1e-6;

bool inequality_holds(const FiniteCapacityModel& model, std::uint32_t k, std::size_t x, std::span<const double> th) {
  const CapacityValue c = model.capacity(k, x, th);
  return model.p_in(k, x) <= c.value + 3.0 * c.se + kCapTol;
}

void check_collection(const FiniteCapacityModel& model, const std::vector<KRestriction>& collection) {
  const std::uint32_t all = model.all_outcomes();
  for (const auto& r : collection) {
    if (r.k == 0 || (r.k & ~all)) throw ValidationError("restriction sets must be nonempty subsets of the outcomes");
    if (r.x && *r.x >= model.x_support.size()) throw ValidationError("restriction covariate index out of range");
  }
}

std::vector<KRestriction> expand_all_x(const FiniteCapacityModel& model, const std::vector<std::uint32_t>& ks) {
  std::vector<KRestriction> out;
  for (auto k : ks) out.push_back({k, std::nullopt});
  (void)model;
  return out;
}

}  // namespace

std::string restriction_label(const FiniteCapacityModel& model, const KRestriction& r) {
  std::string s = "{";
  bool first = true;
  for (std::size_t y = 0; y < model.y_support.size(); ++y) {
    if (!((r.k >> y) & 1u)) continue;
    s += (first ? "" : ",") + model.y_support[y];
    first = false;
  }
  s += "}";
  if (r.x) s += "@" + model.x_support[*r.x];
  return s;
}

GridSet outer_set_for_restrictions(const FiniteCapacityModel& model, const std::vector<KRestriction>& collection) {
  model.validate();
  check_collection(model, collection);
  GridSet grid = GridSet::full(model.theta_axes);
  std::vector<std::uint8_t> mask(grid.size(), 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto th = grid.point(i);
    for (const auto& r : collection) {
      bool ok = true;
      if (r.x) {
        ok = inequality_holds(model, r.k, *r.x, th);
      } else {
        for (std::size_t x = 0; x < model.x_support.size() && ok; ++x) ok = inequality_holds(model, r.k, x, th);
      }
      if (!ok) {
        mask[i] = 0;
        break;
      }
    }
  }
  return GridSet(model.theta_axes, std::move(mask));
}

GridSet outer_set_for_collection(const FiniteCapacityModel& model, const std::vector<std::uint32_t>& collection) {
  return outer_set_for_restrictions(model, expand_all_x(model, collection));
}

GridSet sharp_set(const FiniteCapacityModel& model) {
  model.validate();
  std::vector<std::uint32_t> all;
  for (std::uint32_t k = 1; k <= model.all_outcomes(); ++k) all.push_back(k);
  return outer_set_for_collection(model, all);
}

CapacityPrechecks capacity_prechecks(const FiniteCapacityModel& model) {
  model.validate();
  CapacityPrechecks c;
  c.positive_probabilities = true;
  for (std::size_t x = 0; x < model.x_support.size(); ++x)
    for (std::size_t y = 0; y < model.y_support.size(); ++y)
      if (!(model.p_y_given_x[x][y] > 0.0)) {
        c.positive_probabilities = false;
        c.notes.push_back("P(Y=" + model.y_support[y] + "|X=" + model.x_support[x] + ") is zero");
      }
  GridSet grid = GridSet::full(model.theta_axes);
  c.saturation = true;
  for (std::size_t y = 0; y < model.y_support.size(); ++y) {
    double best = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto th = grid.point(i);
      double worst = 1.0;
      for (std::size_t x = 0; x < model.x_support.size(); ++x)
        worst = std::min(worst, model.capacity(std::uint32_t{1} << y, x, th).value);
      best = std::max(best, worst);
    }
    if (best < 1.0 - kSaturationTol) {
      c.saturation = false;
      c.notes.push_back("capacity of {" + model.y_support[y] + "} peaks at " + std::to_string(best) +
                        " on the grid, short of 1");
    }
  }
  return c;
}

DiscordanceSearch find_discordant_collections(const FiniteCapacityModel& model) {
  DiscordanceSearch out;
  out.checks = capacity_prechecks(model);
  if (!sharp_set(model).is_empty()) {
    out.diagnostic = "sharp set is nonempty; the model is not refuted on this grid";
    return out;
  }
  // One assumption per (K, x) inequality.
  std::vector<KRestriction> atoms;
  std::vector<IdentifiedSet> sets;
  std::vector<std::string> ids;
  for (std::uint32_t k = 1; k <= model.all_outcomes(); ++k)
    for (std::size_t x = 0; x < model.x_support.size(); ++x) {
      KRestriction r{k, x};
      atoms.push_back(r);
      ids.push_back(restriction_label(model, r));
      sets.emplace_back(outer_set_for_restrictions(model, {r}));
    }
  auto collection = [&](Subset s) {
    std::vector<KRestriction> c;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if ((s >> i) & 1u) c.push_back(atoms[i]);
    return c;
  };
  auto to_result = [&](const std::vector<KRestriction>& a, const std::vector<KRestriction>& b, GridSet sa,
                       GridSet sb) {
    out.found = DiscordantCollections{a, b, std::move(sa), std::move(sb)};
  };
  if (atoms.size() <= kLatticeBudget) {
    const auto fam = AssumptionFamily::intersection(ids, sets, IdentifiedSet(GridSet::full(model.theta_axes)));
    if (auto cert = find_discordance(fam)) {
      to_result(collection(cert->submodel_a), collection(cert->submodel_b), cert->set_a.as<GridSet>(),
                cert->set_b.as<GridSet>());
      return out;
    }
  } else {
    // Too many inequalities for the exhaustive lattice: check single-inequality pairs only.
    for (std::size_t i = 0; i < atoms.size() && !out.found; ++i)
      for (std::size_t j = i + 1; j < atoms.size() && !out.found; ++j) {
        const auto& a = sets[i].as<GridSet>();
        const auto& b = sets[j].as<GridSet>();
        if (a.is_empty() || b.is_empty()) continue;
        if (is_empty(intersect(sets[i], sets[j]))) to_result({atoms[i]}, {atoms[j]}, a, b);
      }
    if (out.found) return out;
  }
  out.diagnostic = "no discordant collections found";
  if (!out.checks.positive_probabilities || !out.checks.saturation)
    out.diagnostic += "; positivity/saturation pre-checks failed, so their existence is not guaranteed";
  return out;
}

}  // namespace mrb
