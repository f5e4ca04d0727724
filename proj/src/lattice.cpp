#include "mrb/lattice.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace mrb {
namespace {

bool has(Subset s, std::size_t i) { return (s >> i) & 1u; }

void check_budget(std::size_t n) {
  if (n > kLatticeBudget)
    throw BudgetError("assumption family has " + std::to_string(n) + " members; exhaustive search supports at most " +
                      std::to_string(kLatticeBudget) + " (custom-oracle users should shrink A)");
}

// Consistency flag for every subset, indexed by bitmask.
std::vector<std::uint8_t> consistency_table(const AssumptionFamily& fam) {
  const std::size_t n = fam.size();
  check_budget(n);
  std::vector<std::uint8_t> table(std::size_t{1} << n, 0);
  if (!fam.intersection_rule()) {
    for (std::size_t m = 0; m < table.size(); ++m) table[m] = fam.consistent(static_cast<Subset>(m)) ? 1 : 0;
    return table;
  }
  // Depth-first over increasing index sequences; an inconsistent prefix prunes all its supersets.
  struct Frame {
    Subset mask;
    IdentifiedSet set;
    std::size_t next;
  };
  std::vector<Frame> stack;
  if (!is_empty(fam.space())) stack.push_back({0, fam.space(), 0});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    table[f.mask] = 1;
    for (std::size_t i = n; i-- > f.next;) {
      IdentifiedSet s = intersect(f.set, fam.atoms()[i]);
      if (!is_empty(s)) stack.push_back({f.mask | (Subset{1} << i), std::move(s), i + 1});
    }
  }
  return table;
}

bool maximal_in(const std::vector<std::uint8_t>& table, std::size_t n, Subset m) {
  if (!table[m]) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (!has(m, i) && table[m | (Subset{1} << i)]) return false;
  return true;
}

bool no_nested_holds(const AssumptionFamily& fam, const std::vector<std::uint8_t>& table) {
  if (fam.intersection_rule()) return true;
  const std::size_t n = fam.size();
  if (n > kPairBudget)
    throw BudgetError("nested-set condition check supports at most " + std::to_string(kPairBudget) + " assumptions");
  std::vector<Subset> cons;
  std::vector<IdentifiedSet> sets;
  for (std::size_t m = 0; m < table.size(); ++m) {
    if (!table[m]) continue;
    cons.push_back(static_cast<Subset>(m));
    sets.push_back(fam.identified_set(static_cast<Subset>(m)));
  }
  for (std::size_t i = 0; i < cons.size(); ++i)
    for (std::size_t j = 0; j < cons.size(); ++j)
      if (!table[cons[i] | cons[j]] && is_subset(sets[i], sets[j])) return false;
  return true;
}

}  // namespace

AssumptionFamily AssumptionFamily::intersection(std::vector<std::string> ids, std::vector<IdentifiedSet> atoms,
                                                std::optional<IdentifiedSet> space) {
  if (ids.size() != atoms.size()) throw ValidationError("assumption ids and atom sets differ in length");
  check_budget(ids.size());
  std::set<std::string> uniq(ids.begin(), ids.end());
  if (uniq.size() != ids.size()) throw ValidationError("assumption ids must be unique");
  AssumptionFamily f;
  f.ids_ = std::move(ids);
  f.atoms_ = std::move(atoms);
  if (space) {
    f.space_ = std::move(*space);
  } else if (f.atoms_.empty()) {
    f.space_ = Interval::whole();
  } else if (f.atoms_.front().holds<GridSet>()) {
    f.space_ = GridSet::full(f.atoms_.front().as<GridSet>().axes());
  } else {
    f.space_ = whole_space(f.atoms_.front().kind(), f.atoms_.front().dim());
  }
  for (const auto& a : f.atoms_)
    if (a.dim() != f.space_.dim()) throw DimensionError("atom set dimension differs from the parameter space");
  return f;
}

AssumptionFamily AssumptionFamily::custom(std::vector<std::string> ids, CustomOracle oracle) {
  check_budget(ids.size());
  std::set<std::string> uniq(ids.begin(), ids.end());
  if (uniq.size() != ids.size()) throw ValidationError("assumption ids must be unique");
  if (!oracle.set_of) throw ValidationError("custom oracle needs a set callback");
  AssumptionFamily f;
  f.ids_ = std::move(ids);
  f.space_ = oracle.set_of(0);
  f.oracle_ = std::move(oracle);
  return f;
}

Subset AssumptionFamily::subset_of(const std::vector<std::string>& names) const {
  Subset s = 0;
  for (const auto& n : names) {
    auto it = std::find(ids_.begin(), ids_.end(), n);
    if (it == ids_.end()) throw KeyError("unknown assumption id \"" + n + "\"");
    s |= Subset{1} << (it - ids_.begin());
  }
  return s;
}

std::vector<std::string> AssumptionFamily::names_of(Subset s) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (has(s, i)) out.push_back(ids_[i]);
  return out;
}

IdentifiedSet AssumptionFamily::identified_set(Subset s) const {
  if ((s & ~full()) != 0) throw KeyError("subset refers to assumptions outside the family");
  if (oracle_) return oracle_->set_of(s);
  IdentifiedSet out = space_;
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (has(s, i)) out = intersect(out, atoms_[i]);
  return out;
}

bool AssumptionFamily::consistent(Subset s) const {
  if (oracle_ && oracle_->consistent) {
    if ((s & ~full()) != 0) throw KeyError("subset refers to assumptions outside the family");
    return oracle_->consistent(s);
  }
  return !is_empty(identified_set(s));
}

IdentifiedSet identified_set(const AssumptionFamily& fam, const std::vector<std::string>& names) {
  return fam.identified_set(fam.subset_of(names));
}

bool is_minimal_relaxation(const AssumptionFamily& fam, Subset b) {
  if (!fam.consistent(b)) return false;
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (!has(b, i) && fam.consistent(b | (Subset{1} << i))) return false;
  return true;
}

RelaxationReport find_minimal_relaxations(const AssumptionFamily& fam) {
  check_budget(fam.size());
  RelaxationReport r;
  r.ids = fam.ids();
  r.mrb.dim = fam.space().dim();
  const Subset all = fam.full();
  if (fam.consistent(all)) {
    IdentifiedSet s = fam.identified_set(all);
    r.minimal_relaxations = {all};
    r.relaxation_sets = {s};
    r.mrb.parts = {s};
    r.full_model_refuted = false;
    r.flags.unique_minimal = true;
    r.flags.all_singleton = is_singleton(s);
    r.flags.no_nested_ok = fam.intersection_rule() ? true : no_nested_holds(fam, consistency_table(fam));
    return r;
  }
  r.full_model_refuted = true;
  const auto table = consistency_table(fam);
  for (std::size_t m = 0; m < table.size(); ++m) {
    if (!maximal_in(table, fam.size(), static_cast<Subset>(m))) continue;
    r.minimal_relaxations.push_back(static_cast<Subset>(m));
    r.relaxation_sets.push_back(fam.identified_set(static_cast<Subset>(m)));
  }
  r.mrb.parts = r.relaxation_sets;
  r.flags.unique_minimal = r.minimal_relaxations.size() == 1;
  r.flags.all_singleton = std::all_of(r.relaxation_sets.begin(), r.relaxation_sets.end(),
                                      [](const IdentifiedSet& s) { return is_singleton(s); });
  r.flags.no_nested_ok = no_nested_holds(fam, table);
  return r;
}

SmallestFlags check_smallest_conditions(const AssumptionFamily& fam) { return find_minimal_relaxations(fam).flags; }

DiscordanceConditions check_discordance_conditions(const AssumptionFamily& fam) {
  DiscordanceConditions c;
  const std::size_t n = fam.size();
  check_budget(n);
  if (fam.consistent(fam.full())) {
    c.some_refuted_set_of_consistent_atoms = true;
  } else {
    Subset atoms_ok = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (fam.consistent(Subset{1} << i)) atoms_ok |= Subset{1} << i;
    if (fam.intersection_rule()) {
      c.some_refuted_set_of_consistent_atoms = atoms_ok != 0 && !fam.consistent(atoms_ok);
    } else {
      // Enumerate nonempty subsets of the individually consistent atoms.
      for (Subset s = atoms_ok; s != 0; s = (s - 1) & atoms_ok) {
        if (!fam.consistent(s)) {
          c.some_refuted_set_of_consistent_atoms = true;
          break;
        }
      }
    }
  }
  if (fam.intersection_rule()) {
    c.intersection_composition = true;
  } else {
    if (n > 16) throw BudgetError("composition check supports at most 16 assumptions under a custom oracle");
    std::vector<IdentifiedSet> single(n);
    for (std::size_t i = 0; i < n; ++i) single[i] = fam.identified_set(Subset{1} << i);
    c.intersection_composition = true;
    for (Subset s = 1; s <= fam.full() && c.intersection_composition; ++s) {
      if (std::popcount(s) < 2) continue;
      IdentifiedSet meet = fam.space();
      for (std::size_t i = 0; i < n; ++i)
        if (has(s, i)) meet = intersect(meet, single[i]);
      const IdentifiedSet got = fam.identified_set(s);
      const bool e1 = is_empty(meet), e2 = is_empty(got);
      if (e1 != e2 || (!e1 && !sets_equal(meet, got))) c.intersection_composition = false;
    }
  }
  return c;
}

std::optional<DiscordanceCertificate> find_discordance(const AssumptionFamily& fam) {
  if (fam.consistent(fam.full())) return std::nullopt;
  const auto cond = check_discordance_conditions(fam);
  if (!cond.some_refuted_set_of_consistent_atoms || !cond.intersection_composition) return std::nullopt;
  const std::size_t n = fam.size();
  auto disjoint = [&](Subset a, Subset b) -> std::optional<DiscordanceCertificate> {
    if (!fam.consistent(a) || !fam.consistent(b)) return std::nullopt;
    IdentifiedSet sa = fam.identified_set(a), sb = fam.identified_set(b);
    if (!is_empty(intersect(sa, sb))) return std::nullopt;
    return DiscordanceCertificate{a, b, std::move(sa), std::move(sb)};
  };
  // Smallest certificates first: pairs of single assumptions.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (auto c = disjoint(Subset{1} << i, Subset{1} << j)) return c;
  const auto report = find_minimal_relaxations(fam);
  for (Subset m : report.minimal_relaxations)
    for (std::size_t i = 0; i < n; ++i)
      if (auto c = disjoint(Subset{1} << i, m)) return c;
  for (std::size_t i = 0; i < report.minimal_relaxations.size(); ++i)
    for (std::size_t j = i + 1; j < report.minimal_relaxations.size(); ++j)
      if (auto c = disjoint(report.minimal_relaxations[i], report.minimal_relaxations[j])) return c;
  return std::nullopt;
}

bool is_nonconflicting(const AssumptionFamily& fam, const IdentifiedSet& statement) {
  if (!fam.intersection_rule())
    throw UnsupportedError("nonconflicting check needs the intersection composition rule");
  if (statement.dim() != fam.space().dim()) throw DimensionError("statement dimension differs from the family");
  const auto report = find_minimal_relaxations(fam);
  bool implied = false;
  for (const auto& s : report.relaxation_sets) {
    if (is_empty(intersect(s, statement))) return false;
    implied = implied || is_subset(s, statement);
  }
  return implied;
}

Json to_json(const RelaxationReport& r) {
  Json rel = Json::array();
  for (Subset m : r.minimal_relaxations) {
    Json names = Json::array();
    for (std::size_t i = 0; i < r.ids.size(); ++i)
      if (has(m, i)) names.push_back(r.ids[i]);
    rel.push_back(names);
  }
  return Json{{"assumptions", r.ids},
              {"refuted", r.full_model_refuted},
              {"minimal_relaxations", rel},
              {"mrb", to_json(IdentifiedSet(r.mrb))},
              {"flags",
               {{"unique_minimal", r.flags.unique_minimal},
                {"all_singleton", r.flags.all_singleton},
                {"no_nested_ok", r.flags.no_nested_ok}}}};
}

RelaxationReport relaxation_report_from_json(const Json& j) {
  RelaxationReport r;
  r.ids = j.at("assumptions").get<std::vector<std::string>>();
  r.full_model_refuted = j.at("refuted").get<bool>();
  for (const auto& names : j.at("minimal_relaxations")) {
    Subset m = 0;
    for (const auto& n : names) {
      auto it = std::find(r.ids.begin(), r.ids.end(), n.get<std::string>());
      if (it == r.ids.end()) throw KeyError("unknown assumption id in report");
      m |= Subset{1} << (it - r.ids.begin());
    }
    r.minimal_relaxations.push_back(m);
  }
  const IdentifiedSet mrb = set_from_json(j.at("mrb"));
  r.mrb = mrb.as<SetUnion>();
  r.relaxation_sets = r.mrb.parts;
  const auto& f = j.at("flags");
  r.flags = {f.at("unique_minimal").get<bool>(), f.at("all_singleton").get<bool>(), f.at("no_nested_ok").get<bool>()};
  return r;
}

Json to_json(const DiscordanceCertificate& c, const AssumptionFamily& fam) {
  return Json{{"submodel_a", fam.names_of(c.submodel_a)},
              {"submodel_b", fam.names_of(c.submodel_b)},
              {"set_a", to_json(c.set_a)},
              {"set_b", to_json(c.set_b)}};
}

}  // namespace mrb
