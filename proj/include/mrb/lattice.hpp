#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mrb/set_json.hpp"
#include "mrb/setcore.hpp"

namespace mrb {

// Bit i set <=> the i-th assumption of the family is imposed.
using Subset = std::uint32_t;

inline constexpr std::size_t kLatticeBudget = 24;
// Exhaustive pair checks (custom oracles only) are limited to this many assumptions.
inline constexpr std::size_t kPairBudget = 12;

struct CustomOracle {
  std::function<IdentifiedSet(Subset)> set_of;
  // Optional exact consistency verdict; defaults to !is_empty(set_of(B)).
  std::function<bool(Subset)> consistent;
};

class AssumptionFamily {
 public:
  // Composition by intersection of atom sets inside `space` (whole space of the atoms' kind by default).
  static AssumptionFamily intersection(std::vector<std::string> ids, std::vector<IdentifiedSet> atoms,
                                       std::optional<IdentifiedSet> space = std::nullopt);
  static AssumptionFamily custom(std::vector<std::string> ids, CustomOracle oracle);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  bool intersection_rule() const { return !oracle_.has_value(); }
  const std::vector<IdentifiedSet>& atoms() const { return atoms_; }
  const IdentifiedSet& space() const { return space_; }
  Subset full() const { return ids_.size() == 32 ? ~Subset{0} : ((Subset{1} << ids_.size()) - 1); }

  Subset subset_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(Subset s) const;

  IdentifiedSet identified_set(Subset s) const;
  bool consistent(Subset s) const;

 private:
  std::vector<std::string> ids_;
  std::vector<IdentifiedSet> atoms_;
  IdentifiedSet space_;
  std::optional<CustomOracle> oracle_;
};

IdentifiedSet identified_set(const AssumptionFamily& fam, const std::vector<std::string>& names);

struct SmallestFlags {
  bool unique_minimal = false;
  bool all_singleton = false;
  bool no_nested_ok = false;
};

struct RelaxationReport {
  std::vector<std::string> ids;
  std::vector<Subset> minimal_relaxations;  // ascending bitmask order
  std::vector<IdentifiedSet> relaxation_sets;
  SetUnion mrb;
  bool full_model_refuted = false;
  SmallestFlags flags;
};

struct DiscordanceCertificate {
  Subset submodel_a = 0;
  Subset submodel_b = 0;
  IdentifiedSet set_a;
  IdentifiedSet set_b;
};

// Conditions under which a refuted family must contain discordant submodels.
struct DiscordanceConditions {
  bool some_refuted_set_of_consistent_atoms = false;
  bool intersection_composition = false;
};

// Literal definition check: B consistent and adding any missing assumption refutes it.
bool is_minimal_relaxation(const AssumptionFamily& fam, Subset b);

RelaxationReport find_minimal_relaxations(const AssumptionFamily& fam);
DiscordanceConditions check_discordance_conditions(const AssumptionFamily& fam);
std::optional<DiscordanceCertificate> find_discordance(const AssumptionFamily& fam);
bool is_nonconflicting(const AssumptionFamily& fam, const IdentifiedSet& statement);
SmallestFlags check_smallest_conditions(const AssumptionFamily& fam);

Json to_json(const RelaxationReport& r);
RelaxationReport relaxation_report_from_json(const Json& j);
Json to_json(const DiscordanceCertificate& c, const AssumptionFamily& fam);

// ---- falsification adaptive set for interval families with additive slack

enum class SlackDir { None, Lower, Upper, Both };

// Interval atoms [lower_i, upper_i] whose endpoints may be widened additively.
// Endpoints are kept raw so crossed (empty) atoms still carry their data.
struct SlackFamily {
  std::vector<std::string> ids;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<SlackDir> dirs;

  AssumptionFamily base() const;
  static SlackFamily from_family(const AssumptionFamily& fam, std::vector<SlackDir> dirs);
};

SlackDir slack_dir_from_string(const std::string& s);
std::string to_string(SlackDir d);

// Minimal slack vector (two entries per assumption: lower, upper) needed to admit theta;
// nullopt when a non-relaxable endpoint excludes theta.
std::optional<std::vector<double>> required_slack(const SlackFamily& sf, double theta);

// Exact set of theta whose required slack is Pareto-minimal.
Interval falsification_adaptive_set(const SlackFamily& sf);
// Same rule restricted to the candidate points of a grid.
GridSet falsification_adaptive_set_on_grid(const SlackFamily& sf, const std::vector<double>& axis);

}  // namespace mrb
