#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrb/artstein.hpp"
#include "mrb/lattice.hpp"
#include "mrb/moments.hpp"
#include "mrb/set_json.hpp"

namespace mrb {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // IngestError when absent
  bool has_column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text, const std::string& source = "<memory>");
Json read_json_file(const std::string& path);

// Counts of micro rows per instrument cell, keyed by cell label.
using CellCounts = std::vector<std::pair<std::string, std::size_t>>;

// ----------------------------------------------------------------- intersect

struct IntersectTarget {
  std::string label;
  BoundsMoments moments;
};

struct IntersectMicroOptions {
  // Treatment levels whose potential means are bounded. Empty means every observed level.
  std::vector<std::string> treatment_levels;
  std::optional<double> y_min;
  std::optional<double> y_max;
  // Lipschitz construction: bounds Y -+ |X - x| tau with numeric treatment values.
  std::optional<double> lipschitz_tau;
  std::size_t min_cell_count = 1;
  // Declared instrument support; a declared level without rows is a CellError.
  std::vector<std::string> z_levels;
};

struct IntersectInput {
  std::vector<IntersectTarget> targets;
  CellCounts counts;  // empty for aggregated input
  bool aggregated = false;
};

// Aggregated columns z,weight,lower_mean,upper_mean, or micro columns y,x,z.
IntersectInput ingest_intersect(const CsvTable& t, const IntersectMicroOptions& opt);

// ----------------------------------------------------------------- binary IV

struct BinaryIVInput {
  BinaryIVData data;
  CellCounts counts;
};

// Micro columns y,d,z with binary entries.
BinaryIVInput ingest_binary_iv_csv(const CsvTable& t);
// {"q":{"z0":[q11,q01,q10,q00],"z1":[...]}}
BinaryIVData binary_iv_from_json(const Json& j);

// ---------------------------------------------------------------------- AMIV

struct AMIVMicroOptions {
  std::optional<double> y0_min, y0_max, y1_min, y1_max;
  std::size_t min_cell_count = 1;
};

struct AMIVInput {
  AMIVMoments moments;
  std::vector<std::string> z_labels;  // instrument values in increasing order
  CellCounts counts;
};

// Micro columns y,d,z; instrument values are ordered numerically.
AMIVInput ingest_amiv_csv(const CsvTable& t, const AMIVMicroOptions& opt);
AMIVInput amiv_from_json(const Json& j);

// ------------------------------------------------------------- lattice family

struct FamilyInput {
  AssumptionFamily family;
  std::optional<SlackFamily> slack;
  std::vector<IdentifiedSet> statements;
  std::optional<double> grid_step;
};

FamilyInput family_from_json(const Json& j);

// ------------------------------------------------------------- artstein scenario

struct ScenarioInput {
  FiniteCapacityModel model;
  std::optional<EntryGameSpec> entry_game;
  std::vector<std::vector<std::uint32_t>> collections;
  std::string capacity_kind;  // "random_set", "vacuous" or "entry_game"
};

// `seed_override` replaces the scenario seed for simulated capacities.
ScenarioInput scenario_from_json(const Json& j, std::optional<std::uint64_t> seed_override);

}  // namespace mrb
