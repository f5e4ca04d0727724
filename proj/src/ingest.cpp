#include "mrb/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mrb/errors.hpp"

namespace mrb {
namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_record(const std::string& line, const std::string& source, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw IngestError(source + ":" + std::to_string(lineno) + ": unterminated quote");
  out.push_back(trim(cur));
  return out;
}

std::optional<double> try_number(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

double number_at(const CsvTable& t, std::size_t row, std::size_t col) {
  const auto& s = t.rows[row][col];
  auto v = try_number(s);
  if (!v || !std::isfinite(*v))
    throw IngestError("column '" + t.header[col] + "' row " + std::to_string(row + 1) + ": '" + s +
                      "' is not a finite number");
  return *v;
}

int binary_at(const CsvTable& t, std::size_t row, std::size_t col) {
  const double v = number_at(t, row, col);
  if (v != 0.0 && v != 1.0)
    throw IngestError("column '" + t.header[col] + "' row " + std::to_string(row + 1) + ": expected 0 or 1");
  return static_cast<int>(v);
}

void require_columns(const CsvTable& t, const std::vector<std::string>& cols, const std::string& schema) {
  for (const auto& c : cols)
    if (!t.has_column(c)) throw IngestError("schema " + schema + ": missing column '" + c + "'");
}

// Distinct labels ordered numerically when every label is a number, lexicographically otherwise.
std::vector<std::string> ordered_levels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const bool numeric = std::all_of(labels.begin(), labels.end(), [](const auto& s) { return try_number(s).has_value(); });
  if (numeric)
    std::stable_sort(labels.begin(), labels.end(),
                     [](const auto& a, const auto& b) { return *try_number(a) < *try_number(b); });
  return labels;
}

// Cell index per row, with declared levels, count checks, and CellError on empty cells.
struct Cells {
  std::vector<std::string> levels;
  std::vector<std::size_t> of_row;
  std::vector<std::size_t> count;
};

Cells assign_cells(const CsvTable& t, std::size_t zcol, const std::vector<std::string>& declared, std::size_t min_count) {
  Cells c;
  std::vector<std::string> seen;
  for (const auto& r : t.rows) seen.push_back(r[zcol]);
  c.levels = declared.empty() ? ordered_levels(seen) : declared;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < c.levels.size(); ++i) index[c.levels[i]] = i;
  c.count.assign(c.levels.size(), 0);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    auto it = index.find(t.rows[r][zcol]);
    if (it == index.end()) throw IngestError("row " + std::to_string(r + 1) + ": undeclared z level '" + t.rows[r][zcol] + "'");
    c.of_row.push_back(it->second);
    ++c.count[it->second];
  }
  for (std::size_t i = 0; i < c.levels.size(); ++i)
    if (c.count[i] < std::max<std::size_t>(min_count, 1))
      throw CellError("z cell '" + c.levels[i] + "' has " + std::to_string(c.count[i]) + " rows (minimum " +
                      std::to_string(std::max<std::size_t>(min_count, 1)) + ")");
  return c;
}

CellCounts counts_of(const Cells& c) {
  CellCounts out;
  for (std::size_t i = 0; i < c.levels.size(); ++i) out.emplace_back(c.levels[i], c.count[i]);
  return out;
}

std::vector<double> cell_weights(const Cells& c, std::size_t n) {
  std::vector<double> w;
  for (auto k : c.count) w.push_back(static_cast<double>(k) / static_cast<double>(n));
  return w;
}

template <class T>
T get_field(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw IngestError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(where + ": field '" + key + "' has the wrong type");
  }
}

std::vector<double> real_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw IngestError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number() && !v.is_string()) throw IngestError(where + ": expected numbers");
    out.push_back(real_from_json(v));
  }
  return out;
}

std::uint32_t outcome_mask(const Json& j, const std::vector<std::string>& support, const std::string& where) {
  if (!j.is_array()) throw IngestError(where + ": outcome sets are arrays of labels");
  std::uint32_t k = 0;
  for (const auto& v : j) {
    const auto label = v.get<std::string>();
    auto it = std::find(support.begin(), support.end(), label);
    if (it == support.end()) throw IngestError(where + ": unknown outcome label '" + label + "'");
    k |= std::uint32_t{1} << (it - support.begin());
  }
  if (k == 0) throw IngestError(where + ": outcome sets must be nonempty");
  return k;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw IngestError("missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

bool CsvTable::has_column(const std::string& name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

CsvTable parse_csv(const std::string& text, const std::string& source) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    auto rec = split_record(line, source, lineno);
    if (t.header.empty()) {
      t.header = std::move(rec);
      std::set<std::string> uniq(t.header.begin(), t.header.end());
      if (uniq.size() != t.header.size()) throw IngestError(source + ": duplicate column names in header");
      continue;
    }
    if (rec.size() != t.header.size())
      throw IngestError(source + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                        " fields, found " + std::to_string(rec.size()));
    t.rows.push_back(std::move(rec));
  }
  if (t.header.empty()) throw IngestError(source + ": no header row");
  return t;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IngestError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str(), path);
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IngestError("cannot open '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(path + ": invalid JSON (" + e.what() + ")");
  }
}

// ----------------------------------------------------------------- intersect

IntersectInput ingest_intersect(const CsvTable& t, const IntersectMicroOptions& opt) {
  IntersectInput in;
  if (t.has_column("lower_mean") || t.has_column("upper_mean") || t.has_column("weight")) {
    require_columns(t, {"z", "weight", "lower_mean", "upper_mean"}, "aggregated intersect");
    const auto cz = t.column("z"), cw = t.column("weight"), cl = t.column("lower_mean"), cu = t.column("upper_mean");
    std::vector<std::string> labels;
    std::vector<double> w, lo, hi;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      labels.push_back(t.rows[r][cz]);
      w.push_back(number_at(t, r, cw));
      if (!(w.back() > 0.0)) throw CellError("z cell '" + labels.back() + "' has zero weight");
      lo.push_back(number_at(t, r, cl));
      hi.push_back(number_at(t, r, cu));
    }
    if (labels.empty()) throw IngestError("aggregated intersect input has no rows");
    in.aggregated = true;
    in.targets.push_back({"theta", BoundsMoments::make(labels, w, lo, hi)});
    return in;
  }

  require_columns(t, {"y", "x", "z"}, "micro intersect");
  if (t.rows.empty()) throw IngestError("micro intersect input has no rows");
  const auto cy = t.column("y"), cx = t.column("x"), cz = t.column("z");
  const bool lipschitz = opt.lipschitz_tau.has_value();
  if (!lipschitz && !(opt.y_min && opt.y_max))
    throw IngestError("micro intersect input needs --y-min and --y-max, or --lipschitz-tau");
  if (lipschitz && !(*opt.lipschitz_tau >= 0.0)) throw IngestError("--lipschitz-tau must be nonnegative");
  if (!lipschitz && *opt.y_min > *opt.y_max) throw IngestError("--y-min exceeds --y-max");

  const Cells cells = assign_cells(t, cz, opt.z_levels, opt.min_cell_count);
  in.counts = counts_of(cells);
  std::vector<double> y(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    y[r] = number_at(t, r, cy);
    if (!lipschitz && (y[r] < *opt.y_min || y[r] > *opt.y_max))
      throw IngestError("column 'y' row " + std::to_string(r + 1) + ": outside [--y-min, --y-max]");
  }
  std::vector<std::string> targets = opt.treatment_levels;
  if (targets.empty()) {
    std::vector<std::string> xs;
    for (const auto& row : t.rows) xs.push_back(row[cx]);
    targets = ordered_levels(xs);
  }
  const auto w = cell_weights(cells, t.rows.size());
  for (const auto& target : targets) {
    std::optional<double> xt;
    if (lipschitz) {
      xt = try_number(target);
      if (!xt) throw IngestError("treatment level '" + target + "' must be numeric with --lipschitz-tau");
    }
    std::vector<double> lo(cells.levels.size(), 0.0), hi(cells.levels.size(), 0.0);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      double l, u;
      if (lipschitz) {
        const double dist = std::fabs(number_at(t, r, cx) - *xt) * *opt.lipschitz_tau;
        l = y[r] - dist;
        u = y[r] + dist;
      } else {
        const bool at = t.rows[r][cx] == target;
        l = at ? y[r] : *opt.y_min;
        u = at ? y[r] : *opt.y_max;
      }
      lo[cells.of_row[r]] += l;
      hi[cells.of_row[r]] += u;
    }
    for (std::size_t z = 0; z < cells.levels.size(); ++z) {
      lo[z] /= static_cast<double>(cells.count[z]);
      hi[z] /= static_cast<double>(cells.count[z]);
    }
    in.targets.push_back({"theta[" + target + "]", BoundsMoments::make(cells.levels, w, lo, hi)});
  }
  return in;
}

// ----------------------------------------------------------------- binary IV

BinaryIVInput ingest_binary_iv_csv(const CsvTable& t) {
  require_columns(t, {"y", "d", "z"}, "micro binary-iv");
  const auto cy = t.column("y"), cd = t.column("d"), cz = t.column("z");
  std::array<std::array<std::array<std::size_t, 2>, 2>, 2> n{};
  std::array<std::size_t, 2> nz{};
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const int y = binary_at(t, r, cy), d = binary_at(t, r, cd), z = binary_at(t, r, cz);
    ++n[y][d][z];
    ++nz[z];
  }
  for (int z = 0; z < 2; ++z)
    if (nz[z] == 0) throw CellError("z cell '" + std::to_string(z) + "' has 0 rows");
  std::array<std::array<double, 4>, 2> cells{};
  for (int z = 0; z < 2; ++z) {
    const double m = static_cast<double>(nz[z]);
    cells[z] = {n[1][1][z] / m, n[0][1][z] / m, n[1][0][z] / m, n[0][0][z] / m};
  }
  return {BinaryIVData::make(cells[0], cells[1]), {{"0", nz[0]}, {"1", nz[1]}}};
}

BinaryIVData binary_iv_from_json(const Json& j) {
  if (!j.contains("q")) throw IngestError("binary-iv JSON: missing field 'q'");
  const auto& q = j.at("q");
  auto cell = [&](const char* key) {
    const auto v = real_list(get_field<Json>(q, key, "binary-iv JSON q"), std::string("q.") + key);
    if (v.size() != 4) throw IngestError(std::string("binary-iv JSON: q.") + key + " needs four entries");
    return std::array<double, 4>{v[0], v[1], v[2], v[3]};
  };
  return BinaryIVData::make(cell("z0"), cell("z1"));
}

// ---------------------------------------------------------------------- AMIV

AMIVInput ingest_amiv_csv(const CsvTable& t, const AMIVMicroOptions& opt) {
  require_columns(t, {"y", "d", "z"}, "micro amiv");
  if (!(opt.y0_min && opt.y0_max && opt.y1_min && opt.y1_max))
    throw IngestError("micro amiv input needs --y0-min, --y0-max, --y1-min and --y1-max");
  const std::array<double, 2> ylo{*opt.y0_min, *opt.y1_min}, yhi{*opt.y0_max, *opt.y1_max};
  for (int d = 0; d < 2; ++d)
    if (ylo[d] > yhi[d]) throw IngestError("outcome support bounds are reversed for d=" + std::to_string(d));
  const auto cy = t.column("y"), cd = t.column("d"), cz = t.column("z");
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    if (!try_number(t.rows[r][cz])) throw IngestError("column 'z' row " + std::to_string(r + 1) + ": instrument values must be numeric");
  const Cells cells = assign_cells(t, cz, {}, opt.min_cell_count);
  const std::size_t k = cells.levels.size();
  std::array<std::vector<double>, 2> lo{std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
  std::array<std::vector<double>, 2> hi = lo;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double y = number_at(t, r, cy);
    const int dr = binary_at(t, r, cd);
    if (y < ylo[dr] || y > yhi[dr])
      throw IngestError("column 'y' row " + std::to_string(r + 1) + ": outside the declared support for d=" +
                        std::to_string(dr));
    for (int d = 0; d < 2; ++d) {
      lo[d][cells.of_row[r]] += dr == d ? y : ylo[d];
      hi[d][cells.of_row[r]] += dr == d ? y : yhi[d];
    }
  }
  for (int d = 0; d < 2; ++d)
    for (std::size_t z = 0; z < k; ++z) {
      lo[d][z] /= static_cast<double>(cells.count[z]);
      hi[d][z] /= static_cast<double>(cells.count[z]);
    }
  AMIVInput in;
  in.moments = AMIVMoments::make(cell_weights(cells, t.rows.size()), lo, hi, ylo, yhi);
  in.z_labels = cells.levels;
  in.counts = counts_of(cells);
  return in;
}

AMIVInput amiv_from_json(const Json& j) {
  const std::string where = "amiv JSON";
  const auto w = real_list(get_field<Json>(j, "z_weights", where), "z_weights");
  auto per_d = [&](const char* key) {
    const auto obj = get_field<Json>(j, key, where);
    return std::array<std::vector<double>, 2>{real_list(get_field<Json>(obj, "d0", where), std::string(key) + ".d0"),
                                              real_list(get_field<Json>(obj, "d1", where), std::string(key) + ".d1")};
  };
  const auto ql = per_d("q_lower"), qu = per_d("q_upper"), ys = per_d("y_support");
  for (int d = 0; d < 2; ++d)
    if (ys[d].size() != 2) throw IngestError("amiv JSON: y_support entries are [lower, upper] pairs");
  AMIVInput in;
  in.moments = AMIVMoments::make(w, ql, qu, {ys[0][0], ys[1][0]}, {ys[0][1], ys[1][1]});
  if (j.contains("z_labels")) {
    in.z_labels = j.at("z_labels").get<std::vector<std::string>>();
    if (in.z_labels.size() != w.size()) throw IngestError("amiv JSON: z_labels length differs from z_weights");
  } else {
    for (std::size_t z = 1; z <= w.size(); ++z) in.z_labels.push_back(std::to_string(z));
  }
  return in;
}

// ------------------------------------------------------------- lattice family

FamilyInput family_from_json(const Json& j) {
  const std::string where = "family JSON";
  std::optional<double> step;
  if (j.contains("grid_step")) step = real_from_json(j.at("grid_step"));
  std::vector<IdentifiedSet> statements;
  if (j.contains("statements"))
    for (const auto& s : j.at("statements")) statements.push_back(set_from_json(s));

  // Raw interval endpoints with slack directions (crossed atoms allowed).
  if (j.contains("slack") && j.at("slack").is_object()) {
    const auto& s = j.at("slack");
    SlackFamily sf;
    sf.ids = get_field<std::vector<std::string>>(j, "ids", where);
    sf.lower = real_list(get_field<Json>(s, "lower", where), "slack.lower");
    sf.upper = real_list(get_field<Json>(s, "upper", where), "slack.upper");
    for (const auto& d : get_field<std::vector<std::string>>(s, "dirs", where)) sf.dirs.push_back(slack_dir_from_string(d));
    auto fam = sf.base();
    return {std::move(fam), std::move(sf), std::move(statements), step};
  }

  auto ids = get_field<std::vector<std::string>>(j, "ids", where);
  std::vector<IdentifiedSet> atoms;
  for (const auto& a : get_field<Json>(j, "atoms", where)) atoms.push_back(set_from_json(a));
  std::optional<IdentifiedSet> space;
  if (j.contains("space")) space = set_from_json(j.at("space"));
  auto fam = AssumptionFamily::intersection(std::move(ids), std::move(atoms), std::move(space));
  std::optional<SlackFamily> slack;
  if (j.contains("slack")) {
    std::vector<SlackDir> dirs;
    for (const auto& d : j.at("slack").get<std::vector<std::string>>()) dirs.push_back(slack_dir_from_string(d));
    slack = SlackFamily::from_family(fam, std::move(dirs));
  }
  return {std::move(fam), std::move(slack), std::move(statements), step};
}

// ------------------------------------------------------------- artstein scenario

ScenarioInput scenario_from_json(const Json& j, std::optional<std::uint64_t> seed_override) {
  const std::string where = "scenario JSON";
  const auto cap = get_field<Json>(j, "capacity", where);
  ScenarioInput in;
  in.capacity_kind = get_field<std::string>(cap, "kind", "scenario capacity");
  const auto x_support = get_field<std::vector<std::string>>(j, "x_support", where);
  std::vector<std::vector<double>> p;
  for (const auto& row : get_field<Json>(j, "p_y_given_x", where)) p.push_back(real_list(row, "p_y_given_x"));

  std::vector<std::vector<double>> axes;
  const auto grid = get_field<Json>(j, "theta_grid", where);
  if (grid.contains("axes")) {
    for (const auto& a : grid.at("axes")) axes.push_back(real_list(a, "theta_grid.axes"));
  } else {
    const auto lo = real_list(get_field<Json>(grid, "lower", where), "theta_grid.lower");
    const auto hi = real_list(get_field<Json>(grid, "upper", where), "theta_grid.upper");
    const std::size_t n = grid.contains("points") ? grid.at("points").get<std::size_t>() : 50;
    axes = make_axes(lo, hi, n);
  }
  const std::uint64_t seed = seed_override ? *seed_override : j.value("seed", std::uint64_t{0});

  if (in.capacity_kind == "entry_game") {
    EntryGameSpec spec;
    const auto g = real_list(get_field<Json>(cap, "gamma", "entry_game"), "gamma");
    const auto d = real_list(get_field<Json>(cap, "delta", "entry_game"), "delta");
    if (g.size() != 2 || d.size() != 2) throw IngestError("entry_game: gamma and delta need two entries");
    spec.gamma = {g[0], g[1]};
    spec.delta = {d[0], d[1]};
    spec.beta = cap.contains("beta") ? real_from_json(cap.at("beta")) : 0.0;
    if (cap.contains("sigma")) {
      const auto& s = cap.at("sigma");
      for (int r = 0; r < 2; ++r) {
        const auto row = real_list(s.at(r), "sigma");
        if (row.size() != 2) throw IngestError("entry_game: sigma must be 2x2");
        spec.sigma[r] = {row[0], row[1]};
      }
    }
    spec.x_labels = x_support;
    if (cap.contains("x_values")) {
      for (const auto& v : cap.at("x_values")) {
        const auto xv = real_list(v, "x_values");
        if (xv.size() != 2) throw IngestError("entry_game: x_values entries are per-player pairs");
        spec.x_values.push_back({xv[0], xv[1]});
      }
    } else {
      spec.x_values.assign(x_support.size(), {0.0, 0.0});
    }
    spec.mc_draws = cap.value("mc_draws", std::size_t{100000});
    spec.seed = seed;
    std::vector<EntryParam> params;
    for (const auto& s : get_field<std::vector<std::string>>(cap, "params", "entry_game"))
      params.push_back(entry_param_from_string(s));
    in.model = entry_game_model(spec, params, axes, p);
    in.entry_game = spec;
  } else if (in.capacity_kind == "random_set") {
    const auto y_support = get_field<std::vector<std::string>>(j, "y_support", where);
    RandomSetSpec rs;
    for (const auto& s : get_field<Json>(cap, "sets", "random_set")) rs.sets.push_back(outcome_mask(s, y_support, "random_set.sets"));
    for (const auto& c : get_field<Json>(cap, "coeffs", "random_set")) rs.coeffs.push_back(real_list(c, "random_set.coeffs"));
    for (const auto& c : rs.coeffs)
      if (c.size() != axes.size() + 1) throw IngestError("random_set: each coefficient row needs 1 + dim(theta) entries");
    in.model = random_set_model(y_support, x_support, p, rs, axes);
  } else if (in.capacity_kind == "vacuous") {
    in.model.y_support = get_field<std::vector<std::string>>(j, "y_support", where);
    in.model.x_support = x_support;
    in.model.p_y_given_x = p;
    in.model.theta_axes = axes;
    in.model.capacity = [](std::uint32_t, std::size_t, std::span<const double>) { return CapacityValue{1.0, 0.0}; };
  } else {
    throw IngestError("scenario capacity kind must be random_set, vacuous or entry_game");
  }
  in.model.validate();
  if (j.contains("collections"))
    for (const auto& c : j.at("collections")) {
      std::vector<std::uint32_t> ks;
      for (const auto& k : c) ks.push_back(outcome_mask(k, in.model.y_support, "collections"));
      in.collections.push_back(std::move(ks));
    }
  return in;
}

}  // namespace mrb
