#include "mrb/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "CLI11.hpp"
#include "mrb/artstein.hpp"
#include "mrb/binary_iv.hpp"
#include "mrb/errors.hpp"
#include "mrb/intersect.hpp"
#include "mrb/lattice.hpp"
#include "mrb/oracles.hpp"

namespace mrb {
namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Json counts_json(const CellCounts& c) {
  Json out = Json::array();
  for (const auto& [z, n] : c) out.push_back({{"z", z}, {"count", n}});
  return out;
}

Json mass_json(const MassConditions& c) {
  return {{"lower_le_gamma_upper", c.lower_le_gamma_upper},
          {"upper_ge_gamma_lower", c.upper_ge_gamma_lower},
          {"upper_at_gamma_upper", c.upper_at_gamma_upper},
          {"lower_at_gamma_lower", c.lower_at_gamma_lower}};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

double grid_volume(const GridSet& g) { return g.size() ? static_cast<double>(g.count()) / static_cast<double>(g.size()) : 0.0; }

// Grid disagreement count between two masks over the same axes.
std::size_t mask_disagreements(const GridSet& a, const GridSet& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += (a.mask()[i] != 0) != (b.mask()[i] != 0);
  return n;
}

}  // namespace

// ------------------------------------------------------------------ intersect

Report run_intersect(const std::string& input, const IntersectMicroOptions& opt, bool oracle) {
  const auto in = ingest_intersect(read_csv(input), opt);
  Report r;
  r.json = report_header("intersect");
  r.json["input"] = {{"kind", in.aggregated ? "aggregated" : "micro"}, {"cells", counts_json(in.counts)}};
  Json targets = Json::array();
  std::vector<std::vector<std::string>> rows;
  bool any_refuted = false;
  for (const auto& t : in.targets) {
    const auto b = sharp_bounds(t.moments);
    const auto mc = mass_conditions(t.moments);
    const auto mrb = mrb_intersection(t.moments);
    any_refuted |= b.refuted;
    Json tj{{"label", t.label},
            {"z", t.moments.z_labels},
            {"weights", t.moments.weights},
            {"lower_mean", t.moments.lower_mean},
            {"upper_mean", t.moments.upper_mean},
            {"gamma_lower", real_to_json(b.gamma_lower)},
            {"gamma_upper", real_to_json(b.gamma_upper)},
            {"refuted", b.refuted},
            {"mrb", to_json(mrb)},
            {"flags", mass_json(mc)}};
    std::string w_cell = "-";
    if (b.refuted) {
      const auto w = pointid_region(t.moments);
      tj["pointid_region"] = to_json(w);
      w_cell = interval_cell(w);
    }
    if (oracle) {
      const double lo = *std::min_element(t.moments.lower_mean.begin(), t.moments.lower_mean.end());
      const double hi = *std::max_element(t.moments.upper_mean.begin(), t.moments.upper_mean.end());
      const auto axis = make_axis_step(lo, hi, std::max((hi - lo) / 200.0, 1e-9));
      const auto brute = oracle::intersection_idset(t.moments, axis);
      const auto closed = evaluate_on_grid(
          IdentifiedSet(b.refuted ? Interval::empty() : Interval::closed(b.gamma_lower, b.gamma_upper)), {axis});
      Json oj{{"idset_grid_points", axis.size()}, {"idset_grid_disagreements", mask_disagreements(brute, closed)}};
      if (b.refuted) {
        oracle::OracleConfig cfg;
        const auto sweep = oracle::mrb_by_instrument_sweep(t.moments, cfg);
        const auto& ax = sweep.axes()[0];
        double s_lo = INFINITY, s_hi = -INFINITY;
        for (std::size_t i = 0; i < sweep.size(); ++i)
          if (sweep.mask()[i]) {
            s_lo = std::min(s_lo, ax[i]);
            s_hi = std::max(s_hi, ax[i]);
          }
        const double step = ax.size() > 1 ? ax[1] - ax[0] : 0.0;
        oj["sweep_hull"] = {real_to_json(s_lo), real_to_json(s_hi)};
        oj["sweep_step"] = step;
        oj["sweep_agrees"] = std::fabs(s_lo - mrb.lo()) <= 2 * step + 1e-12 && std::fabs(s_hi - mrb.hi()) <= 2 * step + 1e-12;
      }
      tj["oracle"] = oj;
    }
    targets.push_back(tj);
    rows.push_back({t.label, number_cell(b.gamma_lower), number_cell(b.gamma_upper), yes_no(b.refuted),
                    interval_cell(mrb), w_cell});
  }
  r.json["targets"] = targets;
  r.json["refuted"] = any_refuted;
  r.markdown = "# Intersection bounds\n\n" +
               markdown_table({"target", "gamma_lower", "gamma_upper", "refuted", "MRB", "point-identified region"}, rows);
  r.exit_code = any_refuted ? kExitRefuted : kExitOk;
  return r;
}

// ------------------------------------------------------------------ binary IV

Report run_binary_iv(const std::string& input, bool oracle) {
  BinaryIVData d;
  CellCounts counts;
  if (ends_with(input, ".json")) {
    d = binary_iv_from_json(read_json_file(input));
  } else {
    auto in = ingest_binary_iv_csv(read_csv(input));
    d = in.data;
    counts = std::move(in.counts);
  }
  const auto res = mrb_binary_iv(d);
  const bool refuted = res.selected.row != 1;
  Report r;
  r.json = report_header("binary-iv");
  r.json["data"] = {{"q", {{"z0", d.cell(0)}, {"z1", d.cell(1)}}}, {"cells", counts_json(counts)}};
  Json ineq = Json::array();
  std::vector<std::vector<std::string>> irows;
  for (const auto& q : res.inequalities) {
    ineq.push_back({{"index", q.index}, {"lhs", q.lhs}, {"slack", q.slack}, {"pass", q.pass}});
    irows.push_back({"II" + std::to_string(q.index), number_cell(q.lhs), number_cell(q.slack), q.pass ? "pass" : "fail"});
  }
  r.json["inequalities"] = ineq;
  r.json["refuted"] = refuted;
  std::vector<std::string> dropped;
  for (int k = 0; k < 5; ++k)
    if (!((res.selected.combo >> k) & 1)) dropped.push_back("a" + std::to_string(k + 1));
  r.json["case"] = {{"row", res.selected.row}, {"retained", combo_name(res.selected.combo)}, {"dropped", dropped}};
  r.json["set"] = to_json(IdentifiedSet(res.set));
  const char* names[4] = {"theta11", "theta10", "theta01", "theta00"};
  Json proj;
  std::vector<std::vector<std::string>> prow;
  for (std::size_t a = 0; a < 4; ++a) {
    const auto iv = res.set.project(a);
    proj[names[a]] = to_json(iv);
    prow.push_back({names[a], interval_cell(iv)});
  }
  r.json["projections"] = proj;
  Json acde = Json::array();
  std::vector<std::vector<std::string>> arows;
  for (const auto& s : res.acde) {
    Json a{{"d", s.d}, {"direction", s.direction}};
    a["lower_bound"] = s.lower_bound ? Json(*s.lower_bound) : Json(nullptr);
    a["upper_bound"] = s.upper_bound ? Json(*s.upper_bound) : Json(nullptr);
    acde.push_back(a);
    arows.push_back({std::to_string(s.d), s.direction, s.lower_bound ? number_cell(*s.lower_bound) : "-",
                     s.upper_bound ? number_cell(*s.upper_bound) : "-"});
  }
  r.json["acde"] = acde;
  if (oracle) {
    const auto axis = make_axis_step(0.0, 1.0, 0.05);
    const auto brute = oracle::binaryiv_grid(d, res.selected.combo, axis);
    const auto closed = evaluate_on_grid(IdentifiedSet(res.set), {axis, axis, axis, axis});
    const auto fam = binary_iv_family(d, [&](BivCombo c) { return oracle::binaryiv_consistent(d, c); });
    const auto rel = find_minimal_relaxations(fam);
    Json lattice_rows = Json::array();
    for (auto s : rel.minimal_relaxations) lattice_rows.push_back(combo_name(static_cast<BivCombo>(kA1 | (s << 1))));
    r.json["oracle"] = {{"independence", oracle::to_string(oracle::BivIndependence::PerOutcome)},
                        {"grid_step", 0.05},
                        {"grid_points", brute.size()},
                        {"grid_disagreements", mask_disagreements(brute, closed)},
                        {"lattice_minimal_relaxations", lattice_rows}};
  }
  r.markdown = "# Binary IV\n\n## Instrumental inequalities\n\n" +
               markdown_table({"inequality", "lhs", "slack", "status"}, irows) + "\n## Selected case\n\nRow " +
               std::to_string(res.selected.row) + ", retained assumptions " + combo_name(res.selected.combo) +
               "\n\n## Identified set projections\n\n" + markdown_table({"parameter", "bounds"}, prow) +
               "\n## ACDE statements\n\n" + markdown_table({"d", "direction", "lower bound", "upper bound"}, arows);
  r.exit_code = refuted ? kExitRefuted : kExitOk;
  return r;
}

// ----------------------------------------------------------------------- AMIV

namespace {

Json amiv_result_json(const AMIVResult& res, const std::vector<std::string>& z_labels) {
  Json out;
  out["mode"] = res.mode == CutoffMode::Joint ? "joint" : "per_outcome";
  for (int d : {1, 0}) {
    const int s = amiv_slot(d);
    Json members = Json::array();
    for (std::size_t z = 0; z < res.star[s].size(); ++z)
      if (res.star[s][z]) members.push_back(z_labels[z]);
    const std::string key = "d" + std::to_string(d);
    out["star_members"][key] = members;
    out["z_star"][key] = res.z_star[s] ? Json(z_labels[*res.z_star[s] - 1]) : Json(nullptr);
    out["fallback"][key] = res.fallback[s];
    out["gamma"][key] = to_json(res.mrb[s]);
  }
  out["mrb"] = to_json(IdentifiedSet(res.mrb_box()));
  out["mi"] = to_json(IdentifiedSet(res.mi_box()));
  out["miv"] = to_json(IdentifiedSet(res.miv_box()));
  return out;
}

}  // namespace

Report run_amiv(const std::string& input, const AMIVMicroOptions& opt, CutoffMode mode, bool oracle) {
  const AMIVInput in = ends_with(input, ".json") ? amiv_from_json(read_json_file(input)) : ingest_amiv_csv(read_csv(input), opt);
  const auto& m = in.moments;
  const auto joint = amiv_mrb(m, CutoffMode::Joint);
  const auto per = amiv_mrb(m, CutoffMode::PerOutcome);
  const auto& primary = mode == CutoffMode::Joint ? joint : per;
  const bool refuted = mode == CutoffMode::Joint ? !amiv_star_membership(m, 1)
                                                 : !(amiv_star_membership(m, 1, 1) && amiv_star_membership(m, 1, 0));
  Report r;
  r.json = report_header("amiv");
  r.json["input"] = {{"z", in.z_labels},
                     {"z_weights", m.z_weights},
                     {"q_lower", {{"d0", m.q_lower[0]}, {"d1", m.q_lower[1]}}},
                     {"q_upper", {{"d0", m.q_upper[0]}, {"d1", m.q_upper[1]}}},
                     {"cells", counts_json(in.counts)}};
  r.json["mode"] = mode == CutoffMode::Joint ? "joint" : "per_outcome";
  r.json["refuted"] = refuted;
  r.json["result"] = amiv_result_json(primary, in.z_labels);
  r.json["joint"] = amiv_result_json(joint, in.z_labels);
  r.json["per_outcome"] = amiv_result_json(per, in.z_labels);

  // Columns of the comparison table: MI, AMIV joint, AMIV per outcome, MIV.
  const std::array<std::pair<std::string, const std::array<Interval, 2>*>, 4> cols{{
      {"MI", &joint.mi}, {"AMIV (joint)", &joint.mrb}, {"AMIV (per outcome)", &per.mrb}, {"MIV", &joint.miv}}};
  Json ate;
  std::vector<std::string> r1{"theta1 = E[Y1]"}, r0{"theta0 = E[Y0]"}, ra{"ATE = theta1 - theta0"};
  for (const auto& [name, iv] : cols) {
    const auto diff = interval_difference((*iv)[0], (*iv)[1]);
    ate[name] = to_json(diff);
    r1.push_back(interval_cell((*iv)[0]));
    r0.push_back(interval_cell((*iv)[1]));
    ra.push_back(interval_cell(diff));
  }
  r.json["ate"] = {{"rule", "interval difference [theta1.lo - theta0.hi, theta1.hi - theta0.lo]"}, {"columns", ate}};

  if (oracle) {
    Json oj;
    if (m.k <= 3) {
      for (int d : {1, 0}) {
        const int s = amiv_slot(d);
        const std::size_t zs = primary.z_star[s] ? *primary.z_star[s] : 0;
        const std::string key = "d" + std::to_string(d);
        if (!zs) {
          oj[key] = {{"skipped", "no retained cutoff"}};
          continue;
        }
        const double step = 0.01;
        const auto b = oracle::amiv_bounds(m, zs, step)[d];
        Json e{{"z_star", zs}, {"step", step}};
        if (b) {
          e["bounds"] = to_json(*b);
          e["agrees"] = std::fabs(b->lo() - primary.mrb[s].lo()) <= step + 1e-9 &&
                        std::fabs(b->hi() - primary.mrb[s].hi()) <= step + 1e-9;
        } else {
          e["bounds"] = nullptr;
          e["agrees"] = false;
        }
        oj[key] = e;
      }
    } else {
      oj["skipped"] = "enumeration oracle limited to k <= 3";
    }
    r.json["oracle"] = oj;
  }

  std::string star_lines;
  for (int d : {1, 0}) {
    const int s = amiv_slot(d);
    star_lines += "- d=" + std::to_string(d) + ": z* = " +
                  (primary.z_star[s] ? in.z_labels[*primary.z_star[s] - 1] : std::string("none (fallback)")) + "\n";
  }
  r.markdown = "# AMIV bounds\n\nCutoff mode: " + std::string(mode == CutoffMode::Joint ? "joint" : "per outcome") +
               "\n\n" + star_lines + "\n" +
               markdown_table({"", "MI", "AMIV (joint)", "AMIV (per outcome)", "MIV"}, {r1, r0, ra}) +
               "\nATE intervals are interval differences of the theta1 and theta0 rows.\n";
  r.exit_code = refuted ? kExitRefuted : kExitOk;
  return r;
}

// -------------------------------------------------------------------- lattice

Report run_lattice(const std::string& family_path, bool oracle) {
  const auto in = family_from_json(read_json_file(family_path));
  const auto& fam = in.family;
  const auto rel = find_minimal_relaxations(fam);
  Report r;
  r.json = report_header("lattice");
  r.json["relaxation"] = to_json(rel);
  r.json["refuted"] = rel.full_model_refuted;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < rel.minimal_relaxations.size(); ++i) {
    std::string names;
    for (const auto& n : fam.names_of(rel.minimal_relaxations[i])) names += (names.empty() ? "" : ", ") + n;
    rows.push_back({"{" + names + "}", set_cell(rel.relaxation_sets[i])});
  }
  std::string md = "# Assumption lattice\n\nFull model refuted: " + yes_no(rel.full_model_refuted) + "\n\n" +
                   markdown_table({"minimal relaxation", "identified set"}, rows) +
                   "\nMRB: " + set_cell(IdentifiedSet(rel.mrb)) + "\n";
  if (rel.full_model_refuted) {
    if (auto cert = find_discordance(fam)) {
      r.json["discordance"] = to_json(*cert, fam);
    } else {
      r.json["discordance"] = nullptr;
    }
  }
  if (in.slack) {
    const auto fas = falsification_adaptive_set(*in.slack);
    r.json["falsification_adaptive_set"] = to_json(fas);
    md += "\nFalsification adaptive set: " + interval_cell(fas) + "\n";
    if (in.grid_step) {
      double lo = INFINITY, hi = -INFINITY;
      for (std::size_t i = 0; i < in.slack->lower.size(); ++i) {
        lo = std::min({lo, in.slack->lower[i], in.slack->upper[i]});
        hi = std::max({hi, in.slack->lower[i], in.slack->upper[i]});
      }
      const auto axis = make_axis_step(lo, hi, *in.grid_step);
      r.json["falsification_adaptive_set_grid"] = to_json(IdentifiedSet(falsification_adaptive_set_on_grid(*in.slack, axis)));
    }
  }
  if (!in.statements.empty()) {
    Json st = Json::array();
    for (const auto& s : in.statements) st.push_back({{"set", to_json(s)}, {"nonconflicting", is_nonconflicting(fam, s)}});
    r.json["statements"] = st;
  }
  r.json["flags_checked"] = {{"unique_minimal", rel.flags.unique_minimal},
                             {"all_singleton", rel.flags.all_singleton},
                             {"no_nested_ok", rel.flags.no_nested_ok}};
  if (oracle) {
    // Literal definition check over every subset.
    std::vector<Subset> brute;
    for (Subset s = 0; s <= fam.full(); ++s) {
      if (is_minimal_relaxation(fam, s)) brute.push_back(s);
      if (s == fam.full()) break;
    }
    if (!rel.full_model_refuted) brute = {fam.full()};
    r.json["oracle"] = {{"definition_scan_agrees", brute == rel.minimal_relaxations}};
  }
  r.markdown = md;
  r.exit_code = rel.full_model_refuted ? kExitRefuted : kExitOk;
  return r;
}

// ------------------------------------------------------------------- artstein

Report run_artstein(const std::string& scenario_path, std::optional<std::uint64_t> seed, bool oracle) {
  const auto in = scenario_from_json(read_json_file(scenario_path), seed);
  const auto& model = in.model;
  const auto sharp = sharp_set(model);
  const bool refuted = sharp.is_empty();
  Report r;
  r.json = report_header("artstein");
  r.json["capacity"] = in.capacity_kind;
  if (in.entry_game) {
    const auto& g = *in.entry_game;
    r.json["entry_game"] = {{"gamma", g.gamma}, {"beta", g.beta},         {"delta", g.delta},
                            {"sigma", g.sigma}, {"x_values", g.x_values}, {"mc_draws", g.mc_draws},
                            {"seed", g.seed}};
  }
  r.json["y_support"] = model.y_support;
  r.json["x_support"] = model.x_support;
  r.json["sharp_set"] = to_json(IdentifiedSet(sharp));
  r.json["sharp_volume"] = grid_volume(sharp);
  r.json["refuted"] = refuted;
  std::vector<std::vector<std::string>> rows{{"all nonempty K", std::to_string(sharp.count()), number_cell(grid_volume(sharp))}};
  Json outer = Json::array();
  for (const auto& c : in.collections) {
    const auto g = outer_set_for_collection(model, c);
    Json labels = Json::array();
    std::string text;
    for (auto k : c) {
      const auto l = restriction_label(model, {k, std::nullopt});
      labels.push_back(l);
      text += (text.empty() ? "" : " ") + l;
    }
    outer.push_back({{"collection", labels}, {"set", to_json(IdentifiedSet(g))}, {"volume", grid_volume(g)}});
    rows.push_back({text, std::to_string(g.count()), number_cell(grid_volume(g))});
  }
  r.json["outer_sets"] = outer;
  const auto checks = capacity_prechecks(model);
  r.json["prechecks"] = {{"positive_probabilities", checks.positive_probabilities},
                            {"saturation", checks.saturation},
                            {"notes", checks.notes}};
  std::string md = "# Artstein inequalities\n\n" + markdown_table({"collection", "grid points kept", "volume"}, rows);
  if (refuted) {
    const auto search = find_discordant_collections(model);
    if (search.found) {
      auto side = [&](const std::vector<KRestriction>& rs, const GridSet& g) {
        Json l = Json::array();
        for (const auto& x : rs) l.push_back(restriction_label(model, x));
        return Json{{"restrictions", l}, {"set", to_json(IdentifiedSet(g))}};
      };
      r.json["discordance"] = {{"first", side(search.found->first, search.found->set_first)},
                               {"second", side(search.found->second, search.found->set_second)}};
      md += "\nDiscordant collections found.\n";
    } else {
      r.json["discordance"] = nullptr;
      r.json["diagnostic"] = search.diagnostic;
      md += "\n" + search.diagnostic + "\n";
    }
  }
  if (oracle && model.random_set) {
    const auto brute = oracle::random_set_sharp_set(model);
    r.json["oracle"] = {{"selectionability_disagreements", mask_disagreements(brute, sharp)}};
  }
  r.markdown = md;
  r.exit_code = refuted ? kExitRefuted : kExitOk;
  return r;
}

// ------------------------------------------------------------------------ CLI

int run_cli(int argc, char** argv) {
  CLI::App app{"Minimum-relaxation bounds for refuted partially identified models"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string report_path = "-";
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  bool oracle = false;
  app.add_option("--report", report_path, "Report output path ('-' for stdout)");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "markdown"}));
  app.add_option("--seed", seed, "Seed for simulated quantities");
  app.add_flag("--oracle", oracle, "Add brute-force oracle cross-checks to the report");

  std::string input;
  IntersectMicroOptions iopt;
  std::vector<std::string> z_levels;
  auto* intersect = app.add_subcommand("intersect", "Intersection bounds from a CSV of moments or micro rows");
  intersect->add_option("input", input, "CSV input")->required();
  intersect->add_option("--y-min", iopt.y_min, "Lower support bound of the outcome");
  intersect->add_option("--y-max", iopt.y_max, "Upper support bound of the outcome");
  intersect->add_option("--treatment-levels", iopt.treatment_levels, "Treatment levels to bound")->delimiter(',');
  intersect->add_option("--lipschitz-tau", iopt.lipschitz_tau, "Lipschitz constant for smooth treatment bounds");
  intersect->add_option("--z-levels", iopt.z_levels, "Declared instrument support")->delimiter(',');
  intersect->add_option("--min-cell-count", iopt.min_cell_count, "Minimum rows per instrument cell");

  auto* biv = app.add_subcommand("binary-iv", "Binary instrument and treatment bounds");
  biv->add_option("input", input, "JSON cell probabilities or CSV micro rows (y,d,z)")->required();

  AMIVMicroOptions aopt;
  bool per_outcome = false;
  auto* amiv = app.add_subcommand("amiv", "Monotone-then-flat instrument bounds");
  amiv->add_option("input", input, "JSON moments or CSV micro rows (y,d,z)")->required();
  amiv->add_option("--y0-min", aopt.y0_min);
  amiv->add_option("--y0-max", aopt.y0_max);
  amiv->add_option("--y1-min", aopt.y1_min);
  amiv->add_option("--y1-max", aopt.y1_max);
  amiv->add_option("--min-cell-count", aopt.min_cell_count, "Minimum rows per instrument cell");
  amiv->add_flag("--per-outcome", per_outcome, "Choose the cutoff separately for each treatment arm");

  std::string family;
  auto* lattice = app.add_subcommand("lattice", "Minimal relaxations of a finite assumption family");
  lattice->add_option("--family", family, "Family JSON")->required();

  std::string scenario;
  auto* artstein = app.add_subcommand("artstein", "Capacity-inequality sets for finite outcome models");
  artstein->add_option("--scenario", scenario, "Scenario JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const auto fmt = report_format_from_string(format);
    Report r;
    if (intersect->parsed()) {
      r = run_intersect(input, iopt, oracle);
    } else if (biv->parsed()) {
      r = run_binary_iv(input, oracle);
    } else if (amiv->parsed()) {
      r = run_amiv(input, aopt, per_outcome ? CutoffMode::PerOutcome : CutoffMode::Joint, oracle);
    } else if (lattice->parsed()) {
      r = run_lattice(family, oracle);
    } else {
      r = run_artstein(scenario, seed, oracle);
    }
    emit_report(r, fmt, report_path);
    return r.exit_code;
  } catch (const IngestError& e) {
    std::cerr << "ingest error: " << e.what() << "\n";
    return kExitIngest;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitIngest;
  } catch (const ParameterError& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kExitIngest;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mrb
