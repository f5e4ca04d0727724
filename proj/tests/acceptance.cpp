// Acceptance runner: one PASS/FAIL line per criterion. `--criterion N` runs a single one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gen.hpp"
#include "mrb/amiv.hpp"
#include "mrb/artstein.hpp"
#include "mrb/binary_iv.hpp"
#include "mrb/errors.hpp"
#include "mrb/intersect.hpp"
#include "mrb/lattice.hpp"
#include "mrb/oracles.hpp"

#ifndef MRB_CLI_PATH
#define MRB_CLI_PATH ""
#endif

using namespace mrb;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void fail(const std::string& what) {
    if (failures_ < 5) notes_ << (failures_ ? "; " : "") << what;
    ++failures_;
  }
  void check(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  Outcome done(const std::string& summary) const {
    std::ostringstream os;
    os << summary;
    if (failures_) os << " | " << failures_ << " failure(s): " << notes_.str();
    return {failures_ == 0, os.str()};
  }

 private:
  int failures_ = 0;
  std::ostringstream notes_;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

BoundsMoments random_bounds(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = 1 + rng() % 6;
  const auto w = testgen::simplex(rng, n);
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = u(rng), b = u(rng);
    lo[i] = std::min(a, b);
    hi[i] = std::max(a, b);
  }
  return BoundsMoments::make({}, w, lo, hi);
}

BoundsMoments random_refuted(std::mt19937_64& rng) {
  for (;;) {
    auto m = random_bounds(rng);
    if (sharp_bounds(m).refuted) return m;
  }
}

std::pair<double, double> hull(const GridSet& g) {
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.mask()[i]) {
      lo = std::min(lo, g.point(i)[0]);
      hi = std::max(hi, g.point(i)[0]);
    }
  return {lo, hi};
}

// ------------------------------------------------------------------ 1

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  Tally t;
  int refuted = 0;
  oracle::OracleConfig cfg;
  for (int i = 0; i < 200; ++i) {
    const auto m = random_bounds(rng);
    const auto b = sharp_bounds(m);
    const auto mrb = mrb_intersection(m);
    const auto mc = mass_conditions(m);
    const std::string tag = "draw " + std::to_string(i);
    if (b.refuted) {
      ++refuted;
      const auto sweep = oracle::mrb_by_instrument_sweep(m, cfg);
      const auto& ax = sweep.axes()[0];
      const double step = ax.size() > 1 ? ax[1] - ax[0] : 0.0;
      const auto [lo, hi] = hull(sweep);
      t.check(std::fabs(lo - mrb.lo()) <= 2 * step + 1e-12 && std::fabs(hi - mrb.hi()) <= 2 * step + 1e-12,
              tag + ": sweep hull [" + num(lo) + ", " + num(hi) + "] vs MRB [" + num(mrb.lo()) + ", " + num(mrb.hi()) + "]");
      t.check(mrb == five_case_interval(b.gamma_lower, b.gamma_upper, mc.lower_le_gamma_upper, mc.upper_ge_gamma_lower),
              tag + ": endpoint openness differs from the mass conditions");
    } else {
      const double lo = *std::min_element(m.lower_mean.begin(), m.lower_mean.end());
      const double hi = *std::max_element(m.upper_mean.begin(), m.upper_mean.end());
      const double step = std::max((hi - lo) / 200.0, 1e-9);
      const auto g = oracle::intersection_idset(m, make_axis_step(lo, hi, step));
      const auto [glo, ghi] = hull(g);
      t.check(std::fabs(glo - mrb.lo()) <= 2 * step + 1e-12 && std::fabs(ghi - mrb.hi()) <= 2 * step + 1e-12,
              tag + ": grid hull differs from the sharp set");
      t.check(!mrb.lo_open() && !mrb.hi_open(), tag + ": consistent model with an open endpoint");
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  t.check(secs < 60.0, "runtime " + num(secs) + " s");
  return t.done("200 draws (" + std::to_string(refuted) + " refuted), " + num(secs) + " s");
}

// ------------------------------------------------------------------ 2

Outcome criterion2() {
  std::mt19937_64 rng(2002);
  Tally t;
  double worst_w = 0.0, worst_e = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto m = random_refuted(rng);
    const auto b = sharp_bounds(m);
    for (int k = 0; k <= 20; ++k) {
      const double theta = b.gamma_upper + (b.gamma_lower - b.gamma_upper) * k / 20.0;
      const auto s = outer_set(m, construct_pointid_instrument(m, theta));
      const double width = s.is_empty() ? INFINITY : s.width();
      const double err = s.is_empty() ? INFINITY : std::fabs(0.5 * (s.lo() + s.hi()) - theta);
      worst_w = std::max(worst_w, width);
      worst_e = std::max(worst_e, err);
      t.check(width < 1e-10 && err < 1e-10, "draw " + std::to_string(i) + " theta " + num(theta));
    }
    // No two-column sweep instrument pins down a point outside [gamma_upper, gamma_lower].
    const auto cols = oracle::sweep_columns(m, 50);
    for (std::size_t a = 0; a < cols.size(); ++a)
      for (std::size_t c = a; c < cols.size(); ++c) {
        const double lo = std::max(cols[a].lower, cols[c].lower);
        const double hi = std::min(cols[a].upper, cols[c].upper);
        if (lo > hi + 1e-9 || hi - lo > 1e-9) continue;
        t.check(lo >= b.gamma_upper - 1e-9 && hi <= b.gamma_lower + 1e-9,
                "draw " + std::to_string(i) + ": sweep point " + num(lo) + " outside W");
      }
  }
  return t.done("50 refuted draws x 21 points; max width " + num(worst_w) + ", max error " + num(worst_e));
}

// ------------------------------------------------------------------ 3

SetUnion union_of(std::initializer_list<Interval> ivs) {
  SetUnion u;
  for (const auto& iv : ivs) u.parts.emplace_back(iv);
  return u;
}

Outcome criterion3() {
  Tally t;
  const auto fam = AssumptionFamily::intersection(
      {"a1", "a2", "a3"},
      {IdentifiedSet(Interval::closed(1, 2)), IdentifiedSet(Interval::closed(3, 4)), IdentifiedSet(Interval::closed(0, 5))});
  const auto r = find_minimal_relaxations(fam);
  t.check(r.minimal_relaxations == std::vector<Subset>{fam.subset_of({"a1", "a3"}), fam.subset_of({"a2", "a3"})},
          "minimal relaxations differ from {a1,a3},{a2,a3}");
  t.check(sets_equal(IdentifiedSet(r.mrb), IdentifiedSet(union_of({Interval::closed(1, 2), Interval::closed(3, 4)}))),
          "MRB differs from [1,2] u [3,4]");
  t.check(!is_minimal_relaxation(fam, fam.subset_of({"a3"})), "{a3} accepted as minimal");
  return t.done("relaxations {a1,a3},{a2,a3}; MRB [1,2] u [3,4]; {a3} rejected");
}

// ------------------------------------------------------------------ 4

Outcome criterion4() {
  Tally t;
  SlackFamily sf{{"a1", "a2"}, {0, 2}, {1, 3}, {SlackDir::Both, SlackDir::Both}};
  const auto fas = falsification_adaptive_set(sf);
  t.check(fas == Interval::closed(1, 2), "FAS is not [1,2]");
  const auto r = find_minimal_relaxations(sf.base());
  t.check(sets_equal(IdentifiedSet(r.mrb), IdentifiedSet(union_of({Interval::closed(0, 1), Interval::closed(2, 3)}))),
          "MRB is not [0,1] u [2,3]");
  const auto axis = make_axis_step(-1.0, 4.0, 1e-3);
  const auto g = evaluate_on_grid(intersect(IdentifiedSet(r.mrb), IdentifiedSet(fas)), {axis});
  const auto fas_grid = falsification_adaptive_set_on_grid(sf, axis);
  t.check(g.count() == 2 && g.contains(std::vector<double>{1.0}) && g.contains(std::vector<double>{2.0}),
          "grid intersection has " + std::to_string(g.count()) + " points");
  t.check(fas_grid == evaluate_on_grid(IdentifiedSet(fas), {axis}), "grid FAS differs from the exact FAS");
  return t.done("FAS [1,2]; MRB [0,1] u [2,3]; intersection {1,2} on a 1e-3 grid");
}

// ------------------------------------------------------------------ 5

Outcome criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(5005);
  Tally t;
  const auto axis = make_axis_step(0.0, 1.0, 0.05);
  const std::vector<std::vector<double>> axes(4, axis);
  long disagreements = 0, points = 0;
  for (int i = 0; i < 500; ++i) {
    const auto d = testgen::binary_iv(rng);
    for (BivCombo combo : supported_combos()) {
      const auto closed = evaluate_on_grid(IdentifiedSet(identified_set_for(d, combo)), axes);
      const auto brute = oracle::binaryiv_grid(d, combo, axis);
      long diff = 0;
      for (std::size_t k = 0; k < brute.size(); ++k) diff += closed.mask()[k] != brute.mask()[k];
      points += static_cast<long>(brute.size());
      if (diff) t.fail("draw " + std::to_string(i) + " " + combo_name(combo) + ": " + std::to_string(diff) + " points");
      disagreements += diff;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  t.check(secs < 600.0, "runtime " + num(secs) + " s");
  return t.done("500 draws x 9 combos, " + std::to_string(points) + " grid points, " + std::to_string(disagreements) +
                " disagreements, " + num(secs) + " s");
}

// ------------------------------------------------------------------ 6

int row_of(BivCombo combo) {
  const auto& c = supported_combos();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] == combo) return static_cast<int>(i) + 1;
  return 0;
}

BivCombo oracle_relaxation(const BinaryIVData& d) {
  const auto fam = binary_iv_family(d, [&](BivCombo c) { return oracle::binaryiv_consistent(d, c); });
  const auto r = find_minimal_relaxations(fam);
  if (r.minimal_relaxations.size() != 1) return 0;
  return static_cast<BivCombo>(kA1 | (r.minimal_relaxations[0] << 1));
}

Outcome criterion6() {
  Tally t;
  const std::vector<std::pair<std::string, std::array<bool, 4>>> patterns{
      {"none", {false, false, false, false}}, {"II1", {true, false, false, false}},
      {"II2", {false, true, false, false}},   {"II3", {false, false, true, false}},
      {"II4", {false, false, false, true}},   {"II1+II4", {true, false, false, true}},
      {"II1+II3", {true, false, true, false}}, {"II2+II4", {false, true, false, true}},
      {"II2+II3", {false, true, true, false}}};
  std::mt19937_64 rng(6006);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // Draws skewed toward a few heavy cells so each violation occurs often.
  auto skewed = [&]() {
    std::array<std::array<double, 4>, 2> c{};
    for (auto& z : c) {
      double s = 0.0;
      for (auto& v : z) s += (v = std::pow(u(rng), 4.0) + 1e-3);
      for (auto& v : z) v /= s;
      z[3] = 1.0 - z[0] - z[1] - z[2];
    }
    return BinaryIVData::make(c[0], c[1]);
  };
  std::vector<BinaryIVData> found(patterns.size());
  std::vector<bool> have(patterns.size(), false);
  int kitagawa_draws = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto d = i % 2 ? skewed() : testgen::binary_iv(rng);
    const auto q = instrumental_inequalities(d);
    std::array<bool, 4> v{};
    for (int k = 0; k < 4; ++k) v[k] = !q[k].pass;
    if (i < 2000) {
      ++kitagawa_draws;
      if (oracle::binaryiv_consistent(d, kFullCombo))
        t.check(v == std::array<bool, 4>{}, "draw " + std::to_string(i) + ": nonempty set with a failing inequality");
    }
    for (std::size_t p = 0; p < patterns.size(); ++p)
      if (!have[p] && v == patterns[p].second) {
        found[p] = d;
        have[p] = true;
      }
  }
  std::ostringstream summary;
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    const std::string& name = patterns[p].first;
    if (!have[p]) {
      // Proven impossible: the largest joint violation over all data distributions is not positive.
      std::string why = "no data distribution realizes " + name;
      if (p >= 5) {
        const int a = name[2] - '0', b = name[6] - '0';
        why += " (max joint violation " + oracle::max_joint_violation(a, b).get_str() + ")";
      }
      t.fail(why);
      summary << name << ":unrealizable ";
      continue;
    }
    const auto res = mrb_binary_iv(found[p]);
    const BivCombo expect = oracle_relaxation(found[p]);
    t.check(res.selected.combo == expect && res.selected.row == row_of(expect),
            name + ": row " + std::to_string(res.selected.row) + " vs oracle row " + std::to_string(row_of(expect)));
    t.check(res.selected.row == static_cast<int>(p) + 1, name + ": row " + std::to_string(res.selected.row));
    summary << name << ":row" << res.selected.row << " ";
  }
  return t.done(summary.str() + "| nonempty-implies-pass on " + std::to_string(kitagawa_draws) + " draws");
}

// ------------------------------------------------------------------ 7

AMIVMoments worked_amiv() {
  return AMIVMoments::make({0.5, 0.5}, {std::vector<double>{0.1, 0.1}, std::vector<double>{0.3, 0.5}},
                           {std::vector<double>{0.9, 0.9}, std::vector<double>{0.45, 0.9}}, {0.0, 0.0}, {1.0, 1.0});
}

Outcome criterion7() {
  std::mt19937_64 rng(7007);
  Tally t;
  const double step = 0.01;
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t k = 1 + rng() % 3;
    const auto m = testgen::amiv(rng, k);
    const std::string tag = "draw " + std::to_string(i);
    for (int d : {1, 0}) {
      bool seen = false;
      for (std::size_t z = 1; z <= k; ++z) {
        const bool in = amiv_star_membership(m, z, d);
        t.check(!seen || in, tag + ": membership not monotone");
        seen |= in;
      }
    }
    const auto r = amiv_mrb(m, CutoffMode::PerOutcome);
    for (int d : {1, 0}) {
      const int s = amiv_slot(d);
      if (!r.z_star[s]) continue;
      const auto o = oracle::amiv_bounds(m, *r.z_star[s], step)[d];
      ++compared;
      if (!o) {
        t.fail(tag + ": oracle finds no sequence for d=" + std::to_string(d));
        continue;
      }
      t.check(std::fabs(o->lo() - r.mrb[s].lo()) <= step + 1e-12 && std::fabs(o->hi() - r.mrb[s].hi()) <= step + 1e-12,
              tag + " d=" + std::to_string(d) + ": [" + num(r.mrb[s].lo()) + ", " + num(r.mrb[s].hi()) + "] vs [" +
                  num(o->lo()) + ", " + num(o->hi()) + "]");
    }
    for (auto mode : {CutoffMode::Joint, CutoffMode::PerOutcome}) {
      const auto rel = find_minimal_relaxations(amiv_family(m, mode));
      t.check(rel.minimal_relaxations.size() == 1, tag + ": minimal relaxation not unique");
    }
  }
  const auto w = amiv_mrb(worked_amiv());
  const auto g = w.mrb[amiv_slot(1)];
  t.check(g == Interval::closed(0.5 * 0.3 + 0.5 * 0.5, 0.5 * 0.45 + 0.5 * 0.9) && std::fabs(g.lo() - 0.40) < 1e-15 &&
              std::fabs(g.hi() - 0.675) < 1e-15,
          "worked example gives [" + num(g.lo()) + ", " + num(g.hi()) + "]");
  return t.done("300 draws, " + std::to_string(compared) + " endpoint pairs checked; worked example [" + num(g.lo()) +
                ", " + num(g.hi()) + "]");
}

// ------------------------------------------------------------------ 8

AssumptionFamily random_family(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 10.0), w(0.5, 4.0);
  const std::size_t n = 2 + rng() % 7;
  std::vector<std::string> ids;
  std::vector<IdentifiedSet> atoms;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back("a" + std::to_string(i + 1));
    const double lo = u(rng);
    atoms.emplace_back(Interval::closed(lo, lo + w(rng)));
  }
  return AssumptionFamily::intersection(ids, atoms);
}

// Candidate statements: the sets of random consistent submodels, their unions, and random intervals.
std::vector<IdentifiedSet> statement_pool(std::mt19937_64& rng, const AssumptionFamily& fam) {
  std::uniform_real_distribution<double> u(-1.0, 15.0);
  std::vector<IdentifiedSet> pool;
  std::vector<IdentifiedSet> sets;
  for (int k = 0; k < 12; ++k) {
    const Subset b = static_cast<Subset>(rng()) & fam.full();
    if (fam.consistent(b)) sets.push_back(fam.identified_set(b));
  }
  for (const auto& s : sets) pool.push_back(s);
  for (std::size_t a = 0; a + 1 < sets.size(); ++a) {
    SetUnion un;
    un.parts = {sets[a], sets[a + 1]};
    pool.emplace_back(un);
  }
  for (int k = 0; k < 8; ++k) {
    const double a = u(rng), b = u(rng);
    pool.emplace_back(Interval::closed(std::min(a, b), std::max(a, b)));
  }
  pool.emplace_back(Interval::whole());
  return pool;
}

Outcome criterion8() {
  std::mt19937_64 rng(8008);
  Tally t;
  int checked_statements = 0, flagged = 0;
  for (int i = 0; i < 500; ++i) {
    const auto fam = random_family(rng);
    const auto r = find_minimal_relaxations(fam);
    const IdentifiedSet mrb(r.mrb);
    t.check(is_nonconflicting(fam, mrb), "family " + std::to_string(i) + ": MRB conflicts");
    const auto f = check_smallest_conditions(fam);
    if (!(f.unique_minimal || f.all_singleton)) continue;
    ++flagged;
    for (const auto& s : statement_pool(rng, fam)) {
      if (!is_nonconflicting(fam, s)) continue;
      ++checked_statements;
      t.check(is_subset(mrb, s), "family " + std::to_string(i) + ": MRB not inside an accepted statement");
    }
  }

  const auto c1 = AssumptionFamily::intersection(
      {"a1", "a2", "a3"},
      {IdentifiedSet(Interval::closed(1, 2)), IdentifiedSet(Interval::closed(0, 3)), IdentifiedSet(Interval::empty())});
  t.check(!find_discordance(c1).has_value(), "empty-atom family has a certificate");
  CustomOracle o2;
  o2.set_of = [](Subset s) {
    if (s == 3) return IdentifiedSet(Interval::empty());
    if (s == 1) return IdentifiedSet(Interval::closed(0, 1));
    if (s == 2) return IdentifiedSet(Interval::closed(0, 2));
    return IdentifiedSet(Interval(0, INFINITY, false, true));
  };
  t.check(!find_discordance(AssumptionFamily::custom({"a1", "a2"}, o2)).has_value(),
          "overlapping incompatible family has a certificate");
  const std::size_t n = 6;
  CustomOracle o3;
  o3.set_of = [n](Subset s) {
    if (s == (Subset{1} << n) - 1) return IdentifiedSet(Interval::empty());
    double hi = 1.0;
    for (std::size_t k = 0; k < n; ++k)
      if ((s >> k) & 1u) hi = std::min(hi, 1.0 / static_cast<double>(k + 1));
    return IdentifiedSet(Interval::open(0.0, hi));
  };
  std::vector<std::string> ids;
  for (std::size_t k = 1; k <= n; ++k) ids.push_back("a" + std::to_string(k));
  t.check(!find_discordance(AssumptionFamily::custom(ids, o3)).has_value(), "nested family has a certificate");
  return t.done("500 families, " + std::to_string(flagged) + " with a smallest-set flag, " +
                std::to_string(checked_statements) + " accepted statements; 3 counterexamples without certificates");
}

// ------------------------------------------------------------------ 9

Outcome criterion9() {
  Tally t;
  const std::vector<double> lo{0.0}, hi{1.0};
  const auto axes = make_axes(lo, hi, 101);
  const RandomSetSpec rs{{1u, 3u}, {{0.0, 1.0}, {1.0, -1.0}}};
  const auto m = random_set_model({"a", "b"}, {"x1"}, {{0.7, 0.3}}, rs, axes);
  const auto [slo, shi] = hull(sharp_set(m));
  const double step = 0.01;
  t.check(std::fabs(slo) <= step + 1e-12 && std::fabs(shi - 0.7) <= step + 1e-12,
          "sharp set [" + num(slo) + ", " + num(shi) + "]");

  std::mt19937_64 rng(9009);
  int pairs = 0;
  for (int i = 0; i < 100; ++i) {
    RandomSetSpec r;
    const std::size_t ny = 3, nsets = 3;
    for (std::size_t j = 0; j < nsets; ++j) r.sets.push_back(1u + static_cast<std::uint32_t>(rng() % 7));
    const auto p0 = testgen::simplex(rng, nsets), p1 = testgen::simplex(rng, nsets);
    for (std::size_t j = 0; j < nsets; ++j) r.coeffs.push_back({p0[j], p1[j] - p0[j]});
    const auto rm = random_set_model({"a", "b", "c"}, {"x1", "x2"},
                                     {testgen::simplex(rng, ny), testgen::simplex(rng, ny)}, r, make_axes(lo, hi, 41));
    std::vector<std::uint32_t> small, big;
    for (std::uint32_t k = 1; k <= 7; ++k) {
      const bool in_small = rng() % 3 == 0;
      if (in_small) small.push_back(k);
      if (in_small || rng() % 2 == 0) big.push_back(k);
    }
    ++pairs;
    t.check(is_subset(IdentifiedSet(outer_set_for_collection(rm, big)), IdentifiedSet(outer_set_for_collection(rm, small))),
            "pair " + std::to_string(i) + ": larger collection gives a larger outer set");
  }

  EntryGameSpec spec;
  spec.gamma = {0.3, -0.2};
  spec.x_labels = {"x1"};
  spec.x_values = {{0.0, 0.0}};
  spec.mc_draws = 100000;
  spec.seed = 12345;
  auto phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  const double p1 = phi(0.3), p2 = phi(-0.2);
  const std::array<double, 4> exact{(1 - p1) * (1 - p2), p1 * (1 - p2), (1 - p1) * p2, p1 * p2};
  double worst = 0.0;
  for (std::uint32_t o = 0; o < 4; ++o) {
    const auto c = entry_game_capacity(spec, 1u << o, 0);
    const double z = std::fabs(c.value - exact[o]) / c.se;
    worst = std::max(worst, z);
    t.check(z <= 3.0, "entry outcome " + std::to_string(o) + " off by " + num(z) + " SE");
  }

  FiniteCapacityModel ref;
  ref.y_support = {"a", "b"};
  ref.x_support = {"x1", "x2"};
  ref.p_y_given_x = {{0.4, 0.6}, {0.6, 0.4}};
  ref.theta_axes = axes;
  ref.capacity = [](std::uint32_t k, std::size_t x, std::span<const double> th) {
    if (k == 3) return CapacityValue{1.0, 0.0};
    if (x == 0) return CapacityValue{k == 2 ? th[0] : 1.0, 0.0};
    return CapacityValue{k == 1 ? 1.0 - th[0] : 1.0, 0.0};
  };
  const auto search = find_discordant_collections(ref);
  t.check(search.found.has_value(), "no discordant collections: " + search.diagnostic);
  std::string found;
  if (search.found)
    found = restriction_label(ref, search.found->first[0]) + " vs " + restriction_label(ref, search.found->second[0]);
  return t.done("sharp set [" + num(slo) + ", " + num(shi) + "]; " + std::to_string(pairs) +
                " collection pairs; entry game max " + num(worst) + " SE; discordance " + found);
}

// ------------------------------------------------------------------ 10

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome criterion10() {
  Tally t;
  const std::string cli = MRB_CLI_PATH, fx = MRB_FIXTURES_DIR;
  const std::filesystem::path work = std::filesystem::path(MRB_WORK_DIR) / "determinism";
  std::filesystem::create_directories(work);
  const std::vector<std::pair<std::string, std::string>> runs{
      {"intersect_agg", "intersect " + fx + "/intersect_aggregated.csv --oracle"},
      {"intersect_ok", "intersect " + fx + "/intersect_consistent.csv"},
      {"intersect_micro", "intersect " + fx + "/intersect_micro.csv --y-min 0 --y-max 1"},
      {"binary_iv_json", "binary-iv " + fx + "/binary_iv_consistent.json"},
      {"binary_iv_ii1", "binary-iv " + fx + "/binary_iv_ii1.json"},
      {"binary_iv_csv", "binary-iv " + fx + "/binary_iv_micro.csv"},
      {"amiv_json", "amiv " + fx + "/amiv_worked.json"},
      {"amiv_csv", "amiv " + fx + "/amiv_micro.csv --y0-min 0 --y0-max 1 --y1-min 0 --y1-max 1"},
      {"lattice_three", "lattice --family " + fx + "/lattice_three_intervals.json"},
      {"lattice_ok", "lattice --family " + fx + "/lattice_consistent.json"},
      {"artstein_two", "artstein --scenario " + fx + "/artstein_two_outcome.json"},
      {"artstein_refuted", "artstein --scenario " + fx + "/artstein_refuted.json"},
      {"artstein_entry", "artstein --scenario " + fx + "/artstein_entry_game.json --seed 7"},
  };
  int compared = 0;
  for (const auto& [name, args] : runs)
    for (const char* fmt : {"json", "markdown"}) {
      std::array<std::string, 2> out;
      for (int k = 0; k < 2; ++k) {
        const auto path = work / (name + "." + fmt + "." + std::to_string(k));
        std::filesystem::remove(path);
        const std::string cmd = "\"" + cli + "\" --format " + fmt + " --report \"" + path.string() + "\" " + args;
        const int rc = std::system(cmd.c_str());
        t.check(rc != -1, name + ": could not run");
        out[k] = slurp(path);
      }
      ++compared;
      t.check(!out[0].empty(), name + " (" + fmt + "): empty report");
      t.check(out[0] == out[1], name + " (" + fmt + "): reports differ");
    }
  return t.done(std::to_string(compared) + " fixture runs byte-identical");
}

const std::vector<std::function<Outcome()>> kCriteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                      criterion6, criterion7, criterion8, criterion9, criterion10};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) which.push_back(std::atoi(argv[++i]));
  }
  if (which.empty())
    for (int i = 1; i <= 10; ++i) which.push_back(i);
  bool all = true;
  for (int c : which) {
    if (c < 1 || c > 10) {
      std::cerr << "unknown criterion " << c << "\n";
      return 64;
    }
    Outcome o;
    try {
      o = kCriteria[c - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c << ": " << o.detail << std::endl;
    all &= o.pass;
  }
  return all ? 0 : 1;
}
