#include <cmath>
#include <random>

#include "doctest.h"
#include "gen.hpp"
#include "mrb/artstein.hpp"
#include "mrb/errors.hpp"
#include "mrb/oracles.hpp"

using namespace mrb;

namespace {

std::vector<std::vector<double>> unit_axis(std::size_t n = 101) {
  const std::vector<double> lo{0.0}, hi{1.0};
  return make_axes(lo, hi, n);
}

// {a} with probability theta, {a,b} otherwise.
RandomSetSpec a_or_ab() { return {{1u, 3u}, {{0.0, 1.0}, {1.0, -1.0}}}; }

FiniteCapacityModel two_outcome(std::vector<std::vector<double>> p) {
  std::vector<std::string> xs;
  for (std::size_t i = 0; i < p.size(); ++i) xs.push_back("x" + std::to_string(i + 1));
  return random_set_model({"a", "b"}, xs, std::move(p), a_or_ab(), unit_axis());
}

double grid_max(const GridSet& g) {
  double v = -INFINITY;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.mask()[i]) v = std::max(v, g.point(i)[0]);
  return v;
}

double grid_min(const GridSet& g) {
  double v = INFINITY;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.mask()[i]) v = std::min(v, g.point(i)[0]);
  return v;
}

FiniteCapacityModel refuted_synthetic() {
  FiniteCapacityModel m;
  m.y_support = {"a", "b"};
  m.x_support = {"x1", "x2"};
  m.p_y_given_x = {{0.4, 0.6}, {0.6, 0.4}};
  m.theta_axes = unit_axis();
  m.capacity = [](std::uint32_t k, std::size_t x, std::span<const double> th) {
    if (k == 3) return CapacityValue{1.0, 0.0};
    if (x == 0) return CapacityValue{k == 2 ? th[0] : 1.0, 0.0};
    return CapacityValue{k == 1 ? 1.0 - th[0] : 1.0, 0.0};
  };
  return m;
}

EntryGameSpec entry_spec() {
  EntryGameSpec s;
  s.gamma = {0.3, -0.2};
  s.x_labels = {"x1"};
  s.x_values = {{0.0, 0.0}};
  s.mc_draws = 100000;
  s.seed = 12345;
  return s;
}

double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST_SUITE("artstein") {
  TEST_CASE("outer and sharp sets of the two-outcome model") {
    const auto m = two_outcome({{0.7, 0.3}});
    const auto full = outer_set_for_collection(m, {3u});
    CHECK(full.count() == full.size());
    CHECK(outer_set_for_collection(m, {}).count() == full.size());
    const auto b = outer_set_for_collection(m, {2u});
    CHECK(grid_min(b) == 0.0);
    CHECK(grid_max(b) == doctest::Approx(0.7));
    CHECK(sharp_set(m) == b);
    CHECK_THROWS_AS(outer_set_for_collection(m, {4u}), ValidationError);
  }

  TEST_CASE("binding covariate value") {
    const auto m = two_outcome({{0.7, 0.3}, {0.1, 0.9}});
    const auto s = sharp_set(m);
    CHECK(grid_min(s) == 0.0);
    CHECK(grid_max(s) == doctest::Approx(0.1));
  }

  TEST_CASE("vacuous capacity keeps the whole grid") {
    FiniteCapacityModel m;
    m.y_support = {"a", "b", "c"};
    m.x_support = {"x"};
    m.p_y_given_x = {{0.2, 0.3, 0.5}};
    m.theta_axes = unit_axis(11);
    m.capacity = [](std::uint32_t, std::size_t, std::span<const double>) { return CapacityValue{1.0, 0.0}; };
    CHECK(sharp_set(m).count() == 11);
  }

  TEST_CASE("outcome budget") {
    FiniteCapacityModel m;
    for (int i = 0; i < 9; ++i) m.y_support.push_back("y" + std::to_string(i));
    m.x_support = {"x"};
    m.p_y_given_x = {std::vector<double>(9, 1.0 / 9.0)};
    m.p_y_given_x[0][8] = 1.0 - 8.0 / 9.0;
    m.theta_axes = unit_axis(3);
    m.capacity = [](std::uint32_t, std::size_t, std::span<const double>) { return CapacityValue{1.0, 0.0}; };
    CHECK_THROWS_AS(sharp_set(m), BudgetError);
  }

  TEST_CASE("discordant collections on a refuted scenario") {
    const auto m = refuted_synthetic();
    CHECK(sharp_set(m).is_empty());
    const auto s = find_discordant_collections(m);
    REQUIRE(s.found.has_value());
    CHECK(s.checks.positive_probabilities);
    CHECK(s.checks.saturation);
    const KRestriction b_x1{2u, 0}, a_x2{1u, 1};
    const auto& f = *s.found;
    REQUIRE(f.first.size() == 1);
    REQUIRE(f.second.size() == 1);
    const bool match = (f.first[0] == b_x1 && f.second[0] == a_x2) || (f.first[0] == a_x2 && f.second[0] == b_x1);
    CHECK(match);
    CHECK_FALSE(f.set_first.is_empty());
    CHECK_FALSE(f.set_second.is_empty());
    CHECK(is_empty(intersect(IdentifiedSet(f.set_first), IdentifiedSet(f.set_second))));
  }

  TEST_CASE("no discordance on consistent models; diagnostic when positivity fails") {
    const auto ok = find_discordant_collections(two_outcome({{0.7, 0.3}}));
    CHECK_FALSE(ok.found.has_value());

    auto m = refuted_synthetic();
    m.p_y_given_x = {{0.0, 1.0}, {1.0, 0.0}};
    // Only one inequality at each covariate binds and both are needed jointly.
    m.capacity = [](std::uint32_t k, std::size_t x, std::span<const double> th) {
      if (k == 3) return CapacityValue{1.0, 0.0};
      if (x == 0) return CapacityValue{k == 2 ? 0.5 * th[0] : 1.0, 0.0};
      return CapacityValue{k == 1 ? 0.5 : 1.0, 0.0};
    };
    const auto s = find_discordant_collections(m);
    CHECK_FALSE(s.checks.positive_probabilities);
    CHECK_FALSE(s.found.has_value());
    CHECK(s.diagnostic.find("pre-checks failed") != std::string::npos);
  }

  TEST_CASE("anti-monotonicity and selectionability oracle on random models") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 60; ++t) {
      const std::size_t ny = 2 + rng() % 2;
      const std::uint32_t all = (1u << ny) - 1;
      RandomSetSpec rs;
      std::vector<double> p0, p1;
      const std::size_t nsets = 2 + rng() % 3;
      for (std::size_t j = 0; j < nsets; ++j) rs.sets.push_back(1u + static_cast<std::uint32_t>(rng() % all));
      p0 = testgen::simplex(rng, nsets);
      p1 = testgen::simplex(rng, nsets);
      for (std::size_t j = 0; j < nsets; ++j) rs.coeffs.push_back({p0[j], p1[j] - p0[j]});
      std::vector<std::string> ys;
      for (std::size_t y = 0; y < ny; ++y) ys.push_back("y" + std::to_string(y));
      const auto m = random_set_model(ys, {"x1", "x2"}, {testgen::simplex(rng, ny), testgen::simplex(rng, ny)}, rs,
                                      unit_axis(41));
      CHECK(sharp_set(m) == oracle::random_set_sharp_set(m));
      for (int c = 0; c < 2; ++c) {
        std::vector<std::uint32_t> small, big;
        for (std::uint32_t k = 1; k <= all; ++k) {
          const bool in_small = rng() % 3 == 0;
          if (in_small) small.push_back(k);
          if (in_small || rng() % 2 == 0) big.push_back(k);
        }
        CHECK(is_subset(IdentifiedSet(outer_set_for_collection(m, big)), IdentifiedSet(outer_set_for_collection(m, small))));
      }
    }
  }

  TEST_CASE("entry game without interaction matches the product probability") {
    const auto spec = entry_spec();
    const double p1 = phi(spec.gamma[0]), p2 = phi(spec.gamma[1]);
    const std::array<double, 4> exact{(1 - p1) * (1 - p2), p1 * (1 - p2), (1 - p1) * p2, p1 * p2};
    for (std::uint32_t o = 0; o < 4; ++o) {
      const auto c = entry_game_capacity(spec, 1u << o, 0);
      CHECK(std::fabs(c.value - exact[o]) <= 3 * c.se);
    }
  }

  TEST_CASE("entry game capacity properties") {
    auto spec = entry_spec();
    spec.delta = {0.8, 0.5};
    spec.sigma = {{{1.0, 0.3}, {0.3, 2.0}}};
    spec.mc_draws = 20000;
    CHECK(entry_game_capacity(spec, 15u, 0).value == 1.0);
    const auto freq = entry_game_equilibrium_frequencies(spec, 0);
    CHECK(freq[0] == 0.0);
    for (std::uint32_t k = 1; k < 16; ++k)
      for (std::uint32_t k2 = k; k2 < 16; ++k2)
        if ((k & k2) == k) CHECK(entry_game_capacity(spec, k, 0).value <= entry_game_capacity(spec, k2, 0).value);
    const auto a = entry_game_capacity(spec, 6u, 0), b = entry_game_capacity(spec, 6u, 0);
    CHECK(std::memcmp(&a.value, &b.value, sizeof(double)) == 0);
    // Multiple equilibria appear once interaction effects are positive.
    CHECK(freq[6] > 0.0);

    auto big = entry_spec();
    big.gamma = {6.0, 6.0};
    big.delta = {0.01, 0.01};
    big.mc_draws = 5000;
    CHECK(entry_game_capacity(big, 8u, 0).value > 0.999);

    auto bad = entry_spec();
    bad.sigma = {{{1.0, 2.0}, {2.0, 1.0}}};
    CHECK_THROWS_AS(entry_game_capacity(bad, 1u, 0), ParameterError);
    bad = entry_spec();
    bad.delta = {-0.1, 0.0};
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    CHECK_THROWS_AS(entry_param_from_string("gamma3"), ParameterError);
  }

  TEST_CASE("entry game model over a parameter grid") {
    auto spec = entry_spec();
    spec.mc_draws = 4000;
    const std::vector<double> lo{-1.0}, hi{1.0};
    const double p1 = phi(0.3), p2 = phi(-0.2);
    std::vector<std::vector<double>> p{{(1 - p1) * (1 - p2), p1 * (1 - p2), (1 - p1) * p2, p1 * p2}};
    const auto m = entry_game_model(spec, {EntryParam::Gamma1}, make_axes(lo, hi, 21), p);
    const auto s = sharp_set(m);
    CHECK(s.contains(std::vector<double>{0.3}));
    CHECK_FALSE(s.contains(std::vector<double>{-1.0}));
    CHECK(sharp_set(m) == s);
  }
}
