#include <random>

#include "doctest.h"
#include "mrb/errors.hpp"
#include "mrb/intersect.hpp"

using namespace mrb;

namespace {

BoundsMoments two_point(std::vector<double> lo, std::vector<double> hi) {
  return BoundsMoments::make({"1", "2"}, {0.5, 0.5}, std::move(lo), std::move(hi));
}

std::vector<double> indicator(std::size_t n, std::size_t at) {
  std::vector<double> h(n, 0.0);
  h[at] = 1.0;
  return h;
}

BoundsMoments random_refuted(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const std::size_t n = 2 + rng() % 5;
    std::vector<double> w(n), lo(n), hi(n);
    double tot = 0.0;
    for (auto& v : w) tot += (v = 0.1 + u(rng));
    for (auto& v : w) v /= tot;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) s += w[i];
    w[n - 1] = 1.0 - s;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = u(rng), b = u(rng);
      lo[i] = std::min(a, b);
      hi[i] = std::max(a, b);
    }
    auto m = BoundsMoments::make({}, w, lo, hi);
    if (sharp_bounds(m).refuted) return m;
  }
}

}  // namespace

TEST_SUITE("intersect") {
  TEST_CASE("sharp bounds examples") {
    auto b = sharp_bounds(two_point({0.2, 0.5}, {0.9, 0.8}));
    CHECK(b.gamma_lower == 0.5);
    CHECK(b.gamma_upper == 0.8);
    CHECK_FALSE(b.refuted);
    b = sharp_bounds(two_point({0.6, 0.0}, {1.0, 0.4}));
    CHECK(b.gamma_lower == 0.6);
    CHECK(b.gamma_upper == 0.4);
    CHECK(b.refuted);
    b = sharp_bounds(BoundsMoments::make({"1"}, {1.0}, {0.3}, {0.3}));
    CHECK(b.gamma_lower == 0.3);
    CHECK(b.gamma_upper == 0.3);
    CHECK_FALSE(b.refuted);
  }

  TEST_CASE("moments validation") {
    CHECK_THROWS_AS(two_point({0.5, 0.0}, {0.4, 0.4}), ValidationError);
    CHECK_THROWS_AS(BoundsMoments::make({"1", "2"}, {0.4, 0.4}, {0, 0}, {1, 1}), ValidationError);
    CHECK_THROWS_AS(BoundsMoments::make({"1", "2"}, {1.0, 0.0}, {0, 0}, {1, 1}), ValidationError);
  }

  TEST_CASE("outer set examples") {
    const auto m = two_point({0.6, 0.0}, {1.0, 0.4});
    const auto full = outer_set(m, Instrument{{{1.0, 1.0}}});
    CHECK(full.lo() == doctest::Approx(0.3));
    CHECK(full.hi() == doctest::Approx(0.7));
    CHECK(outer_set(m, Instrument{{indicator(2, 0)}}) == Interval::closed(0.6, 1.0));
    CHECK(outer_set(m, Instrument{{indicator(2, 0), indicator(2, 1)}}).is_empty());
    CHECK_THROWS_AS(outer_set(m, Instrument{{{0.0, 0.0}}}), InstrumentError);
    CHECK_THROWS_AS(outer_set(m, Instrument{{{-1.0, 2.0}}}), InstrumentError);
    CHECK_THROWS_AS(outer_set(m, Instrument{{{1.0}}}), DimensionError);
  }

  TEST_CASE("point-identifying instrument") {
    const auto m = two_point({0.6, 0.0}, {1.0, 0.4});
    const auto h = construct_pointid_instrument(m, 0.5);
    REQUIRE(h.columns.size() == 2);
    // Mixing weight 1/6 on the z=2 indicator, 5/6 on z=1 (normalized by P(Z=z)=0.5).
    CHECK(h.columns[0][1] == doctest::Approx(2.0 / 6.0));
    CHECK(h.columns[0][0] == doctest::Approx(2.0 * 5.0 / 6.0));
    const auto s = outer_set(m, h);
    CHECK(s.lo() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.hi() == doctest::Approx(0.5).epsilon(1e-12));
    const auto e = outer_set(m, construct_pointid_instrument(m, 0.4));
    CHECK(e.lo() == doctest::Approx(0.4));
    CHECK(e.width() < 1e-12);
    CHECK_THROWS_AS(construct_pointid_instrument(m, 0.3), DomainError);
    try {
      construct_pointid_instrument(m, 0.3);
    } catch (const DomainError& err) {
      CHECK(std::string(err.what()).find("gamma_upper") != std::string::npos);
    }
    CHECK_THROWS_AS(construct_pointid_instrument(two_point({0.2, 0.5}, {0.9, 0.8}), 0.6), DomainError);
  }

  TEST_CASE("five-case bound") {
    CHECK(mrb_intersection(two_point({0.2, 0.5}, {0.9, 0.8})) == Interval::closed(0.5, 0.8));
    CHECK(mrb_intersection(two_point({0.6, 0.0}, {1.0, 0.4})) == Interval::closed(0.4, 0.6));
    // Open endpoints arise only through the mass conditions.
    CHECK(five_case_interval(0.6, 0.45, false, true) == Interval(0.45, 0.6, true, false));
    CHECK(five_case_interval(0.6, 0.45, true, false) == Interval(0.45, 0.6, false, true));
    CHECK(five_case_interval(0.6, 0.45, false, false) == Interval::open(0.45, 0.6));
    // The three-point configuration violates lower <= upper at its third point.
    CHECK_THROWS_AS(BoundsMoments::make({"1", "2", "3"}, {0.3, 0.3, 0.4}, {0.6, 0.5, 0.5}, {1.0, 0.9, 0.45}),
                    ValidationError);
  }

  TEST_CASE("discrete support always satisfies the mass conditions") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
      const auto m = random_refuted(rng);
      const auto c = mass_conditions(m);
      CHECK(c.lower_le_gamma_upper);
      CHECK(c.upper_ge_gamma_lower);
      CHECK(c.upper_at_gamma_upper);
      CHECK(c.lower_at_gamma_lower);
      const auto w = pointid_region(m);
      CHECK_FALSE(w.lo_open());
      CHECK_FALSE(w.hi_open());
    }
  }

  TEST_CASE("outer sets contain the sharp set and meet W on refuted models") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
      const auto m = random_refuted(rng);
      Instrument h;
      const int cols = 1 + static_cast<int>(rng() % 3);
      for (int c = 0; c < cols; ++c) {
        std::vector<double> col(m.size());
        for (auto& v : col) v = u(rng) < 0.3 ? 0.0 : u(rng);
        col[rng() % m.size()] += 0.1;
        h.columns.push_back(col);
      }
      const auto s = outer_set(m, h);
      const auto w = pointid_region(m);
      CHECK((s.is_empty() || !intersect(s, w).is_empty()));
    }
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 2 + rng() % 4;
      std::vector<double> w(n, 1.0 / static_cast<double>(n)), lo(n), hi(n);
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) s += w[i];
      w[n - 1] = 1.0 - s;
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = 0.4 * u(rng);
        hi[i] = 0.6 + 0.4 * u(rng);
      }
      const auto m = BoundsMoments::make({}, w, lo, hi);
      const auto b = sharp_bounds(m);
      std::vector<double> col(n);
      for (auto& v : col) v = 0.05 + u(rng);
      const auto o = outer_set(m, Instrument{{col}});
      CHECK(o.lo() <= b.gamma_lower + 1e-12);
      CHECK(o.hi() >= b.gamma_upper - 1e-12);
    }
  }

  TEST_CASE("instrument family yields the crossed bound as MRB closure") {
    const auto m = two_point({0.6, 0.0}, {1.0, 0.4});
    std::vector<std::vector<double>> cols;
    for (int i = 0; i <= 20; ++i) {
      const double s = i / 20.0;
      cols.push_back({2 * s, 2 * (1 - s)});
    }
    const auto fam = instrument_family(m, cols);
    const auto r = find_minimal_relaxations(fam);
    CHECK(r.full_model_refuted);
    double lo = 1e9, hi = -1e9;
    for (const auto& p : r.mrb.parts) {
      if (is_empty(p)) continue;
      lo = std::min(lo, p.as<Interval>().lo());
      hi = std::max(hi, p.as<Interval>().hi());
      // Every minimal relaxation pins down a point.
      CHECK(p.as<Interval>().width() < 0.05 + 1e-12);
    }
    // Column spacing 0.05 cannot hit the exact 2/3 window, so each end overshoots by 0.6 * (2/3 - 0.65).
    CHECK(lo == doctest::Approx(0.39));
    CHECK(hi == doctest::Approx(0.61));
  }
}
