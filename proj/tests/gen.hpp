#pragma once

// Random instance generators shared by the unit and acceptance tests.

#include <algorithm>
#include <random>
#include <vector>

#include "mrb/moments.hpp"

namespace mrb::testgen {

inline std::vector<double> simplex(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) s += (x = e(rng) + 1e-3);
  for (auto& x : v) x /= s;
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) head += v[i];
  v[n - 1] = 1.0 - head;
  return v;
}

inline BinaryIVData binary_iv(std::mt19937_64& rng) {
  const auto a = simplex(rng, 4), b = simplex(rng, 4);
  return BinaryIVData::make({a[0], a[1], a[2], a[3]}, {b[0], b[1], b[2], b[3]});
}

inline BoundsMoments bounds(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto w = simplex(rng, n);
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = u(rng), b = u(rng);
    lo[i] = std::min(a, b);
    hi[i] = std::max(a, b);
  }
  return BoundsMoments::make({}, w, lo, hi);
}

// Moments on a 0.05 lattice so grid oracles can hit the endpoints.
inline AMIVMoments amiv(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<int> tick(0, 20);
  std::vector<double> w(k, 1.0 / static_cast<double>(k));
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) head += w[i];
  w[k - 1] = 1.0 - head;
  std::array<std::vector<double>, 2> lo, hi;
  for (int d = 0; d < 2; ++d) {
    lo[d].resize(k);
    hi[d].resize(k);
    for (std::size_t t = 0; t < k; ++t) {
      const int a = tick(rng), b = tick(rng);
      lo[d][t] = std::min(a, b) * 0.05;
      hi[d][t] = std::max(a, b) * 0.05;
    }
  }
  return AMIVMoments::make(w, lo, hi, {0.0, 0.0}, {1.0, 1.0});
}

}  // namespace mrb::testgen
