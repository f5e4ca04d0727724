#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mrb/setcore.hpp"

namespace mrb {

// ------------------------------------------------------- intersection model

// Conditional means of the observable lower/upper bounds per support point of Z.
struct BoundsMoments {
  std::vector<std::string> z_labels;
  std::vector<double> weights;
  std::vector<double> lower_mean;
  std::vector<double> upper_mean;

  // Validates positivity, normalization and lower <= upper per point.
  static BoundsMoments make(std::vector<std::string> labels, std::vector<double> weights,
                            std::vector<double> lower, std::vector<double> upper);
  std::size_t size() const { return weights.size(); }
};

// Columns of nonnegative weights over the support points of Z.
struct Instrument {
  std::vector<std::vector<double>> columns;
};

// ------------------------------------------------------------ binary IV

// q[i][j][z] = P(Y=i, D=j | Z=z).
struct BinaryIVData {
  std::array<std::array<std::array<double, 2>, 2>, 2> q{};

  // Each cell vector is ordered (q11, q01, q10, q00).
  static BinaryIVData make(const std::array<double, 4>& z0, const std::array<double, 4>& z1);
  double at(int i, int j, int z) const { return q[i][j][z]; }
  std::array<double, 4> cell(int z) const { return {q[1][1][z], q[0][1][z], q[1][0][z], q[0][0][z]}; }
};

// Bit k-1 stands for assumption a_k.
using BivCombo = std::uint8_t;
inline constexpr BivCombo kA1 = 1, kA2 = 2, kA3 = 4, kA4 = 8, kA5 = 16;
inline constexpr BivCombo kFullCombo = 31;

// Coordinate order of the potential-mean vector.
enum BivCoord : std::size_t { kT11 = 0, kT10 = 1, kT01 = 2, kT00 = 3 };

std::string combo_name(BivCombo c);
BivCombo combo_from_names(const std::vector<std::string>& names);

// -------------------------------------------------------------- AMIV

struct AMIVMoments {
  std::size_t k = 0;
  std::vector<double> z_weights;
  // Index [d][t], t = 0..k-1 for instrument values 1..k.
  std::array<std::vector<double>, 2> q_lower;
  std::array<std::vector<double>, 2> q_upper;
  std::array<double, 2> y_lower{};
  std::array<double, 2> y_upper{};

  static AMIVMoments make(std::vector<double> weights, std::array<std::vector<double>, 2> q_lower,
                          std::array<std::vector<double>, 2> q_upper, std::array<double, 2> y_lower,
                          std::array<double, 2> y_upper);
};

// ---------------------------------------------------- capacity models

struct CapacityValue {
  double value = 0.0;
  double se = 0.0;  // Monte-Carlo standard error; zero for analytic capacities
};

// (K as a bitmask over the outcome support, covariate index, theta) -> L(K, x; theta).
using CapacityFn = std::function<CapacityValue(std::uint32_t, std::size_t, std::span<const double>)>;

// Finite random set over the outcome support whose outcome probabilities are affine in theta:
// P(set_j) = coeffs[j][0] + sum_m coeffs[j][m+1] * theta_m, identical across covariates.
struct RandomSetSpec {
  std::vector<std::uint32_t> sets;
  std::vector<std::vector<double>> coeffs;

  double probability(std::size_t j, std::span<const double> theta) const;
  // Containment functional: probability that the random set hits K.
  double hitting(std::uint32_t k, std::span<const double> theta) const;
};

struct FiniteCapacityModel {
  std::vector<std::string> y_support;
  std::vector<std::string> x_support;
  std::vector<std::vector<double>> p_y_given_x;  // [x][y]
  CapacityFn capacity;
  std::vector<std::vector<double>> theta_axes;
  // Present for analytic random-set capacities; lets oracles check selectionability directly.
  std::optional<RandomSetSpec> random_set;

  void validate() const;
  std::uint32_t all_outcomes() const { return (std::uint32_t{1} << y_support.size()) - 1; }
  double p_in(std::uint32_t k, std::size_t x) const;
};

FiniteCapacityModel random_set_model(std::vector<std::string> y_support, std::vector<std::string> x_support,
                                     std::vector<std::vector<double>> p_y_given_x, RandomSetSpec spec,
                                     std::vector<std::vector<double>> theta_axes);

}  // namespace mrb
