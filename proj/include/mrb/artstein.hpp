#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mrb/lattice.hpp"
#include "mrb/moments.hpp"
#include "mrb/setcore.hpp"

namespace mrb {

// Capacity inequality for outcome set K, at one covariate value or (x empty) at all of them.
struct KRestriction {
  std::uint32_t k = 0;
  std::optional<std::size_t> x;

  friend bool operator==(const KRestriction&, const KRestriction&) = default;
};

std::string restriction_label(const FiniteCapacityModel& model, const KRestriction& r);

// Grid of theta satisfying P(Y in K | x) <= L(K, x; theta) (+ 3 SE for simulated capacities) for
// every restriction. An empty collection leaves the grid full.
GridSet outer_set_for_restrictions(const FiniteCapacityModel& model, const std::vector<KRestriction>& collection);
GridSet outer_set_for_collection(const FiniteCapacityModel& model, const std::vector<std::uint32_t>& collection);

// All nonempty K at every covariate value.
GridSet sharp_set(const FiniteCapacityModel& model);

struct CapacityPrechecks {
  bool positive_probabilities = false;  // every outcome has positive probability at every covariate value
  bool saturation = false;              // each singleton capacity reaches 1 somewhere on the grid
  std::vector<std::string> notes;
};

CapacityPrechecks capacity_prechecks(const FiniteCapacityModel& model);

struct DiscordantCollections {
  std::vector<KRestriction> first;
  std::vector<KRestriction> second;
  GridSet set_first;
  GridSet set_second;
};

struct DiscordanceSearch {
  std::optional<DiscordantCollections> found;
  CapacityPrechecks checks;
  std::string diagnostic;
};

// Looks for two restriction collections with nonempty, disjoint grid sets.
DiscordanceSearch find_discordant_collections(const FiniteCapacityModel& model);

// --------------------------------------------------------------- entry game

struct EntryGameSpec {
  std::array<double, 2> gamma{};
  double beta = 0.0;
  std::array<double, 2> delta{};
  std::array<std::array<double, 2>, 2> sigma{{{1.0, 0.0}, {0.0, 1.0}}};
  std::vector<std::string> x_labels;
  std::vector<std::array<double, 2>> x_values;  // player-specific covariate per support point
  std::size_t mc_draws = 100000;
  std::uint64_t seed = 0;

  void validate() const;
};

// Outcomes are indexed y1 + 2*y2: (0,0), (1,0), (0,1), (1,1).
std::vector<std::string> entry_game_outcomes();

// Parameters that may be placed on the theta grid.
enum class EntryParam { Gamma1, Gamma2, Beta, Delta1, Delta2 };
EntryParam entry_param_from_string(const std::string& s);

// Spec with the grid parameters overwritten by theta.
EntryGameSpec entry_game_at(const EntryGameSpec& base, const std::vector<EntryParam>& params,
                            std::span<const double> theta);

// Monte-Carlo containment capacity with its standard error.
CapacityValue entry_game_capacity(const EntryGameSpec& spec, std::uint32_t k, std::size_t x);

// Fraction of draws whose equilibrium set equals each of the 16 possible outcome subsets.
std::array<double, 16> entry_game_equilibrium_frequencies(const EntryGameSpec& spec, std::size_t x);

// Capacity model over a theta grid for the given parameters; capacity tables are cached per (x, theta).
FiniteCapacityModel entry_game_model(const EntryGameSpec& base, const std::vector<EntryParam>& params,
                                     std::vector<std::vector<double>> theta_axes,
                                     std::vector<std::vector<double>> p_y_given_x);

}  // namespace mrb
