#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "mrb/artstein.hpp"
#include "mrb/errors.hpp"

namespace mrb {
namespace {

std::array<std::array<double, 2>, 2> cholesky(const std::array<std::array<double, 2>, 2>& s) {
  if (!std::isfinite(s[0][0]) || !std::isfinite(s[0][1]) || !std::isfinite(s[1][0]) || !std::isfinite(s[1][1]))
    throw ParameterError("covariance entries must be finite");
  if (std::fabs(s[0][1] - s[1][0]) > 1e-12) throw ParameterError("covariance matrix must be symmetric");
  if (!(s[0][0] > 0.0)) throw ParameterError("covariance matrix must be positive definite");
  const double l00 = std::sqrt(s[0][0]);
  const double l10 = s[1][0] / l00;
  const double rest = s[1][1] - l10 * l10;
  if (!(rest > 0.0)) throw ParameterError("covariance matrix must be positive definite");
  return {{{l00, 0.0}, {l10, std::sqrt(rest)}}};
}

void push_bits(std::vector<std::uint32_t>& words, double v) {
  const auto b = std::bit_cast<std::uint64_t>(v);
  words.push_back(static_cast<std::uint32_t>(b));
  words.push_back(static_cast<std::uint32_t>(b >> 32));
}

// Pure-strategy equilibrium set as a bitmask over outcomes y1 + 2*y2.
std::uint32_t equilibria(double a1, double a2, double d1, double d2) {
  std::uint32_t set = 0;
  if (a1 <= 0.0 && a2 <= 0.0) set |= 1u << 0;
  if (a1 >= 0.0 && a2 - d1 <= 0.0) set |= 1u << 1;
  if (a2 >= 0.0 && a1 - d2 <= 0.0) set |= 1u << 2;
  if (a1 - d2 >= 0.0 && a2 - d1 >= 0.0) set |= 1u << 3;
  return set;
}

CapacityValue capacity_from(const std::array<double, 16>& freq, std::uint32_t k, std::size_t draws) {
  if (k == 0 || k > 15) throw ValidationError("outcome set must be a nonempty subset of the four entry outcomes");
  double hit = 0.0;
  for (std::uint32_t s = 1; s < 16; ++s)
    if (s & k) hit += freq[s];
  hit = std::min(hit, 1.0);
  return {hit, std::sqrt(hit * (1.0 - hit) / static_cast<double>(draws))};
}

}  // namespace

void EntryGameSpec::validate() const {
  for (double d : delta)
    if (!(d >= 0.0)) throw ParameterError("interaction effects delta must be nonnegative");
  if (!std::isfinite(gamma[0]) || !std::isfinite(gamma[1]) || !std::isfinite(beta))
    throw ParameterError("payoff parameters must be finite");
  cholesky(sigma);
  if (x_labels.size() != x_values.size()) throw ParameterError("covariate labels and values differ in length");
  if (x_values.empty()) throw ParameterError("covariate support is empty");
  if (mc_draws == 0) throw ParameterError("mc_draws must be positive");
}

std::vector<std::string> entry_game_outcomes() { return {"(0,0)", "(1,0)", "(0,1)", "(1,1)"}; }

EntryParam entry_param_from_string(const std::string& s) {
  if (s == "gamma1") return EntryParam::Gamma1;
  if (s == "gamma2") return EntryParam::Gamma2;
  if (s == "beta") return EntryParam::Beta;
  if (s == "delta1") return EntryParam::Delta1;
  if (s == "delta2") return EntryParam::Delta2;
  throw ParameterError("unknown entry-game parameter '" + s + "' (expected gamma1, gamma2, beta, delta1, delta2)");
}

EntryGameSpec entry_game_at(const EntryGameSpec& base, const std::vector<EntryParam>& params,
                            std::span<const double> theta) {
  if (theta.size() != params.size()) throw DimensionError("theta length differs from the number of grid parameters");
  EntryGameSpec s = base;
  for (std::size_t i = 0; i < params.size(); ++i) {
    switch (params[i]) {
      case EntryParam::Gamma1: s.gamma[0] = theta[i]; break;
      case EntryParam::Gamma2: s.gamma[1] = theta[i]; break;
      case EntryParam::Beta: s.beta = theta[i]; break;
      case EntryParam::Delta1: s.delta[0] = theta[i]; break;
      case EntryParam::Delta2: s.delta[1] = theta[i]; break;
    }
  }
  return s;
}

std::array<double, 16> entry_game_equilibrium_frequencies(const EntryGameSpec& spec, std::size_t x) {
  spec.validate();
  if (x >= spec.x_values.size()) throw ValidationError("covariate index out of range");
  const auto l = cholesky(spec.sigma);
  // The stream depends only on the seed, the covariate cell and the parameter values.
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                                   static_cast<std::uint32_t>(x)};
  for (double v : {spec.gamma[0], spec.gamma[1], spec.beta, spec.delta[0], spec.delta[1], spec.sigma[0][0],
                   spec.sigma[0][1], spec.sigma[1][1]})
    push_bits(words, v);
  std::seed_seq seq(words.begin(), words.end());
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  const double m1 = spec.gamma[0] + spec.x_values[x][0] * spec.beta;
  const double m2 = spec.gamma[1] + spec.x_values[x][1] * spec.beta;
  std::array<std::size_t, 16> counts{};
  for (std::size_t n = 0; n < spec.mc_draws; ++n) {
    const double z1 = normal(rng);
    const double z2 = normal(rng);
    const double e1 = l[0][0] * z1;
    const double e2 = l[1][0] * z1 + l[1][1] * z2;
    ++counts[equilibria(m1 + e1, m2 + e2, spec.delta[0], spec.delta[1])];
  }
  std::array<double, 16> freq{};
  for (std::size_t s = 0; s < 16; ++s) freq[s] = static_cast<double>(counts[s]) / static_cast<double>(spec.mc_draws);
  return freq;
}

CapacityValue entry_game_capacity(const EntryGameSpec& spec, std::uint32_t k, std::size_t x) {
  return capacity_from(entry_game_equilibrium_frequencies(spec, x), k, spec.mc_draws);
}

FiniteCapacityModel entry_game_model(const EntryGameSpec& base, const std::vector<EntryParam>& params,
                                     std::vector<std::vector<double>> theta_axes,
                                     std::vector<std::vector<double>> p_y_given_x) {
  base.validate();
  if (theta_axes.size() != params.size()) throw DimensionError("one theta axis is required per grid parameter");

  struct Cache {
    std::mutex mu;
    std::map<std::pair<std::size_t, std::vector<double>>, std::array<double, 16>> table;
  };
  auto cache = std::make_shared<Cache>();

  FiniteCapacityModel model;
  model.y_support = entry_game_outcomes();
  model.x_support = base.x_labels;
  model.p_y_given_x = std::move(p_y_given_x);
  model.theta_axes = std::move(theta_axes);
  model.capacity = [base, params, cache](std::uint32_t k, std::size_t x, std::span<const double> th) {
    auto key = std::make_pair(x, std::vector<double>(th.begin(), th.end()));
    {
      std::lock_guard lock(cache->mu);
      if (auto it = cache->table.find(key); it != cache->table.end()) return capacity_from(it->second, k, base.mc_draws);
    }
    const auto freq = entry_game_equilibrium_frequencies(entry_game_at(base, params, th), x);
    std::lock_guard lock(cache->mu);
    cache->table.emplace(std::move(key), freq);
    return capacity_from(freq, k, base.mc_draws);
  };
  model.validate();
  return model;
}

}  // namespace mrb
