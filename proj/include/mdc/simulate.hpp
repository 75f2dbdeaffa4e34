#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdc/codes.hpp"
#include "mdc/patterns.hpp"

namespace mdc {

struct SimulationResult {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  // Fraction of all trials in which the drawn pattern belongs to a group of
  // level >= i and U_i was decoded correctly; the empirical counterpart of
  // decode_probability(level = i).
  double empirical_p_u1 = 0;
  double empirical_p_u2 = 0;
  // Fraction of trials that decoded U_i under a pattern outside those levels.
  double surplus_p_u1 = 0;
  double surplus_p_u2 = 0;
  // Successes among trials whose pattern lies in G1 ∪ G2; 1 when none did.
  double required_success_rate = 1;
  double analytic_p_u1 = 0;
  double analytic_p_u2 = 0;
  double stderr_u1 = 0;
  double stderr_u2 = 0;
  // Draw counts indexed by pattern bits; index 0 is the all-blocked draw.
  std::vector<std::uint64_t> pattern_counts;
};

struct DeviationReport {
  double delta_u1 = 0;
  double delta_u2 = 0;
  bool required_all_decoded = true;
  bool u1_within_tolerance = true;
  bool u2_within_tolerance = true;
  bool benign_surplus = false;
  bool passed = true;
};

struct ChiSquareResult {
  double statistic = 0;
  int degrees_of_freedom = 0;
  double p_value = 1;
  // Observed draws of a pattern whose probability is zero.
  bool impossible_draw = false;
};

/// Each trial draws independent per-path blockages (path i blocked with
/// probability q_i) from its own SplitMix64 substream, encodes a uniformly
/// random message, erases the blocked paths and decodes. Parallel over trials
/// with OpenMP; identical output to run_monte_carlo_serial.
SimulationResult run_monte_carlo(const CodingScheme& s, const Grouping& g,
                                 const NetworkConfig& cfg,
                                 std::uint64_t trials, std::uint64_t seed);

SimulationResult run_monte_carlo_serial(const CodingScheme& s,
                                        const Grouping& g,
                                        const NetworkConfig& cfg,
                                        std::uint64_t trials,
                                        std::uint64_t seed);

// Tolerance is three binomial standard errors, one-sided: decoding more
// often than the analytic value is allowed.
DeviationReport compare_with_analytic(const SimulationResult& r,
                                      const Grouping& g,
                                      const NetworkConfig& cfg);

// Pearson test of the drawn pattern frequencies against the product law.
ChiSquareResult pattern_chi_square(const SimulationResult& r,
                                   const NetworkConfig& cfg);

nlohmann::json to_json(const SimulationResult& r);
nlohmann::json to_json(const DeviationReport& r);

}  // namespace mdc
