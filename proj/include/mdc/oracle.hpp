#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdc/capacity.hpp"
#include "mdc/codes.hpp"
#include "mdc/patterns.hpp"

namespace mdc {

struct PatternVerdict {
  BlockagePattern pattern;
  int level = 1;
  bool u1_ok = false;
  bool u2_ok = false;  // only required for level 2
};

struct DecodabilityReport {
  std::vector<PatternVerdict> verdicts;
  bool overall_ok = true;
};

// Exact rank test per pattern: U1 is recoverable from the unblocked columns
// G_b iff rank(G_b) == rank([G_b | E1]) with E1 selecting the U1 rows.
DecodabilityReport check_decodable(const CodingScheme& s, const Grouping& g);

enum class SearchMode { Trivial, CutSet, Exhaustive, Randomized };
const char* to_string(SearchMode mode);

enum class Execution { Serial, Parallel };

struct AchievabilityVerdict {
  Rate rate;
  int block_length = 1;
  int field_order = 2;
  bool achievable = false;
  std::optional<CodingScheme> scheme;
  // True when a negative answer is a proof for this (n, q).
  bool search_exhausted = false;
  std::uint64_t attempts = 0;
  SearchMode mode = SearchMode::Trivial;
  // Set when the exhaustive search was abandoned for random sampling.
  bool fallback_warning = false;
};

struct SearchLimits {
  // Partial assignments the exhaustive search may visit before giving up.
  std::uint64_t node_cap = std::uint64_t{1} << 24;
  // Largest subspace list built per path.
  std::uint64_t subspace_cap = std::uint64_t{1} << 21;
  Execution execution = Execution::Parallel;
};

/// Looks for a linear scheme with block length n over GF(q) carrying k1
/// symbols of U1 and k2 of U2.
///
/// Decodability depends only on the column space V_i spanned by each path's
/// n generator columns, and enlarging any V_i never hurts. The exhaustive
/// mode therefore walks tuples of min(n, k)-dimensional subspaces (one per
/// path, in reduced echelon order) with backtracking on the patterns whose
/// paths are already fixed, which covers every generator matrix. When that
/// walk exceeds the limits it falls back to `budget` uniformly random
/// generators drawn from `seed` and raises fallback_warning.
AchievabilityVerdict search_linear_scheme(const Grouping& g,
                                          const NetworkConfig& cfg, int n,
                                          int q, int k1, int k2,
                                          std::uint64_t budget,
                                          std::uint64_t seed,
                                          const SearchLimits& limits = {});

struct GridVerdict {
  Rate rate;
  AchievabilityVerdict verdict;
};

struct SweepOptions {
  // 0 tries GF(2) first and GF(4) when GF(2) fails.
  int field_order = 0;
  std::uint64_t budget = 2000;
  std::uint64_t seed = 0;
  // Block lengths above this use random search only.
  int exhaustive_max_n = 4;
  SearchLimits limits;
};

/// Every rate pair (k1/n, k2/n) with n <= max_n inside the cut-set bound,
/// ascending by (R1, R2). Each pair is tried at every admissible block length
/// up to max_n until a scheme is found.
std::vector<GridVerdict> sweep_rate_grid(const Grouping& g,
                                         const NetworkConfig& cfg, int max_n,
                                         const SweepOptions& options = {});

// Number of d-dimensional subspaces of GF(q)^k, saturating at UINT64_MAX.
std::uint64_t gaussian_binomial(int k, int d, int q);

// All d-dimensional subspaces of GF(q)^k as d x k reduced echelon matrices.
std::vector<Matrix> enumerate_subspaces(int k, int d, int q);

nlohmann::json to_json(const AchievabilityVerdict& v);
nlohmann::json to_json(const DecodabilityReport& r);

}  // namespace mdc
