#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mdc {

/// Availability of each of the E edge-disjoint paths. Path 1 is the
/// leftmost character of the text form, so "110" means paths 1 and 2 are up.
///
/// Patterns compare in the same order as their text forms. The all-blocked
/// vector is only constructible through all_blocked(), which the simulator
/// uses for a draw in which every path failed.
class BlockagePattern {
 public:
  static constexpr int kMaxPaths = 30;

  // Throws Error(Parse) with the offending character position.
  static BlockagePattern parse(std::string_view text);

  // Bit (E - i) of `bits` is path i; rejects zero and out-of-range values.
  static BlockagePattern from_bits(int num_paths, std::uint32_t bits);

  static BlockagePattern all_unblocked(int num_paths);
  static BlockagePattern all_blocked(int num_paths);

  int num_paths() const noexcept { return num_paths_; }
  std::uint32_t bits() const noexcept { return bits_; }

  // 1-based path index.
  bool unblocked(int path) const;
  int count() const noexcept;
  bool is_all_blocked() const noexcept { return bits_ == 0; }
  bool is_all_unblocked() const noexcept;

  // True when every unblocked path of *this is also unblocked in `other`.
  bool subset_of(const BlockagePattern& other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }

  std::string to_string() const;

  friend auto operator<=>(const BlockagePattern&,
                          const BlockagePattern&) = default;
  friend bool operator==(const BlockagePattern&,
                         const BlockagePattern&) = default;

 private:
  BlockagePattern(int num_paths, std::uint32_t bits)
      : num_paths_(num_paths), bits_(bits) {}

  int num_paths_ = 0;
  std::uint32_t bits_ = 0;
};

using PatternSet = std::set<BlockagePattern>;

struct NetworkConfig {
  int num_paths = 0;
  double capacity = 1.0;
  std::vector<double> blockage_probs;

  // Throws Error(InvalidConfiguration) on any violated invariant.
  void validate() const;
};

/// The two priority groups. Group 1 patterns must deliver U1; group 2
/// patterns must deliver both U1 and U2.
class Grouping {
 public:
  static constexpr int kPriorityLevels = 2;

  // Rejects overlapping groups and patterns of the wrong length. Does not
  // check the ordering assumptions; see validate_grouping().
  Grouping(int num_paths, PatternSet g1, PatternSet g2);

  int num_paths() const noexcept { return num_paths_; }
  const PatternSet& g1() const noexcept { return g1_; }
  const PatternSet& g2() const noexcept { return g2_; }
  const PatternSet& group(int level) const;
  PatternSet all_patterns() const;
  bool empty() const noexcept { return g1_.empty() && g2_.empty(); }

 private:
  int num_paths_;
  PatternSet g1_;
  PatternSet g2_;
};

struct KappaResult {
  int kappa = 0;
  BlockagePattern bstar;
};

struct GroupingReport {
  bool a1_holds = true;
  bool a2_holds = true;
  bool rule_111_holds = true;
  std::optional<int> kappa1;
  std::optional<int> kappa2;
  std::optional<BlockagePattern> bstar1;
  std::optional<BlockagePattern> bstar2;
  std::vector<std::string> violations;

  bool conforming() const noexcept {
    return a1_holds && a2_holds && rule_111_holds;
  }
};

// All 2^E - 1 non-zero patterns in ascending order.
std::vector<BlockagePattern> enumerate_patterns(int num_paths);

// 1-based indices of the unblocked paths.
std::vector<int> unblocked_set(const BlockagePattern& b);

double pattern_probability(const BlockagePattern& b, const NetworkConfig& cfg);

// Minimum unblocked-path count and the lexicographically smallest minimizer.
KappaResult kappa(const PatternSet& group);

// Every pattern attaining the minimum, ascending.
std::vector<BlockagePattern> kappa_minimizers(const PatternSet& group);

GroupingReport validate_grouping(const Grouping& g);

// Probability that the patterns of levels >= `level` occur.
double decode_probability(const Grouping& g, const NetworkConfig& cfg,
                          int level);

}  // namespace mdc
