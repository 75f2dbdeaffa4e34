#include "mdc/patterns.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "mdc/error.hpp"

namespace mdc {

namespace {

void check_num_paths(int num_paths) {
  if (num_paths < 2 || num_paths > BlockagePattern::kMaxPaths)
    throw Error(ErrorKind::InvalidConfiguration,
                "number of paths must be in [2, " +
                    std::to_string(BlockagePattern::kMaxPaths) + "], got " +
                    std::to_string(num_paths));
}

std::uint32_t full_mask(int num_paths) {
  return num_paths >= 32 ? ~0u : (1u << num_paths) - 1u;
}

std::string join(const PatternSet& set) {
  std::string out = "{";
  for (const auto& b : set) {
    if (out.size() > 1) out += ",";
    out += b.to_string();
  }
  return out + "}";
}

}  // namespace

BlockagePattern BlockagePattern::parse(std::string_view text) {
  const int n = static_cast<int>(text.size());
  if (n < 2 || n > kMaxPaths)
    throw Error(ErrorKind::Parse, "pattern '" + std::string(text) +
                                      "' must have between 2 and " +
                                      std::to_string(kMaxPaths) + " characters");
  std::uint32_t bits = 0;
  for (int i = 0; i < n; ++i) {
    const char c = text[i];
    if (c != '0' && c != '1')
      throw Error(ErrorKind::Parse, "pattern '" + std::string(text) +
                                        "': invalid character '" +
                                        std::string(1, c) + "' at position " +
                                        std::to_string(i + 1));
    bits = (bits << 1) | static_cast<std::uint32_t>(c == '1');
  }
  if (bits == 0)
    throw Error(ErrorKind::Parse,
                "pattern '" + std::string(text) + "' has no unblocked path");
  return BlockagePattern(n, bits);
}

BlockagePattern BlockagePattern::from_bits(int num_paths, std::uint32_t bits) {
  check_num_paths(num_paths);
  if (bits == 0 || (bits & ~full_mask(num_paths)) != 0)
    throw Error(ErrorKind::InvalidInput,
                "pattern bits out of range for " + std::to_string(num_paths) +
                    " paths");
  return BlockagePattern(num_paths, bits);
}

BlockagePattern BlockagePattern::all_unblocked(int num_paths) {
  check_num_paths(num_paths);
  return BlockagePattern(num_paths, full_mask(num_paths));
}

BlockagePattern BlockagePattern::all_blocked(int num_paths) {
  check_num_paths(num_paths);
  return BlockagePattern(num_paths, 0);
}

bool BlockagePattern::unblocked(int path) const {
  if (path < 1 || path > num_paths_)
    throw Error(ErrorKind::InvalidInput,
                "path index " + std::to_string(path) + " out of range");
  return (bits_ >> (num_paths_ - path)) & 1u;
}

int BlockagePattern::count() const noexcept { return std::popcount(bits_); }

bool BlockagePattern::is_all_unblocked() const noexcept {
  return num_paths_ > 0 && bits_ == full_mask(num_paths_);
}

std::string BlockagePattern::to_string() const {
  std::string s(num_paths_, '0');
  for (int i = 0; i < num_paths_; ++i)
    if ((bits_ >> (num_paths_ - 1 - i)) & 1u) s[i] = '1';
  return s;
}

void NetworkConfig::validate() const {
  check_num_paths(num_paths);
  if (!(capacity > 0.0) || !std::isfinite(capacity))
    throw Error(ErrorKind::InvalidConfiguration, "capacity must be positive");
  if (static_cast<int>(blockage_probs.size()) != num_paths)
    throw Error(ErrorKind::InvalidConfiguration,
                "expected " + std::to_string(num_paths) +
                    " blockage probabilities, got " +
                    std::to_string(blockage_probs.size()));
  for (std::size_t i = 0; i < blockage_probs.size(); ++i) {
    const double q = blockage_probs[i];
    if (!(q >= 0.0 && q <= 1.0))
      throw Error(ErrorKind::InvalidConfiguration,
                  "blockage probability of path " + std::to_string(i + 1) +
                      " is outside [0, 1]");
  }
}

Grouping::Grouping(int num_paths, PatternSet g1, PatternSet g2)
    : num_paths_(num_paths), g1_(std::move(g1)), g2_(std::move(g2)) {
  check_num_paths(num_paths_);
  for (const PatternSet* set : {&g1_, &g2_}) {
    for (const auto& b : *set) {
      if (b.num_paths() != num_paths_)
        throw Error(ErrorKind::InvalidInput,
                    "pattern " + b.to_string() + " does not have " +
                        std::to_string(num_paths_) + " paths");
      if (b.is_all_blocked())
        throw Error(ErrorKind::InvalidInput,
                    "the all-blocked pattern cannot belong to a group");
    }
  }
  for (const auto& b : g1_)
    if (g2_.contains(b))
      throw Error(ErrorKind::InvalidInput,
                  "pattern " + b.to_string() + " appears in both groups");
}

const PatternSet& Grouping::group(int level) const {
  if (level == 1) return g1_;
  if (level == 2) return g2_;
  throw Error(ErrorKind::InvalidInput,
              "priority level must be 1 or 2, got " + std::to_string(level));
}

PatternSet Grouping::all_patterns() const {
  PatternSet all = g1_;
  all.insert(g2_.begin(), g2_.end());
  return all;
}

std::vector<BlockagePattern> enumerate_patterns(int num_paths) {
  check_num_paths(num_paths);
  if (num_paths > 24)
    throw Error(ErrorKind::InvalidConfiguration,
                "refusing to enumerate 2^" + std::to_string(num_paths) +
                    " patterns");
  std::vector<BlockagePattern> out;
  out.reserve((std::size_t{1} << num_paths) - 1);
  for (std::uint32_t bits = 1; bits <= full_mask(num_paths); ++bits)
    out.push_back(BlockagePattern::from_bits(num_paths, bits));
  return out;
}

std::vector<int> unblocked_set(const BlockagePattern& b) {
  std::vector<int> out;
  for (int i = 1; i <= b.num_paths(); ++i)
    if (b.unblocked(i)) out.push_back(i);
  return out;
}

double pattern_probability(const BlockagePattern& b, const NetworkConfig& cfg) {
  if (b.num_paths() != cfg.num_paths ||
      static_cast<int>(cfg.blockage_probs.size()) != cfg.num_paths)
    throw Error(ErrorKind::InvalidInput,
                "pattern " + b.to_string() + " does not match a " +
                    std::to_string(cfg.num_paths) + "-path configuration");
  double p = 1.0;
  for (int i = 1; i <= cfg.num_paths; ++i) {
    const double q = cfg.blockage_probs[i - 1];
    p *= b.unblocked(i) ? 1.0 - q : q;
  }
  return p;
}

std::vector<BlockagePattern> kappa_minimizers(const PatternSet& group) {
  if (group.empty())
    throw Error(ErrorKind::EmptyGroup, "kappa of an empty group is undefined");
  int best = BlockagePattern::kMaxPaths + 1;
  for (const auto& b : group) best = std::min(best, b.count());
  std::vector<BlockagePattern> out;
  for (const auto& b : group)
    if (b.count() == best) out.push_back(b);
  return out;
}

KappaResult kappa(const PatternSet& group) {
  const auto minimizers = kappa_minimizers(group);
  // PatternSet iterates in text order, so the first minimizer is the
  // lexicographically smallest.
  return {minimizers.front().count(), minimizers.front()};
}

GroupingReport validate_grouping(const Grouping& g) {
  GroupingReport r;
  if (!g.g1().empty()) {
    const auto k = kappa(g.g1());
    r.kappa1 = k.kappa;
    r.bstar1 = k.bstar;
  }
  if (!g.g2().empty()) {
    const auto k = kappa(g.g2());
    r.kappa2 = k.kappa;
    r.bstar2 = k.bstar;
  }
  if (r.kappa1 && r.kappa2 && *r.kappa1 > *r.kappa2) {
    r.a1_holds = false;
    r.violations.push_back("A1: kappa1 = " + std::to_string(*r.kappa1) +
                           " exceeds kappa2 = " + std::to_string(*r.kappa2) +
                           " (" + r.bstar1->to_string() + " vs " +
                           r.bstar2->to_string() + ")");
  }
  for (const auto& b2 : g.g2()) {
    for (const auto& b1 : g.g1()) {
      if (b2.subset_of(b1)) {
        r.a2_holds = false;
        r.violations.push_back("A2: unblocked paths of group-2 pattern " +
                               b2.to_string() +
                               " are contained in those of group-1 pattern " +
                               b1.to_string());
      }
    }
  }
  if (!g.g2().empty()) {
    for (const auto& b1 : g.g1()) {
      if (b1.is_all_unblocked()) {
        r.rule_111_holds = false;
        r.violations.push_back("all-unblocked pattern " + b1.to_string() +
                               " must be in group 2 when group 2 " +
                               join(g.g2()) + " is non-empty");
      }
    }
  }
  return r;
}

double decode_probability(const Grouping& g, const NetworkConfig& cfg,
                          int level) {
  if (level != 1 && level != 2)
    throw Error(ErrorKind::InvalidInput,
                "priority level must be 1 or 2, got " + std::to_string(level));
  double p = 0.0;
  for (int j = level; j <= Grouping::kPriorityLevels; ++j)
    for (const auto& b : g.group(j)) p += pattern_probability(b, cfg);
  return p;
}

}  // namespace mdc
