#include "mdc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "mdc/error.hpp"
#include "mdc/rng.hpp"

namespace mdc {

namespace {

Matrix unit_columns(int field_order, int k, int first, int count) {
  Matrix m(field_order, k, count);
  for (int j = 0; j < count; ++j) m(first + j, j) = 1;
  return m;
}

bool recoverable(const Matrix& received, const Matrix& unit) {
  if (unit.cols() == 0) return true;
  return rank(received) == rank(received.hstack(unit));
}

// ---------------------------------------------------------------------------
// Exhaustive search over per-path column spaces.

struct Requirement {
  std::vector<int> paths;  // 0-based, ascending
  bool both = false;       // group 2: all of (u1, u2)
};

enum class Outcome { Found, Exhausted, Aborted };

class SubspaceSearch {
 public:
  SubspaceSearch(const Grouping& g, int n, int q, int k1, int k2)
      : e_(g.num_paths()),
        k_(k1 + k2),
        k1_(k1),
        d_(std::min(n, k1 + k2)),
        q_(q) {
    // Search order: paths that appear in more patterns first, so that
    // patterns complete, and prune, as early as possible.
    std::vector<int> weight(e_, 0);
    for (const auto& b : g.all_patterns())
      for (int p : unblocked_set(b)) weight[p - 1] += 1 + e_ - b.count();
    order_.resize(e_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return weight[a] > weight[b]; });
    std::vector<int> position(e_);
    for (int i = 0; i < e_; ++i) position[order_[i]] = i;
    for (int level : {1, 2})
      for (const auto& b : g.group(level)) {
        Requirement r;
        for (int p : unblocked_set(b)) r.paths.push_back(position[p - 1]);
        std::sort(r.paths.begin(), r.paths.end());
        r.both = level == 2;
        reqs_.push_back(std::move(r));
      }
    complete_at_.resize(e_);
    partial_at_.resize(e_);
    must_w1_.assign(e_, false);
    must_full_.assign(e_, false);
    for (std::size_t i = 0; i < reqs_.size(); ++i) {
      const auto& r = reqs_[i];
      complete_at_[r.paths.back()].push_back(static_cast<int>(i));
      for (int t = r.paths.front(); t < r.paths.back(); ++t)
        partial_at_[t].push_back(static_cast<int>(i));
      if (r.paths.size() == 1) {
        (r.both ? must_full_ : must_w1_)[r.paths.front()] = true;
      }
    }
  }

  // False when the candidate lists would exceed `cap` entries per path.
  bool prepare(std::uint64_t cap) {
    if (gaussian_binomial(k_, d_, q_) > cap) return false;
    storage_ = enumerate_subspaces(k_, d_, q_);
    const auto& all = storage_;
    const Matrix w1 = unit_columns(q_, k_, 0, k1_).transpose();
    std::vector<bool> has_w1(all.size());
    for (std::size_t i = 0; i < all.size(); ++i)
      has_w1[i] = k1_ == 0 || rank(all[i].vstack(w1)) == d_;
    candidates_.assign(e_, {});
    for (int p = 0; p < e_; ++p) {
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (must_w1_[p] && !has_w1[i]) continue;
        if (must_full_[p] && d_ < k_) continue;
        candidates_[p].push_back(&all[i]);
      }
    }
    return true;
  }

  std::size_t top_level_size() const { return candidates_[0].size(); }

  // Explores the subtree with path 0 fixed to candidate `top`.
  Outcome explore(std::size_t top, std::uint64_t cap, std::uint64_t& nodes,
                  std::vector<const Matrix*>& chosen) const {
    chosen.assign(e_, nullptr);
    chosen[0] = candidates_[0][top];
    ++nodes;
    if (nodes > cap) return Outcome::Aborted;
    if (!consistent(0, chosen)) return Outcome::Exhausted;
    if (e_ == 1) return Outcome::Found;
    return dfs(1, cap, nodes, chosen);
  }

  Matrix generator(const std::vector<const Matrix*>& chosen, int n) const {
    Matrix g(q_, k_, e_ * n);
    for (int p = 0; p < e_; ++p) {
      const int path = order_[p];
      for (int j = 0; j < chosen[p]->rows(); ++j)
        for (int r = 0; r < k_; ++r) g(r, path * n + j) = (*chosen[p])(j, r);
    }
    return g;
  }

 private:
  Outcome dfs(int depth, std::uint64_t cap, std::uint64_t& nodes,
              std::vector<const Matrix*>& chosen) const {
    for (const Matrix* cand : candidates_[depth]) {
      if (++nodes > cap) return Outcome::Aborted;
      chosen[depth] = cand;
      if (!consistent(depth, chosen)) continue;
      if (depth + 1 == e_) return Outcome::Found;
      const Outcome o = dfs(depth + 1, cap, nodes, chosen);
      if (o != Outcome::Exhausted) return o;
    }
    chosen[depth] = nullptr;
    return Outcome::Exhausted;
  }

  int span_rank(const std::vector<int>& paths, int upto,
                const std::vector<const Matrix*>& chosen,
                bool with_w1) const {
    int rows = with_w1 ? k1_ : 0;
    for (int p : paths)
      if (p <= upto) rows += chosen[p]->rows();
    Matrix m(q_, rows, k_);
    int r = 0;
    for (int p : paths) {
      if (p > upto) continue;
      const Matrix& v = *chosen[p];
      for (int i = 0; i < v.rows(); ++i, ++r)
        for (int c = 0; c < k_; ++c) m(r, c) = v(i, c);
    }
    if (with_w1)
      for (int i = 0; i < k1_; ++i, ++r) m(r, i) = 1;
    return row_reduce(m);
  }

  bool consistent(int depth, const std::vector<const Matrix*>& chosen) const {
    for (int idx : complete_at_[depth]) {
      const auto& r = reqs_[idx];
      const int base = span_rank(r.paths, depth, chosen, false);
      if (r.both) {
        if (base != k_) return false;
      } else if (span_rank(r.paths, depth, chosen, true) != base) {
        return false;
      }
    }
    for (int idx : partial_at_[depth]) {
      const auto& r = reqs_[idx];
      const int base = span_rank(r.paths, depth, chosen, false);
      const bool covers_w1 =
          k1_ == 0 || span_rank(r.paths, depth, chosen, true) == base;
      if (r.both) {
        // Upper bound on what the unassigned paths can still add.
        int reach = base;
        for (int p : r.paths)
          if (p > depth) reach += (must_w1_[p] && covers_w1) ? d_ - k1_ : d_;
        if (reach < k_) return false;
      }
    }
    return true;
  }

  int e_, k_, k1_, d_, q_;
  std::vector<int> order_;  // search depth -> path index
  std::vector<Requirement> reqs_;
  std::vector<std::vector<int>> complete_at_, partial_at_;
  std::vector<bool> must_w1_, must_full_;
  std::vector<Matrix> storage_;
  std::vector<std::vector<const Matrix*>> candidates_;
};

struct ExhaustiveResult {
  Outcome outcome = Outcome::Exhausted;
  std::uint64_t nodes = 0;
  std::optional<Matrix> generator;
};

// Subtrees are handled in chunks; within a chunk they run concurrently, but
// results are folded in index order with the node budget that a serial walk
// would have had, so both executions agree exactly.
ExhaustiveResult run_exhaustive(const SubspaceSearch& search, int n,
                                const SearchLimits& limits) {
  const std::size_t tops = search.top_level_size();
  ExhaustiveResult result;
#ifdef _OPENMP
  const std::size_t chunk =
      limits.execution == Execution::Parallel ? 64 : 1;
#else
  const std::size_t chunk = 1;
#endif
  for (std::size_t begin = 0; begin < tops; begin += chunk) {
    const std::size_t end = std::min(tops, begin + chunk);
    const std::uint64_t remaining = limits.node_cap - result.nodes;
    std::vector<Outcome> outcomes(end - begin);
    std::vector<std::uint64_t> nodes(end - begin, 0);
    std::vector<std::vector<const Matrix*>> chosen(end - begin);
    const auto count = static_cast<std::ptrdiff_t>(end - begin);
#pragma omp parallel for schedule(dynamic) if (limits.execution == Execution::Parallel)
    for (std::ptrdiff_t i = 0; i < count; ++i)
      outcomes[i] = search.explore(begin + i, remaining, nodes[i], chosen[i]);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      result.nodes += nodes[i];
      if (result.nodes > limits.node_cap || outcomes[i] == Outcome::Aborted) {
        result.outcome = Outcome::Aborted;
        result.nodes = std::min(result.nodes, limits.node_cap + 1);
        return result;
      }
      if (outcomes[i] == Outcome::Found) {
        result.outcome = Outcome::Found;
        result.generator = search.generator(chosen[i], n);
        return result;
      }
    }
  }
  return result;
}

CodingScheme scheme_with(int e, int n, int q, int k1, int k2, Matrix gen,
                         std::string tag) {
  CodingScheme s;
  s.num_paths = e;
  s.block_length = n;
  s.field_order = q;
  s.k1 = k1;
  s.k2 = k2;
  s.generator = std::move(gen);
  s.construction_tag = std::move(tag);
  return s;
}

}  // namespace

const char* to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::Trivial: return "trivial";
    case SearchMode::CutSet: return "cut-set";
    case SearchMode::Exhaustive: return "exhaustive";
    case SearchMode::Randomized: return "randomized";
  }
  return "trivial";
}

DecodabilityReport check_decodable(const CodingScheme& s, const Grouping& g) {
  s.validate();
  if (s.num_paths != g.num_paths())
    throw Error(ErrorKind::InvalidInput,
                "scheme and grouping disagree on the number of paths");
  const int k = s.k1 + s.k2;
  const Matrix u1 = unit_columns(s.field_order, k, 0, s.k1);
  const Matrix u2 = unit_columns(s.field_order, k, s.k1, s.k2);
  DecodabilityReport report;
  for (int level : {1, 2}) {
    for (const auto& b : g.group(level)) {
      const Matrix received = s.generator.select_columns(s.columns_for(b));
      PatternVerdict v{b, level, recoverable(received, u1), false};
      if (level == 2) v.u2_ok = recoverable(received, u2);
      if (!v.u1_ok || (level == 2 && !v.u2_ok)) report.overall_ok = false;
      report.verdicts.push_back(v);
    }
  }
  return report;
}

std::uint64_t gaussian_binomial(int k, int d, int q) {
  if (d < 0 || d > k) return 0;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  auto sat_add = [&](std::uint64_t a, std::uint64_t b) {
    return a > kMax - b ? kMax : a + b;
  };
  auto sat_mul = [&](std::uint64_t a, std::uint64_t b) {
    return (a != 0 && b > kMax / a) ? kMax : a * b;
  };
  // [k, d] = [k-1, d-1] + q^d [k-1, d]
  std::vector<std::vector<std::uint64_t>> t(k + 1,
                                            std::vector<std::uint64_t>(d + 1, 0));
  for (int i = 0; i <= k; ++i) t[i][0] = 1;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= std::min(i, d); ++j) {
      std::uint64_t qj = 1;
      for (int x = 0; x < j; ++x) qj = sat_mul(qj, static_cast<std::uint64_t>(q));
      t[i][j] = sat_add(t[i - 1][j - 1], sat_mul(qj, t[i - 1][j]));
    }
  return t[k][d];
}

std::vector<Matrix> enumerate_subspaces(int k, int d, int q) {
  std::vector<Matrix> out;
  if (d < 0 || d > k) return out;
  std::vector<int> pivots(d);
  std::iota(pivots.begin(), pivots.end(), 0);
  while (true) {
    // Free slots: row r, column c > pivots[r] with c not a pivot column.
    std::vector<std::pair<int, int>> free;
    for (int r = 0; r < d; ++r)
      for (int c = pivots[r] + 1; c < k; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
          free.emplace_back(r, c);
    std::vector<int> digits(free.size(), 0);
    while (true) {
      Matrix m(q, d, k);
      for (int r = 0; r < d; ++r) m(r, pivots[r]) = 1;
      for (std::size_t i = 0; i < free.size(); ++i)
        m(free[i].first, free[i].second) = static_cast<Element>(digits[i]);
      out.push_back(std::move(m));
      std::size_t pos = free.size();
      while (pos > 0 && ++digits[pos - 1] == q) digits[--pos] = 0;
      if (pos == 0) break;
    }
    int i = d - 1;
    while (i >= 0 && pivots[i] == k - d + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  return out;
}

AchievabilityVerdict search_linear_scheme(const Grouping& g,
                                          const NetworkConfig& cfg, int n,
                                          int q, int k1, int k2,
                                          std::uint64_t budget,
                                          std::uint64_t seed,
                                          const SearchLimits& limits) {
  if (cfg.num_paths != g.num_paths())
    throw Error(ErrorKind::InvalidInput,
                "grouping and configuration disagree on the number of paths");
  if (n < 1 || k1 < 0 || k2 < 0 || !Field::supported(q))
    throw Error(ErrorKind::InvalidInput, "invalid search parameters");
  const int e = g.num_paths();
  const int k = k1 + k2;
  AchievabilityVerdict v;
  v.rate = {Rational(k1, n), Rational(k2, n)};
  v.block_length = n;
  v.field_order = q;

  if (k == 0) {
    v.achievable = true;
    v.search_exhausted = true;
    v.mode = SearchMode::Trivial;
    v.scheme = scheme_with(e, n, q, 0, 0, Matrix(q, 0, e * n), "empty");
    return v;
  }

  // A pattern with fewer received symbols than it must decode refutes every
  // scheme at once.
  for (const auto& b : g.g1())
    if (k1 > n * b.count()) {
      v.search_exhausted = true;
      v.mode = SearchMode::CutSet;
      return v;
    }
  for (const auto& b : g.g2())
    if (k > n * b.count()) {
      v.search_exhausted = true;
      v.mode = SearchMode::CutSet;
      return v;
    }

  SubspaceSearch search(g, n, q, k1, k2);
  if (search.prepare(limits.subspace_cap)) {
    const auto r = run_exhaustive(search, n, limits);
    v.attempts = r.nodes;
    if (r.outcome != Outcome::Aborted) {
      v.mode = SearchMode::Exhaustive;
      v.search_exhausted = r.outcome == Outcome::Exhausted;
      if (r.generator) {
        v.achievable = true;
        v.scheme = scheme_with(e, n, q, k1, k2, *r.generator, "oracle-search");
      }
      return v;
    }
  }

  v.mode = SearchMode::Randomized;
  v.fallback_warning = true;
  for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
    ++v.attempts;
    auto rng = SplitMix64::substream(seed, attempt);
    std::vector<Element> entries(static_cast<std::size_t>(k) * e * n);
    for (auto& x : entries) x = static_cast<Element>(rng.below(q));
    CodingScheme s = scheme_with(e, n, q, k1, k2,
                                 Matrix(q, k, e * n, std::move(entries)),
                                 "oracle-random");
    if (check_decodable(s, g).overall_ok) {
      v.achievable = true;
      v.scheme = std::move(s);
      return v;
    }
  }
  return v;
}

std::vector<GridVerdict> sweep_rate_grid(const Grouping& g,
                                         const NetworkConfig& cfg, int max_n,
                                         const SweepOptions& options) {
  std::vector<GridVerdict> out;
  if (g.empty() || max_n < 1) return out;
  const RateRegion outer = cutset_outer_bound(g, cfg);
  const int e = g.num_paths();
  std::vector<Rate> points;
  for (int n = 1; n <= max_n; ++n)
    for (int k1 = 0; k1 <= e * n; ++k1)
      for (int k2 = 0; k2 <= e * n; ++k2) {
        const Rate r{Rational(k1, n), Rational(k2, n)};
        if (contains(outer, r) &&
            std::find(points.begin(), points.end(), r) == points.end())
          points.push_back(r);
      }
  std::sort(points.begin(), points.end(), [](const Rate& a, const Rate& b) {
    return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 < b.r2;
  });

  std::vector<int> fields;
  if (options.field_order == 0)
    fields = {2, 4};
  else
    fields = {options.field_order};

  for (const Rate& r : points) {
    const std::int64_t base = std::lcm(r.r1.denominator(), r.r2.denominator());
    AchievabilityVerdict last;
    bool all_exhausted = true;
    bool warned = false;
    std::uint64_t attempts = 0;
    bool done = false;
    for (std::int64_t n = base; n <= max_n && !done; n += base) {
      for (int q : fields) {
        SearchLimits limits = options.limits;
        if (n > options.exhaustive_max_n) limits.subspace_cap = 0;
        last = search_linear_scheme(
            g, cfg, static_cast<int>(n), q,
            static_cast<int>((r.r1 * n).numerator()),
            static_cast<int>((r.r2 * n).numerator()), options.budget,
            options.seed, limits);
        attempts += last.attempts;
        all_exhausted = all_exhausted && last.search_exhausted;
        warned = warned || last.fallback_warning;
        if (last.achievable) {
          done = true;
          break;
        }
      }
    }
    last.rate = r;
    last.attempts = attempts;
    last.search_exhausted = !last.achievable && all_exhausted;
    last.fallback_warning = warned;
    out.push_back({r, std::move(last)});
  }
  return out;
}

nlohmann::json to_json(const DecodabilityReport& r) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : r.verdicts) {
    nlohmann::json j = {{"pattern", v.pattern.to_string()},
                        {"level", v.level},
                        {"u1_ok", v.u1_ok}};
    if (v.level == 2) j["u2_ok"] = v.u2_ok;
    verdicts.push_back(std::move(j));
  }
  return {{"overall_ok", r.overall_ok}, {"verdicts", verdicts}};
}

nlohmann::json to_json(const AchievabilityVerdict& v) {
  nlohmann::json j = {
      {"r1", to_string(v.rate.r1)},
      {"r2", to_string(v.rate.r2)},
      {"block_length", v.block_length},
      {"field_order", v.field_order},
      {"achievable", v.achievable},
      {"search_exhausted", v.search_exhausted},
      {"attempts", v.attempts},
      {"mode", to_string(v.mode)},
      {"fallback_warning", v.fallback_warning},
  };
  if (v.scheme) j["scheme"] = to_json(*v.scheme);
  return j;
}

}  // namespace mdc
