#include "mdc/simulate.hpp"

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "mdc/error.hpp"
#include "mdc/rng.hpp"

namespace mdc {

namespace {

constexpr int kMaxSimulatedPaths = 16;

struct Tally {
  std::uint64_t u1_required = 0;
  std::uint64_t u2_required = 0;
  std::uint64_t u1_surplus = 0;
  std::uint64_t u2_surplus = 0;
  std::uint64_t required_total = 0;
  std::uint64_t required_ok = 0;
  std::vector<std::uint64_t> counts;

  explicit Tally(std::size_t cells) : counts(cells, 0) {}

  Tally& operator+=(const Tally& o) {
    u1_required += o.u1_required;
    u2_required += o.u2_required;
    u1_surplus += o.u1_surplus;
    u2_surplus += o.u2_surplus;
    required_total += o.required_total;
    required_ok += o.required_ok;
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
    return *this;
  }
};

// Everything a trial needs that depends only on the drawn mask.
struct MaskPlan {
  std::optional<Decoder> decoder;
  BlockagePattern mask;
  int level = 0;  // 0: in no group
};

class Experiment {
 public:
  Experiment(const CodingScheme& s, const Grouping& g, const NetworkConfig& cfg)
      : scheme_(s), cfg_(cfg) {
    cfg.validate();
    s.validate();
    if (s.num_paths != cfg.num_paths || g.num_paths() != cfg.num_paths)
      throw Error(ErrorKind::InvalidInput,
                  "scheme, grouping and configuration disagree on the number "
                  "of paths");
    if (cfg.num_paths > kMaxSimulatedPaths)
      throw Error(ErrorKind::InvalidInput,
                  "simulation supports at most " +
                      std::to_string(kMaxSimulatedPaths) + " paths");
    const std::uint32_t cells = 1u << cfg.num_paths;
    plans_.reserve(cells);
    for (std::uint32_t bits = 0; bits < cells; ++bits) {
      const auto mask = bits == 0 ? BlockagePattern::all_blocked(cfg.num_paths)
                                  : BlockagePattern::from_bits(cfg.num_paths, bits);
      int level = 0;
      if (g.g1().contains(mask)) level = 1;
      if (g.g2().contains(mask)) level = 2;
      plans_.push_back({Decoder(s, mask), mask, level});
    }
  }

  std::size_t cells() const { return plans_.size(); }

  void run_trial(std::uint64_t seed, std::uint64_t trial, Tally& t) const {
    auto rng = SplitMix64::substream(seed, trial);
    const int e = cfg_.num_paths;
    std::uint32_t bits = 0;
    for (int i = 1; i <= e; ++i) {
      const bool blocked = rng.uniform() < cfg_.blockage_probs[i - 1];
      if (!blocked) bits |= 1u << (e - i);
    }
    ++t.counts[bits];
    Message m;
    m.u1.resize(scheme_.k1);
    m.u2.resize(scheme_.k2);
    for (auto& x : m.u1) x = static_cast<Element>(rng.below(scheme_.field_order));
    for (auto& x : m.u2) x = static_cast<Element>(rng.below(scheme_.field_order));

    const MaskPlan& plan = plans_[bits];
    const auto received = apply_mask(encode(scheme_, m), plan.mask);
    const DecodeResult out = plan.decoder->apply(received);
    const bool u1 = out.u1 && *out.u1 == m.u1;
    const bool u2 = out.u2 && *out.u2 == m.u2;

    if (plan.level >= 1) {
      ++t.required_total;
      if (u1 && (plan.level == 1 || u2)) ++t.required_ok;
    }
    if (u1) ++(plan.level >= 1 ? t.u1_required : t.u1_surplus);
    if (u2) ++(plan.level == 2 ? t.u2_required : t.u2_surplus);
  }

 private:
  const CodingScheme& scheme_;
  const NetworkConfig& cfg_;
  std::vector<MaskPlan> plans_;
};

SimulationResult summarize(const Tally& t, const Grouping& g,
                           const NetworkConfig& cfg, std::uint64_t trials,
                           std::uint64_t seed) {
  SimulationResult r;
  r.trials = trials;
  r.seed = seed;
  const double n = static_cast<double>(trials);
  r.empirical_p_u1 = static_cast<double>(t.u1_required) / n;
  r.empirical_p_u2 = static_cast<double>(t.u2_required) / n;
  r.surplus_p_u1 = static_cast<double>(t.u1_surplus) / n;
  r.surplus_p_u2 = static_cast<double>(t.u2_surplus) / n;
  r.required_success_rate =
      t.required_total == 0
          ? 1.0
          : static_cast<double>(t.required_ok) /
                static_cast<double>(t.required_total);
  r.analytic_p_u1 = decode_probability(g, cfg, 1);
  r.analytic_p_u2 = decode_probability(g, cfg, 2);
  r.stderr_u1 = std::sqrt(r.empirical_p_u1 * (1 - r.empirical_p_u1) / n);
  r.stderr_u2 = std::sqrt(r.empirical_p_u2 * (1 - r.empirical_p_u2) / n);
  r.pattern_counts = t.counts;
  return r;
}

void check_trials(std::uint64_t trials) {
  if (trials == 0)
    throw Error(ErrorKind::InvalidInput, "number of trials must be positive");
}

}  // namespace

SimulationResult run_monte_carlo_serial(const CodingScheme& s,
                                        const Grouping& g,
                                        const NetworkConfig& cfg,
                                        std::uint64_t trials,
                                        std::uint64_t seed) {
  check_trials(trials);
  const Experiment ex(s, g, cfg);
  Tally total(ex.cells());
  for (std::uint64_t i = 0; i < trials; ++i) ex.run_trial(seed, i, total);
  return summarize(total, g, cfg, trials, seed);
}

SimulationResult run_monte_carlo(const CodingScheme& s, const Grouping& g,
                                 const NetworkConfig& cfg,
                                 std::uint64_t trials, std::uint64_t seed) {
  check_trials(trials);
  const Experiment ex(s, g, cfg);
  Tally total(ex.cells());
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel
  {
    Tally local(ex.cells());
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i)
      ex.run_trial(seed, static_cast<std::uint64_t>(i), local);
#pragma omp critical
    total += local;
  }
  return summarize(total, g, cfg, trials, seed);
}

DeviationReport compare_with_analytic(const SimulationResult& r,
                                      const Grouping& g,
                                      const NetworkConfig& cfg) {
  DeviationReport d;
  const double a1 = decode_probability(g, cfg, 1);
  const double a2 = decode_probability(g, cfg, 2);
  d.delta_u1 = r.empirical_p_u1 - a1;
  d.delta_u2 = r.empirical_p_u2 - a2;
  d.required_all_decoded = r.required_success_rate == 1.0;
  d.u1_within_tolerance = r.empirical_p_u1 >= a1 - 3 * r.stderr_u1;
  d.u2_within_tolerance = r.empirical_p_u2 >= a2 - 3 * r.stderr_u2;
  d.benign_surplus = r.surplus_p_u1 > 0 || r.surplus_p_u2 > 0;
  d.passed = d.required_all_decoded && d.u1_within_tolerance &&
             d.u2_within_tolerance;
  return d;
}

ChiSquareResult pattern_chi_square(const SimulationResult& r,
                                   const NetworkConfig& cfg) {
  ChiSquareResult out;
  const int e = cfg.num_paths;
  if (r.pattern_counts.size() != (std::size_t{1} << e))
    throw Error(ErrorKind::InvalidInput,
                "pattern counts do not match the configuration");
  int cells = 0;
  for (std::uint32_t bits = 0; bits < r.pattern_counts.size(); ++bits) {
    double p = 1;
    for (int i = 1; i <= e; ++i) {
      const double q = cfg.blockage_probs[i - 1];
      p *= ((bits >> (e - i)) & 1u) ? 1 - q : q;
    }
    const double expected = p * static_cast<double>(r.trials);
    const double observed = static_cast<double>(r.pattern_counts[bits]);
    if (expected == 0) {
      if (observed > 0) out.impossible_draw = true;
      continue;
    }
    out.statistic += (observed - expected) * (observed - expected) / expected;
    ++cells;
  }
  out.degrees_of_freedom = cells - 1;
  if (out.degrees_of_freedom >= 1) {
    boost::math::chi_squared dist(out.degrees_of_freedom);
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  }
  if (out.impossible_draw) out.p_value = 0;
  return out;
}

nlohmann::json to_json(const SimulationResult& r) {
  nlohmann::json counts = nlohmann::json::object();
  const int e = static_cast<int>(std::log2(static_cast<double>(r.pattern_counts.size())));
  for (std::uint32_t bits = 0; bits < r.pattern_counts.size(); ++bits) {
    std::string key(e, '0');
    for (int i = 0; i < e; ++i)
      if ((bits >> (e - 1 - i)) & 1u) key[i] = '1';
    counts[key] = r.pattern_counts[bits];
  }
  return {
      {"trials", r.trials},
      {"seed", r.seed},
      {"empirical_p_u1", r.empirical_p_u1},
      {"empirical_p_u2", r.empirical_p_u2},
      {"surplus_p_u1", r.surplus_p_u1},
      {"surplus_p_u2", r.surplus_p_u2},
      {"required_success_rate", r.required_success_rate},
      {"analytic_p_u1", r.analytic_p_u1},
      {"analytic_p_u2", r.analytic_p_u2},
      {"stderr_u1", r.stderr_u1},
      {"stderr_u2", r.stderr_u2},
      {"pattern_counts", counts},
  };
}

nlohmann::json to_json(const DeviationReport& d) {
  return {
      {"delta_u1", d.delta_u1},
      {"delta_u2", d.delta_u2},
      {"required_all_decoded", d.required_all_decoded},
      {"u1_within_tolerance", d.u1_within_tolerance},
      {"u2_within_tolerance", d.u2_within_tolerance},
      {"benign_surplus", d.benign_surplus},
      {"passed", d.passed},
  };
}

}  // namespace mdc
