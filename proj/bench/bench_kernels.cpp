// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "mdc/codes.hpp"
#include "mdc/oracle.hpp"
#include "mdc/simulate.hpp"

namespace {

using namespace mdc;

void BM_MonteCarlo(benchmark::State& state, bool parallel) {
  const auto g = test::example5();
  const auto cfg = test::config(3);
  const auto s = build_scheme(g, cfg, {1, 1});
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto r = parallel ? run_monte_carlo(s, g, cfg, trials, 1)
                      : run_monte_carlo_serial(s, g, cfg, trials, 1);
    benchmark::DoNotOptimize(r.empirical_p_u2);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// A grouping whose subspace walk cannot be cut short by the depth-0 bound.
void BM_OracleSearch(benchmark::State& state, Execution exec) {
  const auto g = test::grouping({"010", "011", "101", "110"}, {"111"});
  const auto cfg = test::config(3);
  const int n = static_cast<int>(state.range(0));
  SearchLimits limits;
  limits.execution = exec;
  for (auto _ : state) {
    auto v = search_linear_scheme(g, cfg, n, 2, n, n + 1, 0, 0, limits);
    benchmark::DoNotOptimize(v.attempts);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_MonteCarlo, serial, false)->Arg(10000)->Arg(100000);
BENCHMARK_CAPTURE(BM_MonteCarlo, parallel, true)->Arg(10000)->Arg(100000);
BENCHMARK_CAPTURE(BM_OracleSearch, serial, Execution::Serial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_OracleSearch, parallel, Execution::Parallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
