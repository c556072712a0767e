// OpenMP kernels against their serial reference loops.
//   ./bfdr_bench --benchmark_filter=Simulate

#include <benchmark/benchmark.h>

#include <cmath>

#include "bfdr/mtsim.hpp"
#include "bfdr/numkernel.hpp"

using namespace bfdr;

namespace {

SimConfig sim_config(std::int64_t m) {
  const auto p = mean_problem(normal_mean_family(), builtin_prior(prior_kind::Normal{1}), 0.0, 0.05, 10);
  return SimConfig{p, m, 7, 4};
}

void BM_SimulateSerial(benchmark::State& state) {
  const auto cfg = sim_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_serial(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.replications);
}

void BM_SimulateParallel(benchmark::State& state) {
  const auto cfg = sim_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.replications);
}

// Runs to the full refinement depth; the tolerance is never met.
void riemann(benchmark::State& state, bool parallel) {
  num::QuadratureConfig cfg;
  cfg.scheme = num::QuadratureScheme::riemann_avg;
  cfg.abs_tol = 1e-300;
  cfg.max_refinements = static_cast<int>(state.range(0));
  cfg.parallel = parallel;
  const auto f = [](double x) { return num::std_normal_pdf(x) * num::std_normal_sf(1.645 - std::sqrt(10.0) * x); };
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(num::integrate(f, -8.0, 8.0, cfg));
    } catch (const num::NonConvergence& e) {
      benchmark::DoNotOptimize(e.best_estimate().value);
    }
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

void BM_RiemannSerial(benchmark::State& state) { riemann(state, false); }
void BM_RiemannParallel(benchmark::State& state) { riemann(state, true); }

}  // namespace

BENCHMARK(BM_SimulateSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RiemannSerial)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RiemannParallel)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
