// Serial reference against the OpenMP kernels on synthetic systems.

#include <benchmark/benchmark.h>

#include "h2grid/dispatch.hpp"
#include "h2grid/synthetic.hpp"

using namespace h2grid;

namespace {

grid::PowerSystem system_of(int nodes, int hours) {
  synth::SyntheticSpec spec;
  spec.n_nodes = nodes;
  spec.n_lines = nodes + nodes / 2;
  spec.hours = hours;
  spec.peak_demand_mw = 250.0 * nodes;
  return synth::generate_synthetic_system(spec);
}

void run_year(benchmark::State& state, dispatch::Mode mode, bool parallel) {
  const auto sys = system_of(static_cast<int>(state.range(0)), 168);
  dispatch::RunOptions opt;
  opt.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(dispatch::run_year(sys, sys.hours(), mode, opt).mean_price);
  state.SetItemsProcessed(state.iterations() * sys.hours());
}

void BM_RunYearUniformSerial(benchmark::State& s) { run_year(s, dispatch::Mode::UniformRedispatch, false); }
void BM_RunYearUniformParallel(benchmark::State& s) { run_year(s, dispatch::Mode::UniformRedispatch, true); }
void BM_RunYearNodalSerial(benchmark::State& s) { run_year(s, dispatch::Mode::Nodal, false); }
void BM_RunYearNodalParallel(benchmark::State& s) { run_year(s, dispatch::Mode::Nodal, true); }

void ptdf(benchmark::State& state, bool parallel) {
  const auto sys = system_of(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    auto m = parallel ? grid::compute_ptdf_parallel(sys.nodes(), sys.lines(), 0)
                      : grid::compute_ptdf(sys.nodes(), sys.lines(), 0);
    benchmark::DoNotOptimize(m);
  }
}

void BM_PtdfSerial(benchmark::State& s) { ptdf(s, false); }
void BM_PtdfParallel(benchmark::State& s) { ptdf(s, true); }

}  // namespace

BENCHMARK(BM_RunYearUniformSerial)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunYearUniformParallel)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RunYearNodalSerial)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunYearNodalParallel)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PtdfSerial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PtdfParallel)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
