// Serial reference against the OpenMP paths: kernel grids, sampling and the
// identities suite.

#include <benchmark/benchmark.h>

#include <vector>

#include "xsf/distribution.hpp"
#include "xsf/grid.hpp"
#include "xsf/verify.hpp"

using namespace xsf;

namespace {

std::vector<BetaPoint> grid_points(double nu) {
  std::vector<BetaPoint> pts;
  for (double x : {0.5, 1.0, 2.0, 3.5})
    for (double y : {0.5, 1.0, 2.0, 3.5})
      for (double p : {0.25, 1.0, 4.0}) pts.push_back({x, y, p, nu});
  return pts;
}

void BM_BetaGrid(benchmark::State& state, Execution exec, double nu) {
  const auto pts = grid_points(nu);
  for (auto _ : state) benchmark::DoNotOptimize(beta_nu_grid(pts, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}

void BM_Sample(benchmark::State& state, Execution exec) {
  const ExtBetaDistribution d(1.5, 2.5, 0.5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(d.sample(7, state.range(0), exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_IdentitiesSuite(benchmark::State& state, Execution exec) {
  const auto manifest = load_manifest(XSF_DEFAULT_MANIFEST);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(manifest, "identities", {}, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_BetaGrid, serial_nu0, Execution::serial, 0.0)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BetaGrid, parallel_nu0, Execution::parallel, 0.0)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BetaGrid, serial_nu_half, Execution::serial, 0.5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BetaGrid, parallel_nu_half, Execution::parallel, 0.5)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sample, serial, Execution::serial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sample, parallel, Execution::parallel)
    ->Arg(100000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_IdentitiesSuite, serial, Execution::serial)->Unit(benchmark::kSecond);
BENCHMARK_CAPTURE(BM_IdentitiesSuite, parallel, Execution::parallel)->Unit(benchmark::kSecond);

BENCHMARK_MAIN();
