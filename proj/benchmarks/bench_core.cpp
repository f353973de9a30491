#include <benchmark/benchmark.h>

#include <vector>

#include "slt/bounds.hpp"
#include "slt/brownian_mc.hpp"
#include "slt/fock_norms.hpp"
#include "slt/kernels.hpp"
#include "slt/quadrature.hpp"

namespace {

using namespace slt;

void BM_PairSum(benchmark::State& state) {
  const auto path = sample_path(1.0, 1.0 / static_cast<double>(state.range(0)), 7);
  const std::vector<double> eps{0.25, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(l_eps_riemann(path, eps));
  }
  const auto n = static_cast<double>(path.points.size());
  state.counters["pairs/s"] =
      benchmark::Counter(0.5 * n * (n - 1) * static_cast<double>(eps.size()), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_PairSum)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SamplePath(benchmark::State& state) {
  std::uint64_t stream = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_path(1.0, 1e-3, 7, stream++));
  }
}
BENCHMARK(BM_SamplePath)->Unit(benchmark::kMicrosecond);

void BM_LevelDiff(benchmark::State& state) {
  const ModelParams p{1.0, 0.1};
  const QuadratureConfig cfg;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(n == 1 ? level_one_diff_norm_sq(p, cfg) : level_diff_norm_sq(n, p, cfg));
  }
}
BENCHMARK(BM_LevelDiff)->Arg(1)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TotalDiff(benchmark::State& state) {
  const QuadratureConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(total_diff_norm_sq(ModelParams{1.0, 1.0 / 64.0}, 15, cfg));
  }
}
BENCHMARK(BM_TotalDiff)->Unit(benchmark::kMillisecond);

void BM_TriangleSchemes(benchmark::State& state) {
  QuadratureConfig cfg;
  cfg.scheme = state.range(0) == 0 ? TriangleScheme::graded_square : TriangleScheme::simplex_bisection;
  const ModelParams p{1.0, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(level_norm_sq(3, p, cfg));
  }
}
BENCHMARK(BM_TriangleSchemes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BoundSeries(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bound_series(20.0 / 11.0));
  }
}
BENCHMARK(BM_BoundSeries)->Unit(benchmark::kMicrosecond);

void BM_KernelF2n(benchmark::State& state) {
  const ModelParams p{1.0, 0.1};
  const KernelPoint x(std::vector<double>{0.1, 0.2, 0.3, 0.45, 0.6, 0.8});
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_f2n(MultiIndex{2, 1}, x, p));
  }
}
BENCHMARK(BM_KernelF2n);

}  // namespace

BENCHMARK_MAIN();
