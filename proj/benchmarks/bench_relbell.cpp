#include <benchmark/benchmark.h>

#include <numbers>

#include "relbell/averaging.hpp"
#include "relbell/correlations.hpp"
#include "relbell/solvers.hpp"

using namespace relbell;

static void BM_ChshPointwise(benchmark::State& state) {
  const ChshSettings st = ChshSettings::standard();
  const FrameConfig frame{{0.0, 0.0, 0.9}};
  double theta = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chsh_s(st, theta, 1.1, {0.99, 1.0}, frame));
    theta = theta < 3.0 ? theta + 1e-3 : 0.3;
  }
}
BENCHMARK(BM_ChshPointwise);

static void BM_ConeAverage(benchmark::State& state) {
  const double speed = state.range(0) == 0 ? 0.99 : 0.9999;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cone_average(ChshSettings::standard(), {speed, 1.0}, {},
                                          {std::numbers::pi / 2.0}, {}));
  }
}
BENCHMARK(BM_ConeAverage)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_SolveCompensatingField(benchmark::State& state) {
  const double h = 1.0 / std::numbers::sqrt2;
  const FrameConfig frame{{0.0, 0.0, 0.9}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_compensating_field({h, h, 0.0}, {0.99, 0.0, 0.0}, frame));
  }
}
BENCHMARK(BM_SolveCompensatingField);

static void BM_OptimizePointwise(benchmark::State& state) {
  const ChshSettings st = ChshSettings::standard();
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_directions(st.a1, st.a2, {0.5, 0.6, 0.3}, {}));
  }
}
BENCHMARK(BM_OptimizePointwise)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
