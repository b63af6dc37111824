#include <benchmark/benchmark.h>

#include "moment_atlas/center.hpp"
#include "moment_atlas/fixtures.hpp"

namespace ma = moment_atlas;

static void BM_FirstReturnMap(benchmark::State& state) {
  const auto sys = ma::OdeSystem::create(ma::universal_center_abel().paths.front());
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ma::first_return_map(sys, 0.05, steps));
}
BENCHMARK(BM_FirstReturnMap)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

static void BM_DecideSquare(benchmark::State& state) {
  const auto fx = ma::ccw_unit_square();
  const auto sys = ma::OdeSystem::create(fx.paths.front());
  ma::DecideOptions opts;
  opts.residuals = false;
  for (auto _ : state) benchmark::DoNotOptimize(ma::decide(sys, fx.complex, opts));
}
BENCHMARK(BM_DecideSquare)->Unit(benchmark::kMillisecond);
