#include <benchmark/benchmark.h>
#include <cmath>

#include "moment_atlas/approx.hpp"
#include "moment_atlas/fixtures.hpp"
#include "moment_atlas/planar_geometry.hpp"

namespace ma = moment_atlas;

static void BM_ExtractFaces(benchmark::State& state) {
  const auto fx = ma::grid(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ma::extract_faces(fx.complex));
  state.counters["faces"] = static_cast<double>(state.range(0) * state.range(0));
}
BENCHMARK(BM_ExtractFaces)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_InscribedSquare(benchmark::State& state) {
  const auto fx = ma::circle_pl(static_cast<std::size_t>(state.range(0)));
  const auto face = ma::extract_faces(fx.complex).faces.front();
  for (auto _ : state) benchmark::DoNotOptimize(ma::inscribed_square(face, 1e-7));
}
BENCHMARK(BM_InscribedSquare)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_Approximate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<unsigned>(state.range(1));
  const ma::Function f = [](std::span<const double> x) {
    double s = 0;
    for (double v : x) s += std::abs(v);
    return s;
  };
  for (auto _ : state) benchmark::DoNotOptimize(ma::approximate(f, n, k));
}
BENCHMARK(BM_Approximate)->Args({1, 32})->Args({2, 16})->Args({3, 8})->Unit(benchmark::kMillisecond);
