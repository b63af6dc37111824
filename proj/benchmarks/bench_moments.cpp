#include <benchmark/benchmark.h>

#include "moment_atlas/fixtures.hpp"
#include "moment_atlas/moments.hpp"
#include "moment_atlas/report.hpp"

namespace ma = moment_atlas;

static void BM_PlanarMomentTable(benchmark::State& state) {
  const auto path = ma::circle_pl(static_cast<std::size_t>(state.range(0))).paths.front();
  const auto degree = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ma::planar_moment_table(path, degree, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PlanarMomentTable)->Args({512, 8})->Args({512, 43})->Args({4096, 43});

static void BM_QuadratureSingleSpec(benchmark::State& state) {
  const auto path = ma::random_closed_path(1, 3, static_cast<std::size_t>(state.range(0)));
  const ma::MomentSpec spec{{3, 2, 1}, 2};
  for (auto _ : state) benchmark::DoNotOptimize(ma::moment_quadrature(path, spec));
}
BENCHMARK(BM_QuadratureSingleSpec)->Arg(64)->Arg(4096);

// Every spec of the planar family up to the grid's degree bound, on a path
// whose moments do not vanish (a scan of it would stop at the first witness).
static void BM_ScanFamilyEvaluation(benchmark::State& state) {
  const auto fx = ma::grid(static_cast<unsigned>(state.range(0)));
  const auto path = ma::basis_path(fx.complex);
  const auto bound = static_cast<unsigned>(ma::n_bound_2d(ma::extract_faces(fx.complex)));
  const auto family = ma::scan_family(2, bound);
  for (auto _ : state) {
    const ma::MomentEvaluator eval(path, 2 * bound + 1, bound + 1);
    double acc = 0;
    for (const auto& spec : family) acc += eval(spec);
    benchmark::DoNotOptimize(acc);
  }
  state.counters["specs"] = static_cast<double>(family.size());
}
BENCHMARK(BM_ScanFamilyEvaluation)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_HomologyPipeline(benchmark::State& state) {
  const auto fx = ma::grid(3);
  const auto faces = ma::extract_faces(fx.complex);
  const auto path = ma::realize_word(ma::random_closed_word(fx.complex, 5, 20), fx.complex);
  const auto specs = ma::all_specs(2, 8);
  for (auto _ : state) benchmark::DoNotOptimize(ma::compute_moments(path, specs, ma::Pipeline::Homology, &faces));
}
BENCHMARK(BM_HomologyPipeline)->Unit(benchmark::kMicrosecond);
