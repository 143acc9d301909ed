#include <benchmark/benchmark.h>

#include "chebydyn/analysis.hpp"
#include "chebydyn/image.hpp"
#include "chebydyn/orbit.hpp"
#include "chebydyn/rational_map.hpp"
#include "chebydyn/render.hpp"

using namespace chebydyn;

namespace {

void BM_EvalChart(benchmark::State& state) {
  const RationalMap m = build_operator(Complex{2.3, 0.4});
  ChartPoint z{Complex{0.3, 0.2}, false};
  for (auto _ : state) {
    z = eval_chart(m, z);
    if (z.value == Complex{}) z = {Complex{0.3, 0.2}, false};
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BM_EvalChart);

void BM_EvalMap(benchmark::State& state) {
  const RationalMap m = build_operator(Complex{2.3, 0.4});
  const SpherePoint z(Complex{1.7, -0.9});
  for (auto _ : state) benchmark::DoNotOptimize(eval_map(m, z));
}
BENCHMARK(BM_EvalMap);

void BM_CriticalOrbits(benchmark::State& state) {
  IterationConfig cfg;
  cfg.max_iter = static_cast<int>(state.range(0));
  cfg.transient = std::min(200, cfg.max_iter / 2);
  for (auto _ : state) benchmark::DoNotOptimize(run_critical_orbits(Complex{1.79, 0.0}, cfg));
}
BENCHMARK(BM_CriticalOrbits)->Arg(300)->Arg(2000);

void BM_ClassifyParameter(benchmark::State& state) {
  IterationConfig cfg;
  cfg.max_iter = 300;
  cfg.transient = 150;
  const Complex alphas[] = {{2.2, 0.1}, {3.0, 0.2}, {0.3, 0.0}, {1.0, 1.5}, {-0.3, 1.2}};
  std::size_t n = 0;
  for (auto _ : state) benchmark::DoNotOptimize(classify_parameter(alphas[n++ % 5], cfg));
}
BENCHMARK(BM_ClassifyParameter);

void BM_ParameterPlane(benchmark::State& state) {
  PlaneSpec spec = default_parameter_plane(static_cast<int>(state.range(0)),
                                           static_cast<int>(state.range(0)) * 4 / 5);
  spec.iteration.max_iter = 300;
  spec.iteration.transient = 150;
  for (auto _ : state) benchmark::DoNotOptimize(render_parameter_plane(spec, {1, false}));
  state.SetItemsProcessed(state.iterations() * spec.width_px * spec.height_px);
}
BENCHMARK(BM_ParameterPlane)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_DynamicalPlane(benchmark::State& state) {
  const PlaneSpec spec = default_dynamical_plane(Complex{1.0, 0.3}, 160, 160);
  for (auto _ : state) benchmark::DoNotOptimize(render_dynamical_plane(spec, {1, false}));
  state.SetItemsProcessed(state.iterations() * spec.width_px * spec.height_px);
}
BENCHMARK(BM_DynamicalPlane)->Unit(benchmark::kMillisecond);

void BM_EncodePng(benchmark::State& state) {
  const ClassificationGrid grid = render_dynamical_plane(default_dynamical_plane(1.0, 200, 200), {1, false});
  const Palette palette = default_palette(grid);
  for (auto _ : state) benchmark::DoNotOptimize(encode_png(grid, palette));
}
BENCHMARK(BM_EncodePng)->Unit(benchmark::kMillisecond);

void BM_VerifySpecialCases(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_special_cases());
}
BENCHMARK(BM_VerifySpecialCases)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
