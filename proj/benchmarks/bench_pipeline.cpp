#include <benchmark/benchmark.h>

#include <cmath>

#include "planforge/backprojection.hpp"
#include "planforge/global_assemble.hpp"
#include "planforge/local_regularize.hpp"
#include "planforge/synth.hpp"
#include "support.hpp"

using namespace planforge;

namespace {

PointSet2D noisy_corner(int n) {
  test::Gen g(3);
  PointSet2D p;
  for (int i = 0; i < n; ++i) {
    const double t = g.uniform(0, 4);
    const Vec2 q = t < 2 ? Vec2(0, t - 2) : Vec2(t - 2, 0);
    p.points.push_back(q + Vec2(g.normal(0.01), g.normal(0.01)));
  }
  return p;
}

void BM_Cluster3(benchmark::State& state) {
  const PointSet2D p = noisy_corner(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cluster3(p, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Cluster3)->Arg(1000)->Arg(10000)->Arg(50000);

void BM_BackprojectCapture(benchmark::State& state) {
  const SynthDataset data = generate(test::single_room_spec());
  const SynthCapture& cap = data.captures[0][0];
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        backproject_capture(cap.depth, cap.mask, data.manifest.intrinsics, data.manifest.scale, "room#0"));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cap.depth.values.size()));
}
BENCHMARK(BM_BackprojectCapture);

void BM_SynthRender(benchmark::State& state) {
  const FloorSpec spec = test::two_room_spec();
  for (auto _ : state) benchmark::DoNotOptimize(generate(spec));
}
BENCHMARK(BM_SynthRender)->Unit(benchmark::kMillisecond);

void BM_SnapManhattan(benchmark::State& state) {
  test::Gen g(5);
  const RoomPolygon p("p", g.rough_rectilinear(0.1, 0.05, 0.03));
  for (auto _ : state) benchmark::DoNotOptimize(snap_manhattan(p, 0.1));
}
BENCHMARK(BM_SnapManhattan);

}  // namespace

BENCHMARK_MAIN();
