#include <benchmark/benchmark.h>

#include "rwrs/blocks.hpp"
#include "rwrs/conditions.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/steplaw.hpp"
#include "rwrs/walk.hpp"

namespace {

using namespace rwrs;

void BM_StepSample(benchmark::State& state) {
  const StepLaw law = StepLaw::make(0.5);
  CounterRng rng(master_key(1));
  std::int64_t acc = 0;
  for (auto _ : state) acc += law.sample(rng);
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_StepSample);

void BM_StepSampleTailHeavy(benchmark::State& state) {
  // tiny cutoff forces the Pareto accept/reject branch often
  const StepLaw law = StepLaw::make(0.5, 16);
  CounterRng rng(master_key(1));
  std::int64_t acc = 0;
  for (auto _ : state) acc += law.sample(rng);
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_StepSampleTailHeavy);

void BM_WalkStats(benchmark::State& state) {
  const StepLaw law = StepLaw::make(0.5);
  const auto walk = simulate_walk(law, state.range(0), master_key(7));
  for (auto _ : state) {
    auto st = walk_stats(walk);
    benchmark::DoNotOptimize(st.range);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WalkStats)->Range(1 << 10, 1 << 17)->Complexity();

void BM_SceneryValue(benchmark::State& state) {
  const SceneryModel model = [&]() -> SceneryModel {
    switch (state.range(0)) {
      case 0:
        return make_scenery(IidDependence{}, Marginal::frechet1(), master_key(2));
      case 1:
        return make_scenery(GaussMaDependence{{0.6, 0.8}}, Marginal::frechet1(),
                            master_key(2));
      default:
        return make_scenery(MovingMaxDependence{1}, Marginal::frechet1(), master_key(2));
    }
  }();
  std::int64_t site = 0;
  double acc = 0.0;
  for (auto _ : state) acc += model.value(site++);
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_SceneryValue)->Arg(0)->Arg(1)->Arg(2);

void BM_Decompose(benchmark::State& state) {
  const StepLaw law = StepLaw::make(0.5);
  const auto st = walk_stats(simulate_walk(law, state.range(0), master_key(9)));
  const auto model = make_scenery(IidDependence{}, Marginal::frechet1(), master_key(2));
  const auto sched = default_schedule(model, state.range(0));
  for (auto _ : state) {
    auto d = decompose(st, sched);
    benchmark::DoNotOptimize(d.K_n());
  }
}
BENCHMARK(BM_Decompose)->Arg(1 << 14)->Arg(1 << 17);

}  // namespace

BENCHMARK_MAIN();
