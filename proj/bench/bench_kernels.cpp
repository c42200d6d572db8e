// Parallel kernels against their serial references.
#include <vector>

#include <benchmark/benchmark.h>

#include "shrinkcast/harness.hpp"
#include "shrinkcast/random.hpp"
#include "shrinkcast/scoring.hpp"
#include "shrinkcast/synth.hpp"

using namespace shrinkcast;

namespace {

const TimeSeriesFrame& frame() {
  static const TimeSeriesFrame f = [] {
    SynthOptions o;
    o.length = 200;
    o.series = 30;
    return make_synthetic(o).yoy;
  }();
  return f;
}

std::vector<ModelSpec> grid() {
  std::vector<ModelSpec> specs{ModelSpec::benchmark(1)};
  for (auto f : {PriorFamily::kHorseshoe, PriorFamily::kRidge, PriorFamily::kDirichletLaplace}) {
    ModelSpec m;
    m.prior = f;
    m.size = PredictorSet::kLarge;
    m.horizon = 1;
    specs.push_back(m);
  }
  return specs;
}

ExperimentSettings settings(int threads) {
  ExperimentSettings s;
  s.window = 128;
  s.n_burn = 100;
  s.n_keep = 200;
  s.threads = threads;
  return s;
}

void BM_ExperimentSerial(benchmark::State& state) {
  const auto specs = grid();
  const auto s = settings(1);
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(frame(), specs, s));
}
BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond);

void BM_ExperimentParallel(benchmark::State& state) {
  const auto specs = grid();
  const auto s = settings(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(frame(), specs, s));
}
BENCHMARK(BM_ExperimentParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

std::vector<double> draws(std::size_t n) {
  Rng r(3);
  std::vector<double> d(n);
  for (auto& x : d) x = r.normal();
  return d;
}

void BM_CrpsSorted(benchmark::State& state) {
  const auto d = draws(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crps_sample(d, 0.3));
}
BENCHMARK(BM_CrpsSorted)->Arg(1000)->Arg(3000)->Arg(10000);

void BM_CrpsPairwise(benchmark::State& state) {
  const auto d = draws(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crps_sample_pairwise(d, 0.3));
}
BENCHMARK(BM_CrpsPairwise)->Arg(1000)->Arg(3000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
