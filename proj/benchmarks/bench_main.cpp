#include <benchmark/benchmark.h>

#include "mixconc/kernel.hpp"
#include "mixconc/mixing.hpp"
#include "mixconc/montecarlo.hpp"
#include "mixconc/phi_norm.hpp"
#include "mixconc/random.hpp"

using namespace mixconc;

static void BM_Psi(benchmark::State& state) {
  random::Rng rng(1);
  const KernelFn kappa = random::kernel(rng, 3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(psi_norm(kappa));
}
BENCHMARK(BM_Psi)->DenseRange(2, 8, 2);

static void BM_PhiOracle(benchmark::State& state) {
  random::Rng rng(2);
  const KernelFn kappa = random::kernel(rng, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(phi_norm_oracle(kappa).value);
}
BENCHMARK(BM_PhiOracle);

static void BM_PhiMaxFlow(benchmark::State& state) {
  random::Rng rng(3);
  const KernelFn kappa = random::kernel(rng, 3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(phi_norm_maxflow(kappa).value);
}
BENCHMARK(BM_PhiMaxFlow)->DenseRange(2, 5);

static void BM_MixingProfile(benchmark::State& state) {
  random::Rng rng(4);
  const JointDist joint = random::joint(rng, 3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mixing_profile(joint).inf_norm);
}
BENCHMARK(BM_MixingProfile)->DenseRange(3, 7, 2);

static void BM_Sampling(benchmark::State& state) {
  random::Rng rng(5);
  const MarkovSpec spec = random::markov_spec(rng, 4, 100, true, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_paths(spec, 42, 10000, static_cast<unsigned>(state.range(0))).symbols.data());
  }
}
BENCHMARK(BM_Sampling)->Arg(1)->Arg(4)->UseRealTime();
BENCHMARK_MAIN();
