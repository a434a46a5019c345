#include <benchmark/benchmark.h>

#include <random>

#include "splitstep/dft.hpp"
#include "splitstep/flows.hpp"
#include "splitstep/norms.hpp"
#include "splitstep/resonance.hpp"

using namespace splitstep;

namespace {

PhysicalState random_state(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  std::vector<Complex> v(k);
  for (auto& z : v) z = Complex(n(rng), n(rng));
  return PhysicalState(Grid(k), std::move(v));
}

void BM_ForwardDft(benchmark::State& state) {
  const PhysicalState u = random_state(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(forward_dft(u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ForwardDft)->RangeMultiplier(4)->Range(16, 16384)->Complexity(benchmark::oNLogN);

void BM_LieStepCubic(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const PhysicalState u = random_state(k, 2);
  const TimeStep step = ResonantStep(1, k / 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(lie_step(u, step, CubicModel(1)));
}
BENCHMARK(BM_LieStepCubic)->RangeMultiplier(4)->Range(16, 16384);

void BM_StrangStepLinear(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const PhysicalState u = random_state(k, 3);
  std::vector<double> v(k);
  for (int s = 0; s < k; ++s) v[s] = std::cos(kTwoPi * s / k);
  const ModelSpec m = LinearModel(Grid(k), v);
  for (auto _ : state) benchmark::DoNotOptimize(strang_step(u, 0.01, m));
}
BENCHMARK(BM_StrangStepLinear)->RangeMultiplier(4)->Range(16, 16384);

void BM_NormReport(benchmark::State& state) {
  const PhysicalState u = random_state(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(norm_report(u, CubicModel(-1)));
}
BENCHMARK(BM_NormReport)->RangeMultiplier(4)->Range(16, 16384);

void BM_CommutatorDefect(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::vector<double> v(k);
  for (int s = 0; s < k; ++s) v[s] = std::cos(4 * kTwoPi * s / k);
  const LinearModel m(Grid(k), v);
  const TimeStep step = ResonantStep(1, 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(commutator_defect(step, m));
  state.SetComplexityN(k);
}
BENCHMARK(BM_CommutatorDefect)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oNSquared);

}  // namespace

BENCHMARK_MAIN();
