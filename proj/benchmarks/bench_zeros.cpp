#include <benchmark/benchmark.h>

#include "opz/zeros.hpp"

namespace {

void BM_OprlZeros(benchmark::State& state) {
  const opz::Spectrum s(opz::random_jacobi(3, 3));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(opz::oprl_zeros(s, n));
  state.SetComplexityN(n);
}
BENCHMARK(BM_OprlZeros)->RangeMultiplier(2)->Range(50, 800)->Complexity();

void BM_OpucZeros(benchmark::State& state) {
  const opz::Spectrum s(opz::random_verblunsky(7, 2));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(opz::opuc_zeros(s, n));
  state.SetComplexityN(n);
}
BENCHMARK(BM_OpucZeros)->RangeMultiplier(2)->Range(25, 200)->Complexity()->Unit(benchmark::kMillisecond);

void BM_ParaZeros(benchmark::State& state) {
  const opz::PeriodicVerblunsky v = opz::random_verblunsky(7, 2);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(opz::para_zeros(v, n));
}
BENCHMARK(BM_ParaZeros)->Arg(20)->Arg(100);

void BM_CountBounds(benchmark::State& state) {
  const opz::Spectrum s(opz::random_jacobi(3, 3));
  for (auto _ : state) benchmark::DoNotOptimize(opz::count_bounds_check(s, 1, 100));
  state.SetLabel("n = 1..100");
}
BENCHMARK(BM_CountBounds)->Unit(benchmark::kMillisecond);

}  // namespace
