#include <benchmark/benchmark.h>

#include "opz/equilibrium.hpp"
#include "opz/floquet.hpp"

namespace {

opz::Model jacobi_of_period(int p) { return opz::random_jacobi(11, p); }

void BM_BandEdges(benchmark::State& state) {
  const opz::Discriminant d(jacobi_of_period(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(opz::band_edges(d));
}
BENCHMARK(BM_BandEdges)->DenseRange(2, 16, 7);

void BM_Thouless(benchmark::State& state) {
  const opz::Spectrum s(jacobi_of_period(4));
  for (auto _ : state) benchmark::DoNotOptimize(opz::thouless_check(s, {0.3, 1.0}));
}
BENCHMARK(BM_Thouless);

void BM_Jost(benchmark::State& state) {
  const opz::Spectrum s(jacobi_of_period(4));
  for (auto _ : state) benchmark::DoNotOptimize(opz::jost(s, 2, {0.3, 1.0}));
}
BENCHMARK(BM_Jost);

void BM_JostOffbandZeros(benchmark::State& state) {
  const bool oprl = state.range(0) == 0;
  const opz::Spectrum s(oprl ? opz::Model{opz::random_jacobi(3, 3)} : opz::Model{opz::random_verblunsky(7, 2)});
  for (auto _ : state) benchmark::DoNotOptimize(opz::jost_offband_zeros(s, 1));
  state.SetLabel(oprl ? "jacobi p=3" : "verblunsky p=2");
}
BENCHMARK(BM_JostOffbandZeros)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
