#include <benchmark/benchmark.h>

#include "fracwave/littlewood_paley.hpp"
#include "fracwave/spectral.hpp"

using namespace fracwave;

namespace {

void BM_PropagateML1d(benchmark::State& state) {
  const Grid g = Grid::uniform(1, static_cast<int>(state.range(0)), 512.0);
  const Field phi = make_preset("gaussian", g);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_ml(phi, {0.5, 0.5, 0.5}, 10.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PropagateML1d)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_BandKernelSup2d(benchmark::State& state) {
  const Grid g = Grid::uniform(2, 512, 400.0);
  const RadialFrequencies radial(g);
  for (auto _ : state) benchmark::DoNotOptimize(band_kernel_sup(g, radial, {0.75, 0.75, 0.75}, 50.0, {0}));
}
BENCHMARK(BM_BandKernelSup2d)->Unit(benchmark::kMillisecond);

void BM_BesovNorm(benchmark::State& state) {
  const Grid g = Grid::uniform(1, 1 << 14, 1024.0);
  const Field f = make_preset("annulus_wave", g);
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(f, {1.0, 1.0, 1.0, true}));
}
BENCHMARK(BM_BesovNorm)->Unit(benchmark::kMillisecond);

}  // namespace
