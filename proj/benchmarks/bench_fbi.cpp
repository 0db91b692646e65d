#include <benchmark/benchmark.h>

#include "fracwave/fbi.hpp"

using namespace fracwave;

namespace {

void BM_FBISample(benchmark::State& state) {
  FBIConfig cfg;
  cfg.w = Dispersion::square();
  cfg.t = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(fbi_sample(cfg, 3.0));
}
BENCHMARK(BM_FBISample)->Unit(benchmark::kMicrosecond);

void BM_FBIDecayExponent(benchmark::State& state) {
  FBIConfig cfg;
  cfg.w = Dispersion::abs();
  cfg.x0 = 3.0;
  cfg.t = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(fbi_decay_exponent(cfg));
}
BENCHMARK(BM_FBIDecayExponent)->Unit(benchmark::kMillisecond);

}  // namespace
