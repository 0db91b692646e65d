#include <benchmark/benchmark.h>

#include <numbers>

#include "fracwave/mittag_leffler.hpp"

using namespace fracwave;

namespace {

// One evaluation per dispatch region on the gamma = alpha ray; the range
// argument is |z|.
void BM_MLEvalRay(benchmark::State& state) {
  const double alpha = 0.25;
  const cplx z = std::polar(static_cast<double>(state.range(0)), -std::numbers::pi * alpha / 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(ml_eval({alpha, 1.0}, z));
}
BENCHMARK(BM_MLEvalRay)->Arg(1)->Arg(4)->Arg(1000);

void BM_MLEvalPolarHuge(benchmark::State& state) {
  const MLParams p{0.1, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(ml_eval_polar(p, 1e6, -0.05));
}
BENCHMARK(BM_MLEvalPolarHuge);

void BM_Symbol(benchmark::State& state) {
  const SymbolSpec spec{0.25, 0.5, 0.25};
  double xi = 0.0;
  for (auto _ : state) {
    xi = xi > 50.0 ? 0.0 : xi + 0.37;
    benchmark::DoNotOptimize(ml_symbol(spec, 100.0, xi));
  }
}
BENCHMARK(BM_Symbol);

}  // namespace
