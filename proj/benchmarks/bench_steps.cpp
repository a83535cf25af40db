#include <benchmark/benchmark.h>

#include "hrod/hrod.hpp"

namespace {

// One step on the R=25 peakon grid with dxi = 25 / range.
void run_step(benchmark::State& st, hrod::Scheme scheme) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto s = hrod::make_peakon(1.0, 0.0, hrod::GridSpec(n, 25.0 / static_cast<double>(n)));
  hrod::StepperConfig cfg;
  cfg.dt = 0.2;
  cfg.scheme = scheme;
  for (auto _ : st) benchmark::DoNotOptimize(hrod::step(s, cfg));
}

void BM_StrangStep(benchmark::State& st) { run_step(st, hrod::Scheme::Strang); }
void BM_LieTrotterStep(benchmark::State& st) { run_step(st, hrod::Scheme::LieTrotter); }
void BM_EulerStep(benchmark::State& st) { run_step(st, hrod::Scheme::ExplicitEuler); }

BENCHMARK(BM_StrangStep)->Arg(125)->Arg(500)->Arg(2000);
BENCHMARK(BM_LieTrotterStep)->Arg(500);
BENCHMARK(BM_EulerStep)->Arg(500);

}  // namespace
