#include <benchmark/benchmark.h>

#include "hrod/hrod.hpp"

namespace {

hrod::LagrangianState peakon_state(std::size_t n_half) {
  return hrod::make_peakon(1.0, 0.0, hrod::GridSpec(n_half, 25.0 / static_cast<double>(n_half)));
}

void BM_SourceTermsFast(benchmark::State& st) {
  const auto s = peakon_state(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(hrod::source_terms_fast(s));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_SourceTermsFast)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oN);

void BM_SourceTermsDirect(benchmark::State& st) {
  const auto s = peakon_state(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(hrod::source_terms_direct(s));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_SourceTermsDirect)->RangeMultiplier(4)->Range(64, 1024)->Complexity(benchmark::oNSquared);

}  // namespace
