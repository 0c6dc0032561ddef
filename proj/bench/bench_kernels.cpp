// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "cas/oracles.hpp"
#include "cas/witnesses.hpp"

namespace {

cas::Spectrum squared_spectrum() {
  const cas::Spectrum base({0.3, 0.3, 0.3, 0.1}, cas::Dims{2, 2});
  const cas::Spectrum sq = cas::product_spectrum(base, base);
  return cas::Spectrum(sq.values(), cas::Dims{4, 4});
}

// Maximally mixed input: the search never stops early, so every sample is paid for.
void BM_FalsifySerial(benchmark::State& state) {
  const cas::Dims dims{2, 3};
  const cas::Spectrum s(std::vector<double>(6, 1.0 / 6), dims);
  for (auto _ : state)
    benchmark::DoNotOptimize(cas::as_falsify_search_serial(s, dims, state.range(0), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FalsifyParallel(benchmark::State& state) {
  const cas::Dims dims{2, 3};
  const cas::Spectrum s(std::vector<double>(6, 1.0 / 6), dims);
  for (auto _ : state) benchmark::DoNotOptimize(cas::as_falsify_search(s, dims, state.range(0), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FalsifySquaredSerial(benchmark::State& state) {
  const cas::Spectrum s = squared_spectrum();
  for (auto _ : state)
    benchmark::DoNotOptimize(cas::as_falsify_search_serial(s, s.dims(), state.range(0), 7));
}

void BM_FalsifySquaredParallel(benchmark::State& state) {
  const cas::Spectrum s = squared_spectrum();
  for (auto _ : state) benchmark::DoNotOptimize(cas::as_falsify_search(s, s.dims(), state.range(0), 7));
}

void BM_SeeSawSerial(benchmark::State& state) {
  const cas::Witness w = cas::make_ppt_witness(cas::Dims{3, 3});
  for (auto _ : state)
    benchmark::DoNotOptimize(cas::min_product_expectation_serial(w, static_cast<int>(state.range(0)), 100, 3));
}

void BM_SeeSawParallel(benchmark::State& state) {
  const cas::Witness w = cas::make_ppt_witness(cas::Dims{3, 3});
  for (auto _ : state)
    benchmark::DoNotOptimize(cas::min_product_expectation(w, static_cast<int>(state.range(0)), 100, 3));
}

}  // namespace

BENCHMARK(BM_FalsifySerial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_FalsifyParallel)->Arg(1000)->Arg(10000);
BENCHMARK(BM_FalsifySquaredSerial)->Arg(10000);
BENCHMARK(BM_FalsifySquaredParallel)->Arg(10000);
BENCHMARK(BM_SeeSawSerial)->Arg(32)->Arg(256);
BENCHMARK(BM_SeeSawParallel)->Arg(32)->Arg(256);

BENCHMARK_MAIN();
