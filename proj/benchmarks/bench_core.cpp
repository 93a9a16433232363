#include <benchmark/benchmark.h>

#include "mqc/bounds.hpp"
#include "mqc/combinatorics.hpp"
#include "mqc/spectra.hpp"

static void BM_BinomialRow(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto row = mqc::binomial_row(n);
    benchmark::DoNotOptimize(row);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BinomialRow)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

static void BM_MaxRank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto row = mqc::binomial_row(n);
  for (auto _ : state) {
    auto rank = mqc::max_rank_from_row(row, n, n / 2);
    benchmark::DoNotOptimize(rank);
  }
}
BENCHMARK(BM_MaxRank)->RangeMultiplier(4)->Range(256, 16384);

static void BM_SigmaSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto spec = mqc::sigma_spectrum(n, 0.5);
    benchmark::DoNotOptimize(spec);
  }
}
BENCHMARK(BM_SigmaSpectrum)->Arg(1024)->Arg(10000);

static void BM_PairedDiffNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto sigma = mqc::sigma_spectrum(n, 0.5);
  const mqc::BigCount r = mqc::max_rank(n, n / 2);
  for (auto _ : state) {
    auto norm = mqc::paired_diff_norm(sigma, r);
    benchmark::DoNotOptimize(norm);
  }
}
BENCHMARK(BM_PairedDiffNorm)->Arg(1024)->Arg(10000);

static void BM_BoundPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mqc::BoundEvaluator eval(n, 0.5);
  for (auto _ : state) {
    auto result = eval.evaluate(n / 2);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_BoundPoint)->Arg(500)->Arg(2000)->Arg(10000);

static void BM_HalfDecayOrder(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mqc::BoundEvaluator eval(n, 0.5);
  for (auto _ : state) {
    auto q = mqc::half_decay_order(eval, mqc::BoundSide::lower);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_HalfDecayOrder)->Arg(500)->Arg(5000);

BENCHMARK_MAIN();
