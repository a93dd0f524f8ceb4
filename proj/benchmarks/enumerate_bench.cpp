#include <benchmark/benchmark.h>

#include "estraus/arith.hpp"
#include "estraus/bounds.hpp"
#include "estraus/enumerate.hpp"
#include "estraus/primes.hpp"
#include "estraus/sums.hpp"

using namespace estraus;

static void BM_CountSolutions(benchmark::State& state) {
  const auto method = state.range(1) == 0 ? Method::Naive : Method::Divisor;
  const auto n = static_cast<u64>(state.range(0));
  count_solutions(5, method);  // builds the small-factor table outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(count_solutions(n, method));
}
BENCHMARK(BM_CountSolutions)
    ->Args({997, 0})
    ->Args({9973, 0})
    ->Args({997, 1})
    ->Args({9973, 1})
    ->Args({99991, 1})
    ->Unit(benchmark::kMicrosecond);

static void BM_HasSolution(benchmark::State& state) {
  u64 n = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(has_solution(n));
    n = n >= 1'000'000 ? 2 : n + 1;
  }
}
BENCHMARK(BM_HasSolution);

static void BM_PrimeBlock(benchmark::State& state) {
  const auto lo = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_prime_block(lo, lo + 1000, Method::Divisor));
}
BENCHMARK(BM_PrimeBlock)->Arg(1'000)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_Factorize(benchmark::State& state) {
  const u64 values[] = {1'000'000'000'039ULL, (1ULL << 62) + 1, 999'999'999'989ULL * 3,
                        4'294'967'291ULL * 4'294'967'279ULL};
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(factorize(values[i++ % std::size(values)]));
}
BENCHMARK(BM_Factorize);

static void BM_Sieve(benchmark::State& state) {
  const auto hi = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(primes_in_range(2, hi).primes.size());
}
BENCHMARK(BM_Sieve)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_EvalBound(benchmark::State& state) {
  const BoundExpr g = predefined_bound("paper-G");
  u64 n = 16;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_bound(g, n));
    n = n >= 1'000'000 ? 16 : n + 1;
  }
}
BENCHMARK(BM_EvalBound);

BENCHMARK_MAIN();
