#include <benchmark/benchmark.h>

#include "lucasdensity/density.hpp"
#include "lucasdensity/lucasrank.hpp"

using namespace lucasdensity;

namespace {

QuadElem elem(long disc, const char* u, const char* v) {
  Rational a(u), b(v);
  a.canonicalize();
  b.canonicalize();
  return qf_make(Integer(disc), a, b);
}

void BM_SEval(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(s_eval(2 * 3 * 5 * 7 * 11, 6, 24, 24));
}
BENCHMARK(BM_SEval);

void BM_PowerIndex(benchmark::State& state) {
  const QuadElem g = elem(-3, "683/686", "37/686");
  for (auto _ : state) benchmark::DoNotOptimize(power_index(g));
}
BENCHMARK(BM_PowerIndex);

void BM_DispatchGaussHi(benchmark::State& state) {
  const QuadElem g = elem(-4, "-240/338", "-119/338");
  for (auto _ : state) benchmark::DoNotOptimize(dispatch(g, 26));
}
BENCHMARK(BM_DispatchGaussHi);

void BM_DispatchOdd(benchmark::State& state) {
  const QuadElem g = elem(8, "3", "1");
  for (auto _ : state) benchmark::DoNotOptimize(dispatch(g, 105));
}
BENCHMARK(BM_DispatchOdd);

void BM_Sieve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(SpfTable(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_Sieve)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_RankLucas(benchmark::State& state) {
  const SpfTable spf(1'000'001);
  const SequenceContext ctx = make_context(Integer(1), Integer(-1));
  for (auto _ : state) {
    std::uint64_t acc = 0;
    for (std::uint32_t p : spf.primes()) {
      if (p > 100'000) break;
      if (!is_excluded_prime(p, ctx)) acc += rank(p, ctx, spf);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_RankLucas)->Unit(benchmark::kMillisecond);

void BM_RankDirect(benchmark::State& state) {
  const SpfTable spf(1'000'001);
  const QuadElem g = elem(-3, "683/686", "37/686");
  const SequenceContext ctx = make_context(g.u, g.v, Integer(-3));
  for (auto _ : state) {
    std::uint64_t acc = 0;
    for (std::uint32_t p : spf.primes()) {
      if (p > 100'000) break;
      if (!is_excluded_prime(p, ctx)) acc += rank(p, ctx, spf);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_RankDirect)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
