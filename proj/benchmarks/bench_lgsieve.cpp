#include <lgsieve/lgset.hpp>
#include <lgsieve/primes.hpp>

#include <benchmark/benchmark.h>

using namespace lgsieve;

namespace {

const PrimeTable& table() {
  static const PrimeTable t(1'000'000);
  return t;
}

void BM_PrimeTable(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    PrimeTable t(limit);
    benchmark::DoNotOptimize(t.primes().size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PrimeTable)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_Construct(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    const LGSet set = construct(LGParams{x, 0.05, 1.0, 0.2}, table());
    benchmark::DoNotOptimize(set.size());
  }
}
BENCHMARK(BM_Construct)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_VerifyLcm(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  const LGSet set = construct(LGParams{x, 0.05, 1.0, 0.2}, table());
  for (auto _ : state) benchmark::DoNotOptimize(verify_pairwise_lcm(set).ok());
}
BENCHMARK(BM_VerifyLcm)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_Coverage(benchmark::State& state) {
  const LGSet set = construct(LGParams{1'000'000, 0.05, 1.0, 0.2}, table());
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coverage(set, 1.0, table(), workers).covered_count);
  }
}
BENCHMARK(BM_Coverage)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_FindDivisor(benchmark::State& state) {
  const LGSet set = construct(LGParams{1'000'000, 0.05, 1.0, 0.2}, table());
  std::uint64_t m = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_divisor(m, set, table()));
    m = (m + 7918) % 1'000'000 + 1;
  }
}
BENCHMARK(BM_FindDivisor);

}  // namespace
BENCHMARK_MAIN();
