// Serial reference paths against the bitset / OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "ergcftp/cftp.hpp"
#include "ergcftp/oracle.hpp"
#include "reference/reference.hpp"

using namespace ergcftp;

namespace {

ModelSpec two_star() {
  return ModelSpec({StatisticDescriptor::edges(), StatisticDescriptor::kstar(2)}, {-1.0, 0.1});
}

void BM_SampleSerialReference(benchmark::State& state) {
  const GraphSpace space(7);
  CftpConfig c;
  c.seed = 3;
  for (auto _ : state) benchmark::DoNotOptimize(reference::sample_many_serial(two_star(), space, c, 256));
}
BENCHMARK(BM_SampleSerialReference)->Unit(benchmark::kMillisecond);

void BM_SampleParallel(benchmark::State& state) {
  const GraphSpace space(7);
  CftpConfig c;
  c.seed = 3;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_many(two_star(), space, c, 256, std::size_t(state.range(0))));
}
BENCHMARK(BM_SampleParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_NaiveDistribution(benchmark::State& state) {
  const GraphSpace space(6);
  for (auto _ : state) benchmark::DoNotOptimize(reference::naive_distribution(two_star(), space));
}
BENCHMARK(BM_NaiveDistribution)->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State& state) {
  const GraphSpace space(6);
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_distribution(two_star(), space, {20, std::size_t(state.range(0))}));
}
BENCHMARK(BM_Enumerate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

template <bool Brute>
void BM_ChangeScore(benchmark::State& state) {
  const GraphSpace space(unsigned(state.range(0)));
  std::mt19937_64 rng(5);
  AdjacencyState y(space);
  for (const auto& d : space.free_dyads()) y.assign_free(d, rng() & 1);
  const auto stat = StatisticDescriptor::triangle();
  const auto& dyads = space.free_dyads();
  std::size_t k = 0;
  for (auto _ : state) {
    const Dyad d = dyads[k++ % dyads.size()];
    if constexpr (Brute) benchmark::DoNotOptimize(reference::brute_change_score(stat, y, d));
    else benchmark::DoNotOptimize(change_score(stat, y, d));
  }
}
BENCHMARK(BM_ChangeScore<true>)->Name("BM_ChangeScoreBrute")->Arg(10)->Arg(30);
BENCHMARK(BM_ChangeScore<false>)->Name("BM_ChangeScoreBitset")->Arg(10)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
