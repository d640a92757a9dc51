#include <random>

#include <benchmark/benchmark.h>

#include "sumsetlab/abgroup.hpp"
#include "sumsetlab/ranksum.hpp"

namespace {

using namespace sumsetlab;

BoundedIntSet random_set(std::mt19937_64& rng, std::size_t g) {
  Bitset bits(g + 1);
  for (std::size_t i = 1; i <= g; ++i) bits.assign(i, (rng() & 3U) == 0);
  return {g, std::move(bits)};
}

void BM_ShnirelmanSumset(benchmark::State& state) {
  const auto g = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const auto a = random_set(rng, g), b = random_set(rng, g);
  for (auto _ : state) benchmark::DoNotOptimize(shnirelman_sumset(a, b));
}
BENCHMARK(BM_ShnirelmanSumset)->RangeMultiplier(4)->Range(64, 4096);

void BM_RankProfile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::vector<BoundedIntSet> sets;
  for (std::size_t i = 0; i < n; ++i) sets.push_back(random_set(rng, 256));
  const SetFamily family(256, sets);
  for (auto _ : state) benchmark::DoNotOptimize(RankProfile(family).phi(n, 256));
}
BENCHMARK(BM_RankProfile)->DenseRange(2, 10, 2);

GroupSubset random_subset(std::mt19937_64& rng, const FiniteAbelianGroup& g) {
  Bitset bits(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) bits.assign(i, (rng() & 1U) != 0);
  bits.set(0);
  return {g, std::move(bits)};
}

void BM_MinkowskiCyclic(benchmark::State& state) {
  const auto g = FiniteAbelianGroup::cyclic(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(3);
  const auto a = random_subset(rng, g), b = random_subset(rng, g);
  for (auto _ : state) benchmark::DoNotOptimize(minkowski_sum(a, b));
}
BENCHMARK(BM_MinkowskiCyclic)->RangeMultiplier(4)->Range(16, 1024);

void BM_MinkowskiProduct(benchmark::State& state) {
  const auto g = FiniteAbelianGroup::parse("Z4xZ8xZ8");
  std::mt19937_64 rng(4);
  const auto a = random_subset(rng, g), b = random_subset(rng, g);
  for (auto _ : state) benchmark::DoNotOptimize(minkowski_sum(a, b));
}
BENCHMARK(BM_MinkowskiProduct);

void BM_Kneser(benchmark::State& state) {
  const auto g = FiniteAbelianGroup::parse("Z2xZ4");
  const auto lattice = enumerate_subgroups(g);
  std::mt19937_64 rng(5);
  const auto a = random_subset(rng, g), b = random_subset(rng, g);
  for (auto _ : state) benchmark::DoNotOptimize(check_kneser(a, b, lattice));
}
BENCHMARK(BM_Kneser);

}  // namespace

BENCHMARK_MAIN();
