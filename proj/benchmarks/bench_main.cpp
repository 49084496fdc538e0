#include <benchmark/benchmark.h>

#include <random>

#include "evconj/blockmap.hpp"
#include "evconj/intmat.hpp"
#include "evconj/moves.hpp"
#include "support/fixtures.hpp"

using namespace evconj;

static void BM_DecidePositive(benchmark::State& state) {
  const NonNegMatrix a = fixtures::nontransitive_e();
  const NonNegMatrix b = fixtures::nontransitive_f();
  for (auto _ : state) benchmark::DoNotOptimize(decide_balanced_elementary(a, b));
}
BENCHMARK(BM_DecidePositive);

// Passes the power screens but has no triple within the default bounds.
static void BM_DecideExhaustiveNegative(benchmark::State& state) {
  const NonNegMatrix a = NonNegMatrix::from_rows({{0, 0, 2}, {2, 2, 0}, {1, 1, 1}});
  const NonNegMatrix b = NonNegMatrix::from_rows({{1, 1, 0}, {1, 1, 2}, {1, 1, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(decide_balanced_elementary(a, b));
}
BENCHMARK(BM_DecideExhaustiveNegative);

static void BM_BsseSearchDepth2(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bsse_search(fixtures::nontransitive_e(), fixtures::nontransitive_g(), 2));
  }
}
BENCHMARK(BM_BsseSearchDepth2);

static void BM_PathsOfLength(benchmark::State& state) {
  const Graph g = iterated_balanced_in_split(fixtures::chain_script()).e_final();
  const auto n = static_cast<std::size_t>(state.range(0));
  std::size_t count = 0;
  for (auto _ : state) {
    const auto ps = paths_of_length(g, n);
    count = ps.size();
    benchmark::DoNotOptimize(ps.data());
  }
  state.counters["paths"] = static_cast<double>(count);
}
BENCHMARK(BM_PathsOfLength)->DenseRange(2, 8, 2);

static void BM_PsiFromHistory(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto len = static_cast<std::size_t>(state.range(0));
  const SplitHistory h =
      iterated_balanced_in_split(fixtures::random_script(rng, fixtures::random_graph(rng, 6), len, 2));
  for (auto _ : state) benchmark::DoNotOptimize(psi_from_history(h));
}
BENCHMARK(BM_PsiFromHistory)->DenseRange(1, 3);

static void BM_CheckConditionsPsi(benchmark::State& state) {
  const BlockMap psi = psi_from_history(iterated_balanced_in_split(fixtures::chain_script()));
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_conditions(psi, k, 4));
}
BENCHMARK(BM_CheckConditionsPsi)->DenseRange(2, 5);

static void BM_BlockMapFromTriple(benchmark::State& state) {
  const ElementaryChain c = connect_by_elementary(fixtures::chain_script());
  const ChainLink& l = c.links[1];
  const Graph e = graph_from_matrix(l.a), f = graph_from_matrix(l.b);
  for (auto _ : state) benchmark::DoNotOptimize(block_map_from_triple(e, f, l.triple));
}
BENCHMARK(BM_BlockMapFromTriple);
BENCHMARK_MAIN();
