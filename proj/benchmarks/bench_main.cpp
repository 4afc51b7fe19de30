#include <benchmark/benchmark.h>

#include <random>

#include "hcpack/absorb.hpp"
#include "hcpack/assemble.hpp"
#include "hcpack/cover.hpp"
#include "hcpack/fracmatch.hpp"
#include "hcpack/oracles.hpp"
#include "hcpack/walker.hpp"

using namespace hcpack;

static void BM_CompleteBuild(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(complete_hypergraph(3, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_CompleteBuild)->Arg(12)->Arg(24)->Arg(40);

static void BM_RegularityReport(benchmark::State& st) {
  Hypergraph K = complete_hypergraph(3, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(regularity_report(K));
}
BENCHMARK(BM_RegularityReport)->Arg(12)->Arg(20);

static void BM_RedistributeExact(benchmark::State& st) {
  Hypergraph H = complete_hypergraph(3, static_cast<int>(st.range(0))).remove_edge_sets({{0, 1, 2}, {3, 4, 5}});
  auto W = build_walk_registry(H);
  for (auto _ : st) benchmark::DoNotOptimize(redistribute_pfm(H, W, true));
}
BENCHMARK(BM_RedistributeExact)->Arg(8)->Arg(12);

static void BM_WalkSampler(benchmark::State& st) {
  Hypergraph K = complete_hypergraph(3, 16);
  EdgeWeighting w = uniform_weighting(K, false);
  WalkSampler S(K, w, 4);
  std::mt19937_64 rng(1);
  for (auto _ : st) benchmark::DoNotOptimize(S.sample(static_cast<int>(st.range(0)), rng));
}
BENCHMARK(BM_WalkSampler)->Arg(12)->Arg(48);

static void BM_TupleOracle(benchmark::State& st) {
  Hypergraph K = complete_hypergraph(3, 6);
  EdgeWeighting w = uniform_weighting(K, true);
  for (auto _ : st) benchmark::DoNotOptimize(tuple_marginals_all(K, w, 5, static_cast<int>(st.range(0)), 3));
}
BENCHMARK(BM_TupleOracle)->Arg(3)->Arg(5);

static void BM_EnumerateAbsorbers(benchmark::State& st) {
  Hypergraph K = complete_hypergraph(3, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_absorbers(K, 0));
}
BENCHMARK(BM_EnumerateAbsorbers)->Arg(7)->Arg(8);

static void BM_FractionalCover(benchmark::State& st) {
  Hypergraph K = complete_hypergraph(3, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(fractional_cycle_decomposition(K, 4, true));
}
BENCHMARK(BM_FractionalCover)->Arg(8)->Arg(10);

static void BM_RegK(benchmark::State& st) {
  Hypergraph K = complete_hypergraph(3, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reg_k(K));
}
BENCHMARK(BM_RegK)->Arg(4)->Arg(5)->Arg(6);

static void BM_DecomposeK12(benchmark::State& st) {
  Hypergraph K = complete_hypergraph(3, 12);
  Profile p = read_profile_file(HCPACK_PROFILE_DIR "/k12_desk.profile");
  auto targets = parse_targets("2*H", 12);
  std::uint64_t seed = 1;
  for (auto _ : st) benchmark::DoNotOptimize(decompose(K, targets, p, seed++, true));
}
BENCHMARK(BM_DecomposeK12)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
