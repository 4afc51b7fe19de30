#include <gtest/gtest.h>

#include <set>

#include "hcpack/cover.hpp"

using namespace hcpack;

TEST(Cover, K5FiveCycles) {
  Hypergraph K = complete_hypergraph(3, 5);
  auto cycles = enumerate_cycles(K, 5);
  EXPECT_EQ(cycles.size(), 12u);
  for (const auto& c : cycles) {
    EXPECT_EQ(c, canonical_cycle(c));
    EXPECT_TRUE(is_tight_cycle(K, c));
  }
}

TEST(Cover, K5UniformDecomposition) {
  Hypergraph K = complete_hypergraph(3, 5);
  auto f = fractional_cycle_decomposition(K, 5);
  EXPECT_TRUE(f.exact);
  EXPECT_LT(decomposition_deviation(K, f), 1e-9);
  EXPECT_EQ(f.uncovered_edges, 0);
  double total = 0;
  for (double w : f.weight) total += w;
  EXPECT_NEAR(total, 2.0, 1e-9);
  auto uni = f;
  uni.cycles = enumerate_cycles(K, 5);
  uni.weight.assign(uni.cycles.size(), 1.0 / 6.0);
  EXPECT_LT(decomposition_deviation(K, uni), 1e-12);
}

TEST(Cover, InfeasibleThrowsUnlessPartial) {
  Hypergraph K = complete_hypergraph(3, 5).remove_edge_sets({{0, 1, 2}});
  EXPECT_THROW(fractional_cycle_decomposition(K, 5), StageFailure);
  auto f = fractional_cycle_decomposition(K, 5, true);
  EXPECT_FALSE(f.exact);
  EXPECT_GT(f.uncovered_edges, 0);
}

TEST(Cover, CollectionsAreDisjoint) {
  Hypergraph K = complete_hypergraph(3, 9);
  auto f = fractional_cycle_decomposition(K, 4, true);
  auto cols = extract_cycle_collections(K, f, 3, 7);
  ASSERT_EQ(cols.size(), 3u);
  std::string why;
  EXPECT_TRUE(collections_valid(K, cols, true, &why)) << why;
  std::set<Tuple> seen;
  for (const auto& col : cols)
    for (const auto& c : col)
      for (auto e : cycle_edges(c, 3)) {
        std::sort(e.begin(), e.end());
        EXPECT_TRUE(seen.insert(e).second);
      }
  auto paths = cycles_to_paths(cols, 3, 7);
  EXPECT_TRUE(collections_valid(K, paths, false, &why)) << why;
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = 0; j < cols[i].size(); ++j) {
      EXPECT_EQ(paths[i][j].size(), cols[i][j].size());
      EXPECT_EQ(canonical_cycle(paths[i][j]), canonical_cycle(cols[i][j]));
    }
}

TEST(Cover, TypeStatisticsCounts) {
  std::vector<int> V{0, 1, 2, 3, 4, 5};
  CoverGates g;
  g.mu = 0.5;
  TypeStats st = type_statistics(V, 3, {{{0, 1, 2, 3}}, {{2, 3, 4, 5}}}, g);
  EXPECT_EQ(st.max_lo, 2);
  EXPECT_FALSE(st.lo_ok);
  EXPECT_EQ(st.max_end[3], 1);
}

TEST(Cover, SimultaneousCoverRespectsCoverage) {
  Hypergraph K = complete_hypergraph(3, 8);
  auto f = fractional_cycle_decomposition(K, 4, true);
  CoverGates g;
  g.mu = 1.0;
  CoverBundle b = simultaneous_path_cover(K, f, 2, g, 3);
  ASSERT_EQ(b.paths.size(), 2u);
  for (int c : b.coverage) EXPECT_GE(c, 4);
  EXPECT_TRUE(b.coverage_ok);
}
