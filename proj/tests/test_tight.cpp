#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "hcpack/oracles.hpp"
#include "hcpack/tight.hpp"

using namespace hcpack;

TEST(Tight, PathsAndCycles) {
  Hypergraph K = complete_hypergraph(3, 5);
  EXPECT_TRUE(is_tight_path(K, {0, 1, 2, 3, 4}));
  EXPECT_TRUE(is_tight_cycle(K, {0, 1, 2, 3, 4}));
  EXPECT_FALSE(is_tight_cycle(K, {0, 1, 2}));
  EXPECT_FALSE(is_tight_path(K, {0, 1, 1}));
  Hypergraph H = K.remove_edge_sets({{0, 3, 4}});
  EXPECT_TRUE(is_tight_path(H, {0, 1, 2, 3, 4}));
  EXPECT_FALSE(is_tight_cycle(H, {0, 1, 2, 3, 4}));
}

TEST(Tight, EdgeLists) {
  EXPECT_EQ(path_edges({0, 1, 2, 3}, 3), (std::vector<Tuple>{{0, 1, 2}, {1, 2, 3}}));
  EXPECT_EQ(cycle_edges({0, 1, 2, 3}, 3).size(), 4u);
}

TEST(Tight, BoundaryAndInterior) {
  Boundary b = boundary({0, 1, 2, 3, 4, 5, 6}, 3);
  EXPECT_EQ(b.head, (Seq{0, 1, 2}));
  EXPECT_EQ(b.tail, (Seq{4, 5, 6}));
  EXPECT_EQ(interior({0, 1, 2, 3, 4, 5, 6}, 3), (Seq{3}));
}

TEST(Tight, CanonicalForms) {
  EXPECT_EQ(canonical_cycle({3, 4, 0, 1, 2}), (Seq{0, 1, 2, 3, 4}));
  EXPECT_EQ(canonical_cycle({2, 1, 0, 4, 3}), (Seq{0, 1, 2, 3, 4}));
  EXPECT_EQ(canonical_path({4, 1, 2}), (Seq{2, 1, 4}));
}

TEST(Tight, VerifyFactorCopy) {
  Hypergraph K = complete_hypergraph(3, 8);
  CycleFactor F{{{0, 1, 2, 3}, {4, 5, 6, 7}}};
  EXPECT_TRUE(verify_factor_copy(K, F, {4, 4}).ok);
  EXPECT_FALSE(verify_factor_copy(K, F, {8}).ok);
  CycleFactor G{{{0, 1, 2, 3}, {3, 5, 6, 7}}};
  EXPECT_FALSE(verify_factor_copy(K, G, {4, 4}).ok);
  EXPECT_EQ(F.girth(), 4);
  EXPECT_EQ(F.total(), 8);
}

TEST(Tight, ClassifyTypes) {
  PathCollection P(3, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9}});
  EXPECT_EQ(P.classify({0, 1, 2}), (KType{KType::End, 3}));
  EXPECT_EQ(P.classify({0, 7, 11}), (KType{KType::End, 1}));
  EXPECT_EQ(P.classify({2, 3, 10}), (KType{KType::Lo, 0}));
  EXPECT_EQ(P.classify({2, 3, 7}), (KType{KType::Con, 2}));
  EXPECT_EQ(P.classify({1, 2, 3}), (KType{KType::Con, 3}));
  EXPECT_TRUE(P.is_end_set({3, 4, 5}));
  EXPECT_FALSE(P.is_end_set({2, 3, 4}));
  EXPECT_EQ(P.owner(8), 1);
  EXPECT_EQ(P.owner(10), -1);
  EXPECT_THROW(PathCollection(3, {{0, 1, 2}, {2, 3, 4}}), DomainError);
}

TEST(Tight, ClassifyMatchesOracleOnFixture) {
  std::vector<Seq> paths{{0, 1, 2, 3, 4}, {5, 6}, {7, 8, 9, 10}};
  PathCollection P(3, paths);
  for (const auto& e : all_subsets({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 3))
    EXPECT_EQ(P.classify(e), classify_oracle(3, paths, e)) << set_key(e);
}

TEST(Tight, FactorsJsonRoundTrip) {
  std::vector<CycleFactor> fs{CycleFactor{{{3, 4, 0, 1, 2}}}};
  auto j = factors_to_json(fs);
  EXPECT_EQ(j.dump(), R"({"factors":[{"cycles":[[0,1,2,3,4]]}]})");
  auto back = factors_from_json(j);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].cycles[0], (Seq{0, 1, 2, 3, 4}));
}
