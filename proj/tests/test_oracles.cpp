#include <gtest/gtest.h>

#include <random>

#include "hcpack/oracles.hpp"
#include "support.hpp"

using namespace hcpack;

TEST(Oracles, RegKOnCompleteGraphs) {
  RegKResult r4 = reg_k(complete_hypergraph(3, 4));
  EXPECT_EQ(r4.r, 3);
  EXPECT_EQ(r4.witness.size(), 4u);
  RegKResult r5 = reg_k(complete_hypergraph(3, 5));
  EXPECT_EQ(r5.r, 6);
  EXPECT_EQ(r5.witness.size(), 10u);
}

TEST(Oracles, RegKZeroWhenNothingFits) {
  Hypergraph H(3, 5, {{0, 1, 2}, {0, 3, 4}});
  RegKResult r = reg_k(H);
  EXPECT_EQ(r.r, 0);
  EXPECT_TRUE(r.witness.empty());
}

TEST(Oracles, RegKAgreesWithBruteForce) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    Hypergraph H = gen::random_hypergraph(3, 6, 0.5, rng);
    if (H.m() > 16) continue;
    EXPECT_EQ(reg_k(H).r, reg_k_bruteforce(H).r);
  }
}

TEST(Oracles, RegKRefusesAboveCap) {
  EXPECT_THROW(reg_k_bruteforce(complete_hypergraph(3, 7), 24), CapExceeded);
}

TEST(Oracles, HamiltonExistence) {
  auto c = hamilton_exists(complete_hypergraph(3, 6));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->size(), 6u);
  EXPECT_FALSE(hamilton_exists(Hypergraph(3, 6, {{0, 1, 2}})).has_value());
}

TEST(Oracles, ValidatePacking) {
  Hypergraph K = complete_hypergraph(3, 8);
  CycleFactor A{{{0, 1, 2, 3, 4, 5, 6, 7}}};
  EXPECT_TRUE(validate_packing(K, {A}).ok);
  PackingReport dup = validate_packing(K, {A, A});
  EXPECT_FALSE(dup.ok);
  EXPECT_FALSE(dup.reasons.empty());
  PackingReport empty = validate_packing(K, {});
  EXPECT_TRUE(empty.ok);
  EXPECT_EQ(empty.warnings.size(), 1u);
  CycleFactor bad{{{0, 1, 2, 3, 4, 5, 6}}};
  EXPECT_FALSE(validate_packing(K, {bad}).ok);
}

TEST(Oracles, WalkDistributionSumsToOne) {
  Hypergraph K = complete_hypergraph(3, 5);
  EdgeWeighting w = uniform_weighting(K, true);
  Rational total = 0;
  for (const auto& [s, p] : walk_distribution(K, w, 4, 4)) total += p;
  EXPECT_EQ(total, 1);
}
