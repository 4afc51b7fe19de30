#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hcpack/fracmatch.hpp"
#include "support.hpp"

using namespace hcpack;

namespace {

Hypergraph k5_minus_012() { return complete_hypergraph(3, 5).remove_edge_sets({{0, 1, 2}}); }

}  // namespace

TEST(FracMatch, UniformWeightsOnNearRegular) {
  Hypergraph H = k5_minus_012();
  EdgeWeighting w = uniform_weighting(H, true);
  ASSERT_TRUE(w.exact);
  EXPECT_EQ(w.q[0], Rational(5, 27));
  EXPECT_EQ(omega_exact(H, w, {0}), Rational(25, 27));
  EXPECT_EQ(omega_exact(H, w, {3}), Rational(10, 9));
  EXPECT_EQ(omega_exact(H, w, {}), Rational(5, 3));
  EXPECT_FALSE(is_perfect_fractional_matching(H, w));
}

TEST(FracMatch, CompleteGraphIsRegular) {
  Hypergraph K = complete_hypergraph(3, 6);
  auto w = assigned_pfm(K, 1, 2.0, true);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->q[0], Rational(1, 10));
  EXPECT_TRUE(is_perfect_fractional_matching(K, *w));
  EXPECT_EQ(balancedness_exact(*w), 1);
}

TEST(FracMatch, RedistributionIsExact) {
  Hypergraph H = k5_minus_012();
  EdgeWeighting w = redistribute_pfm(H, build_walk_registry(H), true);
  for (const auto& s : vertex_sums_exact(H, w)) EXPECT_EQ(s, 1);
  EXPECT_LE(balancedness(w), 2.0);
}

TEST(FracMatch, LpFallbackFindsPfm) {
  Hypergraph H = k5_minus_012();
  auto w = pfm_lp(H);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(is_perfect_fractional_matching(H, *w, 1e-7));
}

TEST(FracMatch, EmptyGraphHasNoPfm) {
  Hypergraph E(3, 5, {});
  EXPECT_FALSE(assigned_pfm(E, 1).has_value());
}

TEST(FracMatch, DisconnectedRedistributionThrows) {
  Hypergraph H(3, 6, {{0, 1, 2}, {3, 4, 5}});
  EXPECT_THROW(redistribute_pfm(H, build_walk_registry(H), true), NotConnectedError);
}

TEST(FracMatch, RandomAlmostRegularPfmsAreExact) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    Hypergraph H = gen::random_almost_regular(8 + i, 0.15, rng);
    EdgeWeighting w = redistribute_pfm(H, build_walk_registry(H, 500, i), true);
    for (const auto& s : vertex_sums_exact(H, w)) EXPECT_EQ(s, 1);
  }
}

TEST(FracMatch, SparsifyKeepsProbabilities) {
  Hypergraph K = complete_hypergraph(3, 10);
  EdgeWeighting w = uniform_weighting(K, false);
  Hypergraph none(3, 10, {});
  SparsifyResult r0 = sparsify_intersecting(K, none, 0.0, w, 3);
  EXPECT_EQ(r0.graph.m(), 0u);
  SparsifyResult r1 = sparsify_intersecting(K, none, 1.0, w, 3);
  EXPECT_EQ(r1.graph.m(), K.m());
  SparsifyResult rF = sparsify_intersecting(K, K, 0.0, w, 3);
  EXPECT_EQ(rF.graph.m(), K.m());
  EXPECT_THROW(sparsify_intersecting(K, none, 1.5, w, 3), DomainError);
}

TEST(FracMatch, WeightingRoundTrip) {
  Hypergraph H = k5_minus_012();
  EdgeWeighting w = redistribute_pfm(H, build_walk_registry(H), true);
  std::ostringstream out;
  write_weighting(out, w);
  std::istringstream in(out.str());
  EdgeWeighting back = read_weighting(in);
  ASSERT_TRUE(back.exact);
  EXPECT_EQ(back.q, w.q);
}
