#include <gtest/gtest.h>

#include <sstream>

#include "hcpack/hypergraph.hpp"

using namespace hcpack;

namespace {

Hypergraph k5_minus_012() {
  Hypergraph K = complete_hypergraph(3, 5);
  return K.remove_edge_sets({{0, 1, 2}});
}

}  // namespace

TEST(Hypergraph, CompleteCounts) {
  Hypergraph K = complete_hypergraph(3, 5);
  EXPECT_EQ(K.n(), 5);
  EXPECT_EQ(K.m(), 10u);
  EXPECT_EQ(K.degree(0), 6);
  EXPECT_EQ(K.codegree({0, 1}), 3);
  EXPECT_EQ(K.neighborhood({1, 3}), (std::vector<int>{0, 2, 4}));
}

TEST(Hypergraph, RejectsBadEdges) {
  EXPECT_THROW(Hypergraph(3, 4, {{0, 1, 2}, {2, 1, 0}}), DomainError);
  EXPECT_THROW(Hypergraph(3, 4, {{0, 1, 1}}), DomainError);
  EXPECT_THROW(Hypergraph(3, 4, {{0, 1, 7}}), DomainError);
}

TEST(Hypergraph, ReportOnK5MinusEdge) {
  RegularityReport r = regularity_report(k5_minus_012());
  EXPECT_EQ(r.degrees, (std::vector<int>{5, 5, 5, 6, 6}));
  EXPECT_EQ(r.r_mean, Rational(27, 5));
  EXPECT_EQ(r.min_degree, 5);
  EXPECT_EQ(r.max_degree, 6);
  EXPECT_EQ(r.delta_codegree, 2);
}

TEST(Hypergraph, ReportOnComplete) {
  RegularityReport r = regularity_report(complete_hypergraph(3, 5));
  EXPECT_EQ(r.delta_codegree, 3);
  EXPECT_EQ(r.rho_star, 0);
  RegularityReport r6 = regularity_report(complete_hypergraph(3, 6));
  ASSERT_TRUE(r6.eta_star.has_value());
  EXPECT_EQ(*r6.eta_star, Rational(1, 3));
}

TEST(Hypergraph, TextRoundTrip) {
  Hypergraph H = k5_minus_012();
  std::ostringstream out;
  write_hypergraph(out, H);
  std::istringstream in(out.str());
  Hypergraph G = read_hypergraph(in);
  EXPECT_EQ(G.edges(), H.edges());
  std::ostringstream again;
  write_hypergraph(again, G);
  EXPECT_EQ(again.str(), out.str());
  EXPECT_EQ(out.str().substr(0, 6), "3 5 9\n");
}

TEST(Hypergraph, ParseErrorsNameTheLine) {
  std::istringstream bad("3 4 2\n0 1 2\n0 1\n");
  try {
    read_hypergraph(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3);
  }
  std::istringstream dup("3 4 2\n0 1 2\n2 0 1\n");
  EXPECT_THROW(read_hypergraph(dup), ParseError);
}

TEST(Hypergraph, SubgraphsKeepLabels) {
  Hypergraph K = complete_hypergraph(3, 6);
  Hypergraph S = K.induced({1, 3, 4, 5});
  EXPECT_EQ(S.n(), 4);
  EXPECT_EQ(S.m(), 4u);
  EXPECT_TRUE(S.has_edge({3, 4, 5}));
  EXPECT_FALSE(S.has_vertex(0));
  Hypergraph R = K.remove_vertices({0});
  EXPECT_EQ(R.m(), 10u);
  Hypergraph E = K.remove_edges({0});
  EXPECT_EQ(E.m(), 19u);
}

TEST(Hypergraph, IncidentAndSubsets) {
  Hypergraph K = complete_hypergraph(3, 5);
  EXPECT_EQ(K.incident({0}).size(), 6u);
  EXPECT_EQ(K.incident({0, 1}).size(), 3u);
  EXPECT_EQ(subsets_of_size({1, 2, 3}, 2), (std::vector<Tuple>{{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(all_subsets({0, 1, 2, 3}, 2).size(), 6u);
}

TEST(Hypergraph, EtaWithinGuards) {
  Hypergraph K = complete_hypergraph(3, 6);
  EXPECT_FALSE(eta_within(K, {}).has_value());
  auto e = eta_within(K, K.vertices());
  ASSERT_TRUE(e.has_value());
  EXPECT_NEAR(*e, 1.0 / 3.0, 1e-12);
}

TEST(Hypergraph, DegreeTransferIdentity) {
  Hypergraph K = k5_minus_012();
  auto rep = degree_transfer_check(K, K.vertices(), 1.0, 0.0);
  EXPECT_TRUE(rep.precondition_ok);
  EXPECT_TRUE(rep.conclusion_ok);
  TransferFit f = fit_transfer(K, K.vertices());
  EXPECT_DOUBLE_EQ(f.theta, 1.0);
  EXPECT_DOUBLE_EQ(f.eps, 0.0);
}
