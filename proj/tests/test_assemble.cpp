#include <gtest/gtest.h>

#include <sstream>

#include "hcpack/assemble.hpp"
#include "hcpack/oracles.hpp"

using namespace hcpack;

namespace {

Profile desk() { return read_profile_file(HCPACK_PROFILE_DIR "/k12_desk.profile"); }

}  // namespace

TEST(Profile, ParseAndOverride) {
  std::istringstream in("# comment\nmu = 0.5\nell1=4 # trailing\n\nsparsify_eta_min=0.1\n");
  Profile p = read_profile(in);
  EXPECT_DOUBLE_EQ(p.mu, 0.5);
  EXPECT_EQ(p.ell1, 4);
  ASSERT_TRUE(p.sparsify_eta_min.has_value());
  p.set("reservoir_rho_gate", "false");
  EXPECT_FALSE(p.reservoir_rho_gate);
  EXPECT_THROW(p.set("nope", "1"), DomainError);
  EXPECT_THROW(p.set("ell0", "2.5"), DomainError);
  std::istringstream bad("mu=0.1\nell0\n");
  try {
    read_profile(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2);
  }
}

TEST(Profile, WriteReadRoundTrip) {
  Profile p = desk();
  std::ostringstream out;
  write_profile(out, p);
  std::istringstream in(out.str());
  Profile q = read_profile(in);
  std::ostringstream again;
  write_profile(again, q);
  EXPECT_EQ(out.str(), again.str());
}

TEST(Assemble, Targets) {
  auto t = parse_targets("2*H", 12);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], std::vector<int>{12});
  auto u = parse_targets("8,8;16", 16);
  EXPECT_EQ(u[0], (std::vector<int>{8, 8}));
  Profile p;
  EXPECT_THROW(check_targets({{5, 6}}, 12, 3, p), DomainError);
  EXPECT_THROW(check_targets({{6, 6}}, 12, 3, p), DomainError);
  EXPECT_NO_THROW(check_targets({{12}}, 12, 3, p));
  EXPECT_THROW(parse_targets("", 12), DomainError);
}

TEST(Assemble, SplitBudget) {
  EXPECT_EQ(*split_budget(7, 3, 2, 3), (std::vector<int>{3, 2, 2}));
  EXPECT_FALSE(split_budget(5, 3, 2, 3).has_value());
  EXPECT_FALSE(split_budget(10, 3, 2, 3).has_value());
}

TEST(Assemble, ConnectorsOnComplete) {
  Hypergraph K = complete_hypergraph(3, 10);
  auto c = connectors(K, {0, 1, 2}, {3, 4, 5}, 2, {6, 7, 8, 9});
  EXPECT_EQ(c.size(), 12u);
  for (const auto& w : c) {
    Seq full{0, 1, 2};
    full.insert(full.end(), w.begin(), w.end());
    full.insert(full.end(), {3, 4, 5});
    EXPECT_TRUE(is_tight_path(K, full));
  }
  EXPECT_TRUE(connectors(K, {0, 1, 2}, {3, 4, 5}, 2, {6}).empty());
}

TEST(Assemble, ConnectFailsNamingRequest) {
  Hypergraph K = complete_hypergraph(3, 8);
  std::vector<ConnectRequest> Q{{{0, 1, 2}, {3, 4, 5}, 2}};
  try {
    connect(K, Q, {6}, 1);
    FAIL();
  } catch (const StageFailure& e) {
    EXPECT_EQ(e.stage, "connect");
  }
  auto W = connect(K, Q, {6, 7}, 1);
  ASSERT_EQ(W.size(), 1u);
  EXPECT_EQ(W[0].size(), 2u);
}

TEST(Assemble, ReservoirAuditShortConnectors) {
  Hypergraph K = complete_hypergraph(3, 14);
  ReservoirOptions opt;
  opt.audit_pairs = 20;
  Reservoir r = build_reservoir(K, 0.4, 2, 3, 5, opt);
  EXPECT_TRUE(r.ok()) << r.audit_failure;
  EXPECT_EQ(r.R.size(), 5u);
}

TEST(Assemble, ReservoirAuditFailsAtFourInnerVertices) {
  Hypergraph K = complete_hypergraph(3, 14);
  ReservoirOptions opt;
  opt.audit_pairs = 5;
  opt.retries = 200;
  Reservoir r = build_reservoir(K, 0.4, 2, 4, 5, opt);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.audit_ok);
  EXPECT_THROW(build_reservoir(K, 0.4, 3, 2, 5, opt), DomainError);
}

TEST(Assemble, LayerRejectsBadInputs) {
  Hypergraph K = complete_hypergraph(3, 12);
  Hypergraph F = K.remove_edge_sets(path_edges({0, 1, 2, 3}, 3));
  Profile p = desk();
  EXPECT_THROW(layer_transform(K, F, {{0, 1, 2, 3}}, {11}, p, 1), DomainError);
  EXPECT_THROW(layer_transform(K, F, {{0, 1, 2, 3}}, {6, 6}, p, 1), DomainError);
  EXPECT_THROW(layer_transform(K, K, {{0, 1, 2, 3}}, {12}, p, 1), DomainError);
  p.mu = 0.2;
  EXPECT_THROW(layer_transform(K, F, {{0, 1, 2, 3}}, {12}, p, 1), DomainError);
}

TEST(Assemble, LayerOnK12) {
  Hypergraph K = complete_hypergraph(3, 12);
  std::vector<Seq> P{{0, 1, 2, 3}, {4, 5, 6, 7, 8, 9}};
  std::vector<Tuple> used = path_edges(P[0], 3);
  for (const auto& e : path_edges(P[1], 3)) used.push_back(e);
  Hypergraph F = K.remove_edge_sets(used);
  LayerResult r = layer_transform(K, F, P, {12}, desk(), 3);
  ASSERT_TRUE(r.ok) << r.report.last_failure;
  EXPECT_TRUE(verify_factor_copy(K, r.factor, {12}).ok);
  EXPECT_TRUE(r.report.budget_identity);
  for (const auto& e : r.f_edges) EXPECT_TRUE(F.has_edge(e));
}

TEST(Assemble, LedgerRecompute) {
  UsageLedger l;
  l.k = 3;
  l.add_layer({{0, 1, 2}, {1, 2, 3}});
  l.add_layer({{0, 1, 3}});
  EXPECT_EQ(l.consumed.at({1, 2}), 2);
  EXPECT_EQ(l.consumed.at({0, 1}), 2);
  EXPECT_EQ(l.max_consumed(), 2);
  EXPECT_EQ(UsageLedger::recompute(3, {{{0, 1, 2}, {1, 2, 3}}, {{0, 1, 3}}}), l.consumed);
}

TEST(Assemble, DecomposeK12TwoHamiltonCycles) {
  Hypergraph K = complete_hypergraph(3, 12);
  DecomposeResult d = decompose(K, parse_targets("2*H", 12), desk(), 1, true);
  EXPECT_EQ(d.pack.status, PackResult::Full) << d.pack.message;
  EXPECT_TRUE(d.valid);
  EXPECT_EQ(d.pack.factors.size(), 2u);
  EXPECT_TRUE(d.pack.ledger_consistent);
  DecomposeResult again = decompose(K, parse_targets("2*H", 12), desk(), 1, true);
  EXPECT_EQ(d.manifest.dump(), again.manifest.dump());
}

TEST(Assemble, BudgetGateStopsPacking) {
  Hypergraph K = complete_hypergraph(3, 12);
  Profile p = desk();
  p.min_codegree = 11;
  DecomposeResult d = decompose(K, parse_targets("2*H", 12), p, 1, true);
  EXPECT_EQ(d.pack.status, PackResult::BudgetExceeded);
  EXPECT_TRUE(d.pack.culprit.has_value());
}
