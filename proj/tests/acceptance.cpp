#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "hcpack/absorb.hpp"
#include "hcpack/assemble.hpp"
#include "hcpack/fracmatch.hpp"
#include "hcpack/oracles.hpp"
#include "hcpack/walker.hpp"
#include "support.hpp"

using namespace hcpack;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Profile desk() { return read_profile_file(HCPACK_PROFILE_DIR "/k12_desk.profile"); }

// exact walk law against the closed formula
Outcome walk_law() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  std::vector<Hypergraph> graphs{complete_hypergraph(3, 4), complete_hypergraph(3, 5)};
  std::vector<EdgeWeighting> weights{uniform_weighting(graphs[0], true), uniform_weighting(graphs[1], true)};
  while (graphs.size() < 22) {
    int n = std::uniform_int_distribution<int>(6, 8)(rng);
    Hypergraph H = gen::random_intersecting(n, 0.2, rng);
    try {
      weights.push_back(redistribute_pfm(H, build_walk_registry(H, 500, rng()), true));
      graphs.push_back(H);
    } catch (const std::runtime_error&) {
    }
  }
  long checked = 0, bad = 0;
  for (std::size_t g = 0; g < graphs.size(); ++g)
    for (int L = 1; L <= 6; ++L)
      for (int t = 1; t <= L; ++t)
        for (const auto& [j, rows] : tuple_marginals_all(graphs[g], weights[g], L, t, 3))
          for (const auto& r : rows) {
            ++checked;
            if (r.p_enum != r.p_formula) ++bad;
          }
  double s = seconds_since(t0);
  return {bad == 0 && s < 300,
          std::to_string(checked) + " tuple laws on 22 graphs, " + std::to_string(bad) + " mismatches, " +
              fmt("%.1f s", s)};
}

// empirical step marginals on K8
Outcome sampler() {
  Hypergraph K = complete_hypergraph(3, 8);
  EdgeWeighting w = uniform_weighting(K, false);
  const long N = 1000000;
  const int T = 12;
  double worst = 0;
  for (int L : {4, 12}) {
    WalkSampler S(K, w, L);
    std::mt19937_64 rng(7 + L);
    std::vector<std::vector<long>> cnt(T, std::vector<long>(8, 0));
    for (long i = 0; i < N; ++i) {
      auto walk = S.sample(T, rng);
      for (int t = 0; t < T; ++t) ++cnt[t][walk[t]];
    }
    for (int t = 0; t < T; ++t)
      for (int v = 0; v < 8; ++v) worst = std::max(worst, std::abs(static_cast<double>(cnt[t][v]) / N - 1.0 / 8));
  }
  return {worst <= 0.005, "max |freq - 1/8| = " + fmt("%.5f", worst) + " over t <= 12, L in {4,12}"};
}

// exact PFMs on random almost-regular graphs
Outcome pfm_exactness() {
  std::mt19937_64 rng(303);
  int exact = 0, balanced = 0, total = 0;
  double worst = 0;
  while (total < 50) {
    int n = std::uniform_int_distribution<int>(8, 16)(rng);
    Hypergraph H = gen::random_almost_regular(n, 0.1, rng);
    EdgeWeighting w;
    try {
      w = redistribute_pfm(H, build_walk_registry(H, 500, rng()), true);
    } catch (const NotConnectedError&) {
      continue;
    } catch (const BalanceError&) {
      ++total;
      continue;
    }
    ++total;
    bool ok = true;
    for (const auto& s : vertex_sums_exact(H, w)) ok = ok && s == 1;
    exact += ok ? 1 : 0;
    double b = balancedness(w);
    worst = std::max(worst, b);
    balanced += b <= 2.0 ? 1 : 0;
  }
  return {exact == 50 && balanced >= 45, std::to_string(exact) + "/50 exact, " + std::to_string(balanced) +
                                             "/50 balanced, worst ratio " + fmt("%.3f", worst)};
}

// absorbers on K7 and random graphs
Outcome absorbers() {
  Hypergraph K = complete_hypergraph(3, 7);
  bool counts = true;
  long checked = 0, bad = 0;
  for (int x = 0; x < 7; ++x) {
    auto list = enumerate_absorbers(K, x);
    counts = counts && list.size() == 720;
    for (const auto& a : list) {
      ++checked;
      bad += is_x_absorber(K, a.seq, x) ? 0 : 1;
    }
  }
  std::mt19937_64 rng(404);
  for (int i = 0; i < 10; ++i) {
    Hypergraph H = gen::random_hypergraph(3, 8, 0.7, rng);
    for (int x = 0; x < 8; ++x)
      for (const auto& a : enumerate_absorbers(H, x, 2000)) {
        ++checked;
        bad += is_x_absorber(H, a.seq, x) ? 0 : 1;
      }
  }
  return {counts && bad == 0, std::string(counts ? "720" : "wrong") + " per x on K7, " + std::to_string(checked) +
                                  " absorbers checked, " + std::to_string(bad) + " failures"};
}

// disjoint perfect matchings against the degree guarantee
Outcome hall() {
  long instances = 0, violations = 0, positive = 0;
  auto check = [&](const Bipartite& G) {
    ++instances;
    int g = hall_guarantee(G);
    if (g <= 0) return;
    ++positive;
    auto ms = disjoint_perfect_matchings(G, static_cast<int>(G.size()));
    if (static_cast<int>(ms.size()) < g) ++violations;
  };
  for (unsigned mask = 0; mask < (1u << 16); ++mask) {
    Bipartite G(4);
    for (int i = 0; i < 16; ++i)
      if (mask >> i & 1u) G[i / 4].push_back(i % 4);
    check(G);
  }
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> dens(0.5, 1.0);
  for (int i = 0; i < 200; ++i) {
    std::bernoulli_distribution keep(dens(rng));
    Bipartite G(8);
    for (int l = 0; l < 8; ++l)
      for (int r = 0; r < 8; ++r)
        if (keep(rng)) G[l].push_back(r);
    check(G);
  }
  return {violations == 0, std::to_string(instances) + " graphs, " + std::to_string(positive) +
                               " with positive guarantee, " + std::to_string(violations) + " violations"};
}

// classify against the subset-enumeration oracle
Outcome classify() {
  std::mt19937_64 rng(606);
  long mismatches = 0;
  const int N = 10000;
  for (int i = 0; i < N; ++i) {
    int k = i % 2 == 0 ? 3 : 4;
    int n = std::uniform_int_distribution<int>(k + 2, 14)(rng);
    std::vector<int> V(n);
    for (int v = 0; v < n; ++v) V[v] = v;
    std::shuffle(V.begin(), V.end(), rng);
    std::vector<Seq> paths;
    int at = 0;
    while (at < n) {
      int len = std::uniform_int_distribution<int>(1, 2 * k + 2)(rng);
      len = std::min(len, n - at);
      bool skip = std::bernoulli_distribution(0.25)(rng);
      if (!skip) paths.emplace_back(V.begin() + at, V.begin() + at + len);
      at += len;
    }
    std::shuffle(V.begin(), V.end(), rng);
    Tuple e(V.begin(), V.begin() + k);
    PathCollection P(k, paths);
    if (!(P.classify(e) == classify_oracle(k, paths, e))) ++mismatches;
  }
  return {mismatches == 0, std::to_string(N) + " instances, " + std::to_string(mismatches) + " mismatches"};
}

// one layer on K12 with a Hamilton target
Outcome layer() {
  Hypergraph K = complete_hypergraph(3, 12);
  Profile p = desk();
  p.layer_retries = 20;
  int ok = 0, identity = 0;
  long attempts = 0;
  for (int seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> V(12);
    for (int v = 0; v < 12; ++v) V[v] = v;
    std::shuffle(V.begin(), V.end(), rng);
    std::vector<Seq> P{Seq(V.begin(), V.begin() + 4), Seq(V.begin() + 4, V.begin() + 10)};
    std::vector<Tuple> used = path_edges(P[0], 3);
    for (const auto& e : path_edges(P[1], 3)) used.push_back(e);
    Hypergraph F = K.remove_edge_sets(used);
    LayerResult r = layer_transform(K, F, P, {12}, p, rng());
    attempts += r.report.attempts;
    if (r.ok && verify_factor_copy(K, r.factor, {12}).ok) {
      ++ok;
      identity += r.report.budget_identity ? 1 : 0;
    }
  }
  return {ok >= 9 && identity == ok, std::to_string(ok) + "/10 seeds verified, budget identity in " +
                                         std::to_string(identity) + "/" + std::to_string(ok) + ", " +
                                         std::to_string(attempts) + " attempts in total"};
}

// two Hamilton cycles on K12
Outcome packing() {
  Hypergraph K = complete_hypergraph(3, 12);
  Profile p = desk();
  auto targets = parse_targets("2*H", 12);
  int full = 0, valid_outputs = 0, outputs = 0;
  double worst = 0;
  for (int seed = 1; seed <= 10; ++seed) {
    const auto t0 = Clock::now();
    DecomposeResult d = decompose(K, targets, p, seed, true);
    double s = seconds_since(t0);
    worst = std::max(worst, s);
    auto emitted = factors_from_json(nlohmann::json{{"factors", d.manifest["factors"]}});
    ++outputs;
    bool valid = validate_packing(K, emitted).ok;
    valid_outputs += valid ? 1 : 0;
    if (d.pack.status == PackResult::Full && valid && emitted.size() == 2 && s <= 120) ++full;
  }
  return {full >= 7 && valid_outputs == outputs,
          std::to_string(full) + "/10 seeds with 2 verified factors, " + std::to_string(valid_outputs) + "/" +
              std::to_string(outputs) + " outputs valid, slowest " + fmt("%.2f s", worst)};
}

// reg_k against brute force
Outcome regk() {
  RegKResult a = reg_k(complete_hypergraph(3, 4));
  RegKResult b = reg_k(complete_hypergraph(3, 5));
  bool fixed = a.r == 3 && a.witness.size() == 4 && b.r == 6 && b.witness.size() == 10;
  std::mt19937_64 rng(909);
  int fixtures = 0, agree = 0;
  while (fixtures < 40) {
    int n = std::uniform_int_distribution<int>(4, 8)(rng);
    Hypergraph H = gen::random_hypergraph(3, n, std::uniform_real_distribution<double>(0.2, 0.9)(rng), rng);
    if (H.m() > 20) continue;
    ++fixtures;
    agree += reg_k(H, 64).r == reg_k_bruteforce(H, 20).r ? 1 : 0;
  }
  return {fixed && agree == fixtures, "reg(K4) = " + std::to_string(a.r) + ", reg(K5) = " + std::to_string(b.r) +
                                          ", " + std::to_string(agree) + "/" + std::to_string(fixtures) +
                                          " fixtures agree with enumeration"};
}

// degree transfer identity and measured windows
Outcome transfer() {
  std::mt19937_64 rng(1010);
  std::vector<Hypergraph> graphs{complete_hypergraph(3, 5), complete_hypergraph(3, 6),
                                 complete_hypergraph(3, 5).remove_edge_sets({{0, 1, 2}})};
  for (int i = 0; i < 10; ++i) graphs.push_back(gen::random_hypergraph(3, 9, 0.6, rng));
  bool identity = true;
  for (const auto& H : graphs) {
    auto r = degree_transfer_check(H, H.vertices(), 1.0, 0.0);
    identity = identity && r.precondition_ok && r.conclusion_ok;
  }
  int pass = 0;
  const int N = 100;
  for (int i = 0; i < N; ++i) {
    int n = std::uniform_int_distribution<int>(10, 16)(rng);
    Hypergraph H = gen::random_hypergraph(3, n, std::uniform_real_distribution<double>(0.7, 0.95)(rng), rng);
    std::vector<int> U = H.vertices();
    std::shuffle(U.begin(), U.end(), rng);
    U.resize(std::uniform_int_distribution<int>(n / 2, n - 1)(rng));
    std::sort(U.begin(), U.end());
    TransferFit f = fit_transfer(H, U);
    pass += degree_transfer_check(H, U, f.theta, f.eps).conclusion_ok ? 1 : 0;
  }
  return {identity && pass >= 95, std::string("identity ") + (identity ? "holds" : "fails") + " on " +
                                      std::to_string(graphs.size()) + " graphs, " + std::to_string(pass) + "/" +
                                      std::to_string(N) + " random instances inside the window"};
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"walk law exactness", walk_law}, {"sampler agreement", sampler},
      {"PFM exactness", pfm_exactness}, {"absorber correctness", absorbers},
      {"Hall guarantee", hall},         {"classification oracle equivalence", classify},
      {"layer validity", layer},        {"packing validity", packing},
      {"reg_k oracle", regk},           {"degree-transfer check", transfer},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] criterion %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
