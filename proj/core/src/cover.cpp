#include "hcpack/cover.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "hcpack/lp.hpp"

namespace hcpack {

std::vector<Seq> enumerate_cycles(const Hypergraph& H, int L, std::size_t cap, std::uint64_t seed, bool* truncated) {
  const int k = H.k();
  if (L < k + 1) throw DomainError("cycle length must be at least k+1");
  std::vector<Seq> out;
  std::mt19937_64 rng(seed);
  std::size_t seen = 0;
  Seq seq;
  std::vector<char> used(H.id_bound(), 0);
  auto window = [&](int start) {
    Tuple e(k);
    for (int i = 0; i < k; ++i) e[i] = seq[(start + i) % L];
    return H.has_edge(e);
  };
  std::function<void()> rec = [&]() {
    const int p = static_cast<int>(seq.size());
    if (p == L) {
      if (seq[1] > seq[L - 1]) return;
      for (int s = L - k + 1; s < L; ++s)
        if (!window(s)) return;
      ++seen;
      if (out.size() < cap) {
        out.push_back(seq);
      } else {
        std::uniform_int_distribution<std::size_t> U(0, seen - 1);
        std::size_t j = U(rng);
        if (j < cap) out[j] = seq;
      }
      return;
    }
    std::vector<int> cand;
    if (p >= k - 1) {
      Tuple x(seq.end() - (k - 1), seq.end());
      std::sort(x.begin(), x.end());
      cand = H.neighborhood(x);
    } else {
      cand = H.vertices();
    }
    for (int v : cand) {
      if (used[v] || v < seq[0]) continue;
      seq.push_back(v);
      used[v] = 1;
      rec();
      used[v] = 0;
      seq.pop_back();
    }
  };
  for (int v0 : H.vertices()) {
    seq = {v0};
    used[v0] = 1;
    rec();
    used[v0] = 0;
  }
  if (truncated) *truncated = seen > cap;
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::vector<int>> cycle_edge_ids(const Hypergraph& H, const std::vector<Seq>& cycles) {
  std::vector<std::vector<int>> ids;
  ids.reserve(cycles.size());
  for (const auto& c : cycles) {
    std::vector<int> row;
    for (const auto& e : cycle_edges(c, H.k())) row.push_back(*H.find_edge(e));
    ids.push_back(std::move(row));
  }
  return ids;
}

}  // namespace

double decomposition_deviation(const Hypergraph& H, const FractionalCycleDecomposition& f) {
  std::vector<double> sum(H.m(), 0.0);
  for (std::size_t c = 0; c < f.cycles.size(); ++c)
    for (const auto& e : cycle_edges(f.cycles[c], H.k())) {
      auto id = H.find_edge(e);
      if (!id) return INFINITY;
      sum[*id] += f.weight[c];
    }
  double dev = 0;
  for (double s : sum) dev = std::max(dev, std::abs(1 - s));
  return dev;
}

FractionalCycleDecomposition fractional_cycle_decomposition(const Hypergraph& H, int L, bool allow_partial,
                                                            std::size_t cap, std::uint64_t seed) {
  FractionalCycleDecomposition f;
  f.L = L;
  f.cycles = enumerate_cycles(H, L, cap, seed, &f.family_truncated);
  const int m = static_cast<int>(H.m());
  const int N = static_cast<int>(f.cycles.size());
  auto ids = cycle_edge_ids(H, f.cycles);
  std::vector<int> on(m, 0);
  for (const auto& row : ids)
    for (int e : row) ++on[e];
  bool every_edge = std::all_of(on.begin(), on.end(), [](int c) { return c > 0; });
  LPResult res;
  bool solved = false;
  if (every_edge && m > 0) {
    std::vector<std::vector<double>> A(m, std::vector<double>(N, 0.0));
    for (int c = 0; c < N; ++c)
      for (int e : ids[c]) A[e][c] += 1.0;
    res = solve_lp(A, std::vector<double>(m, 1.0), std::vector<double>(N, 0.0));
    solved = res.status == LPResult::Optimal;
  }
  if (solved) {
    f.exact = true;
    f.weight = res.x;
  } else {
    if (!allow_partial) {
      int bare = static_cast<int>(std::count(on.begin(), on.end(), 0));
      throw StageFailure("cover", "no fractional " + std::to_string(L) + "-cycle decomposition (" +
                                      std::to_string(bare) + " edges on no cycle, " + std::to_string(N) + " cycles)");
    }
    // maximum partial packing: A x + s = 1, maximise covered edge mass
    std::vector<std::vector<double>> A(m, std::vector<double>(N + m, 0.0));
    std::vector<double> c(N + m, 0.0);
    for (int j = 0; j < N; ++j) {
      for (int e : ids[j]) A[e][j] += 1.0;
      c[j] = static_cast<double>(ids[j].size());
    }
    for (int e = 0; e < m; ++e) A[e][N + e] = 1.0;
    res = solve_lp(A, std::vector<double>(m, 1.0), c);
    if (res.status != LPResult::Optimal) throw StageFailure("cover", "partial cycle packing LP did not solve");
    f.weight.assign(res.x.begin(), res.x.begin() + N);
  }
  for (double& w : f.weight)
    if (w < 1e-12) w = 0;
  // drop zero-weight cycles
  std::vector<Seq> cyc;
  std::vector<double> wt;
  for (int j = 0; j < N; ++j)
    if (f.weight[j] > 0) {
      cyc.push_back(f.cycles[j]);
      wt.push_back(f.weight[j]);
    }
  f.cycles = std::move(cyc);
  f.weight = std::move(wt);
  f.min_weight = f.weight.empty() ? 0 : *std::min_element(f.weight.begin(), f.weight.end());
  f.max_weight = f.weight.empty() ? 0 : *std::max_element(f.weight.begin(), f.weight.end());
  std::vector<double> sum(m, 0.0);
  auto kept = cycle_edge_ids(H, f.cycles);
  for (std::size_t j = 0; j < kept.size(); ++j)
    for (int e : kept[j]) sum[e] += f.weight[j];
  for (double s : sum) {
    f.max_deviation = std::max(f.max_deviation, std::abs(1 - s));
    if (s < 1 - 1e-9) ++f.uncovered_edges;
  }
  if (f.exact && f.max_deviation > 1e-9) f.exact = false;
  return f;
}

std::vector<std::vector<Seq>> extract_cycle_collections(const Hypergraph& H, const FractionalCycleDecomposition& f,
                                                        int r, std::uint64_t seed) {
  if (r < 0) throw DomainError("r must be nonnegative");
  std::mt19937_64 rng(seed);
  auto ids = cycle_edge_ids(H, f.cycles);
  std::vector<char> edge_used(H.m(), 0);
  std::vector<std::vector<Seq>> out(r);
  for (int i = 0; i < r; ++i) {
    std::vector<char> vused(H.id_bound(), 0);
    while (true) {
      std::vector<int> cand;
      std::vector<double> wt;
      for (std::size_t c = 0; c < f.cycles.size(); ++c) {
        if (f.weight[c] <= 0) continue;
        bool ok = true;
        for (int v : f.cycles[c]) ok = ok && !vused[v];
        for (int e : ids[c]) ok = ok && !edge_used[e];
        if (ok) {
          cand.push_back(static_cast<int>(c));
          wt.push_back(f.weight[c]);
        }
      }
      if (cand.empty()) break;
      std::discrete_distribution<int> D(wt.begin(), wt.end());
      int c = cand[D(rng)];
      out[i].push_back(f.cycles[c]);
      for (int v : f.cycles[c]) vused[v] = 1;
      for (int e : ids[c]) edge_used[e] = 1;
    }
  }
  return out;
}

std::vector<std::vector<Seq>> cycles_to_paths(const std::vector<std::vector<Seq>>& collections, int k,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Seq>> out;
  for (const auto& col : collections) {
    std::vector<Seq> paths;
    for (const auto& c : col) {
      const int L = static_cast<int>(c.size());
      int r = std::uniform_int_distribution<int>(0, L - 1)(rng);
      // windows r..r+k-2 are deleted; the path starts right after them
      int s = (r + k - 1) % L;
      Seq p;
      for (int i = 0; i < L; ++i) p.push_back(c[(s + i) % L]);
      paths.push_back(std::move(p));
    }
    out.push_back(std::move(paths));
  }
  return out;
}

TypeStats type_statistics(const std::vector<int>& vertices, int k, const std::vector<std::vector<Seq>>& paths,
                          const CoverGates& g) {
  TypeStats st;
  st.max_con.assign(k + 1, 0);
  st.max_end.assign(k + 1, 0);
  const int r = static_cast<int>(paths.size());
  const double n = static_cast<double>(vertices.size());
  std::vector<PathCollection> pcs;
  for (const auto& p : paths) pcs.emplace_back(k, p);
  for (const auto& e : all_subsets(vertices, k)) {
    int lo = 0;
    std::vector<int> con(k + 1, 0), end(k + 1, 0);
    for (const auto& pc : pcs) {
      KType t = pc.classify(e);
      if (t.kind == KType::Lo) ++lo;
      else if (t.kind == KType::Con) ++con[t.j];
      else ++end[t.j];
    }
    st.max_lo = std::max(st.max_lo, lo);
    for (int j = 1; j <= k; ++j) {
      st.max_con[j] = std::max(st.max_con[j], con[j]);
      st.max_end[j] = std::max(st.max_end[j], end[j]);
    }
  }
  st.lo_ok = st.max_lo <= g.mu * r + 1e-9;
  for (int j = 1; j <= k; ++j) {
    double cap_con = g.cap_con * (j < k ? std::pow(n, k - j) : n);
    if (st.max_con[j] > cap_con + 1e-9) st.con_ok = false;
    if (j < k && st.max_end[j] > g.cap_end * std::pow(n, k - j) + 1e-9) st.end_ok = false;
  }
  return st;
}

CoverBundle simultaneous_path_cover(const Hypergraph& H, const FractionalCycleDecomposition& f, int r,
                                    const CoverGates& g, std::uint64_t seed) {
  std::mt19937_64 master(seed);
  CoverBundle b;
  for (int a = 1; a <= std::max(1, g.retries); ++a) {
    b = CoverBundle{};
    b.k = H.k();
    b.n = H.n();
    b.attempts = a;
    b.cycles = extract_cycle_collections(H, f, r, master());
    b.paths = cycles_to_paths(b.cycles, H.k(), master());
    for (const auto& col : b.paths) {
      int cov = 0;
      for (const auto& p : col) cov += static_cast<int>(p.size());
      b.coverage.push_back(cov);
      if (cov < (1 - g.mu) * H.n() - 1e-9) b.coverage_ok = false;
    }
    b.stats = type_statistics(H.vertices(), H.k(), b.paths, g);
    if (b.ok()) return b;
  }
  return b;
}

bool collections_valid(const Hypergraph& H, const std::vector<std::vector<Seq>>& collections, bool cycles,
                       std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  std::set<Tuple> seen_edges;
  for (std::size_t i = 0; i < collections.size(); ++i) {
    std::set<int> vs;
    for (const auto& s : collections[i]) {
      if (cycles ? !is_tight_cycle(H, s) : !is_tight_path(H, s))
        return fail("collection " + std::to_string(i) + " has an invalid member");
      for (int v : s)
        if (!vs.insert(v).second) return fail("collection " + std::to_string(i) + " repeats vertex " + std::to_string(v));
      for (const auto& e : cycles ? cycle_edges(s, H.k()) : path_edges(s, H.k()))
        if (!seen_edges.insert(e).second) return fail("edge " + set_key(e) + " used twice");
    }
  }
  return true;
}

nlohmann::json bundle_to_json(const CoverBundle& b) {
  nlohmann::json j;
  j["k"] = b.k;
  j["n"] = b.n;
  j["collections"] = b.paths;
  j["cycles"] = b.cycles;
  j["coverage"] = b.coverage;
  j["attempts"] = b.attempts;
  j["coverage_ok"] = b.coverage_ok;
  j["types"] = {{"max_lo", b.stats.max_lo},
                {"max_con", b.stats.max_con},
                {"max_end", b.stats.max_end},
                {"lo_ok", b.stats.lo_ok},
                {"con_ok", b.stats.con_ok},
                {"end_ok", b.stats.end_ok}};
  return j;
}

}  // namespace hcpack
