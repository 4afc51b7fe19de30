#include "hcpack/oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <nlohmann/json.hpp>

#include "hcpack/walker.hpp"

namespace hcpack {

namespace {

int max_degree(const Hypergraph& H) {
  int d = 0;
  for (int v : H.vertices()) d = std::max(d, H.degree(v));
  return d;
}

}  // namespace

RegKResult reg_k(const Hypergraph& H, std::size_t cap) {
  if (H.m() > cap) throw CapExceeded("reg_k: " + std::to_string(H.m()) + " edges exceed cap " + std::to_string(cap));
  const int k = H.k();
  RegKResult res;
  // edges touching low-degree vertices first: they are the most constrained
  std::vector<int> order(H.m());
  for (std::size_t i = 0; i < H.m(); ++i) order[i] = static_cast<int>(i);
  auto tight = [&](int e) {
    int d = INT32_MAX;
    for (int v : H.edge(e)) d = std::min(d, H.degree(v));
    return d;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return tight(a) < tight(b); });
  for (int r = max_degree(H) / k * k; r >= k; r -= k) {
    std::vector<int> deg(H.id_bound(), 0), left(H.id_bound(), 0);
    for (int v : H.vertices()) left[v] = H.degree(v);
    bool feasible = true;
    for (int v : H.vertices()) feasible = feasible && left[v] >= r;
    if (!feasible) continue;
    std::vector<int> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
      ++res.nodes;
      if (i == order.size()) {
        for (int v : H.vertices())
          if (deg[v] != r) return false;
        return true;
      }
      const Tuple& e = H.edge(order[i]);
      for (int v : e) --left[v];
      bool can_take = true, can_skip = true;
      for (int v : e) {
        can_take = can_take && deg[v] + 1 <= r;
        can_skip = can_skip && deg[v] + left[v] >= r;
      }
      if (can_take && deg[e[0]] + 1 + left[e[0]] >= r) {
        for (int v : e) ++deg[v];
        chosen.push_back(order[i]);
        bool ok = true;
        for (int v : e) ok = ok && deg[v] + left[v] >= r;
        if (ok && rec(i + 1)) return true;
        chosen.pop_back();
        for (int v : e) --deg[v];
      }
      if (can_skip && rec(i + 1)) return true;
      for (int v : e) ++left[v];
      return false;
    };
    if (rec(0)) {
      res.r = r;
      std::sort(chosen.begin(), chosen.end());
      res.witness = chosen;
      return res;
    }
  }
  return res;
}

RegKResult reg_k_bruteforce(const Hypergraph& H, std::size_t cap) {
  if (H.m() > cap) throw CapExceeded("reg_k_bruteforce: too many edges");
  const int k = H.k();
  const int m = static_cast<int>(H.m());
  RegKResult res;
  std::vector<int> deg(H.id_bound());
  for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
    ++res.nodes;
    std::fill(deg.begin(), deg.end(), 0);
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1ul)
        for (int v : H.edge(e)) ++deg[v];
    int r = deg[H.vertices()[0]];
    bool regular = r % k == 0;
    for (int v : H.vertices()) regular = regular && deg[v] == r;
    if (regular && r > res.r) {
      res.r = r;
      res.witness.clear();
      for (int e = 0; e < m; ++e)
        if (mask >> e & 1ul) res.witness.push_back(e);
    }
  }
  return res;
}

std::optional<Seq> hamilton_exists(const Hypergraph& H, int cap) {
  const int n = H.n();
  const int k = H.k();
  if (n > cap) throw CapExceeded("hamilton_exists: n = " + std::to_string(n) + " exceeds cap");
  if (n < k + 1) return std::nullopt;
  Seq seq{H.vertices()[0]};
  std::vector<char> used(H.id_bound(), 0);
  used[seq[0]] = 1;
  std::function<bool()> rec = [&]() -> bool {
    const int p = static_cast<int>(seq.size());
    if (p == n) return is_tight_cycle(H, seq);
    std::vector<int> cand;
    if (p >= k - 1) {
      Tuple x(seq.end() - (k - 1), seq.end());
      std::sort(x.begin(), x.end());
      cand = H.neighborhood(x);
    } else {
      cand = H.vertices();
    }
    for (int v : cand) {
      if (used[v]) continue;
      seq.push_back(v);
      used[v] = 1;
      if (rec()) return true;
      used[v] = 0;
      seq.pop_back();
    }
    return false;
  };
  if (rec()) return canonical_cycle(seq);
  return std::nullopt;
}

std::map<Seq, Rational> walk_distribution(const Hypergraph& H, const EdgeWeighting& w, int L, int t, double cap) {
  std::map<Seq, Rational> out;
  for_each_walk(
      H, w, L, t, [&](const std::vector<int>& s, const Rational& p) { out[s] += p; }, cap);
  return out;
}

PackingReport validate_packing(const Hypergraph& H, const std::vector<CycleFactor>& factors,
                               const std::vector<std::vector<int>>& target_lengths) {
  PackingReport rep;
  if (factors.empty()) rep.warnings.push_back("empty factor list");
  if (!target_lengths.empty() && target_lengths.size() != factors.size()) {
    rep.ok = false;
    rep.reasons.push_back("expected " + std::to_string(target_lengths.size()) + " factors, got " +
                          std::to_string(factors.size()));
  }
  std::map<Tuple, int> used;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::vector<int> lengths =
        i < target_lengths.size() ? target_lengths[i] : factors[i].lengths();
    FactorCheck fc = verify_factor_copy(H, factors[i], lengths);
    if (!fc.ok) {
      rep.ok = false;
      for (const auto& r : fc.reasons) rep.reasons.push_back("factor " + std::to_string(i) + ": " + r);
    }
    for (const auto& c : factors[i].cycles) {
      if (static_cast<int>(c.size()) < H.k() + 1) continue;
      for (const auto& e : cycle_edges(c, H.k())) {
        auto [it, fresh] = used.emplace(e, static_cast<int>(i));
        if (!fresh) {
          rep.ok = false;
          rep.reasons.push_back("edge " + set_key(e) + " used by factors " + std::to_string(it->second) + " and " +
                                std::to_string(i));
        }
      }
    }
  }
  return rep;
}

KType classify_oracle(int k, const std::vector<Seq>& paths, const Tuple& e) {
  const int ke = static_cast<int>(e.size());
  auto as_set = [](Seq s) {
    std::sort(s.begin(), s.end());
    return s;
  };
  int best_end = 0;
  for (unsigned mask = 1; mask < (1u << ke); ++mask) {
    Tuple x;
    for (int i = 0; i < ke; ++i)
      if (mask >> i & 1u) x.push_back(e[i]);
    x = as_set(x);
    for (const auto& P : paths) {
      const int l = static_cast<int>(P.size());
      bool end = false;
      for (int i = 1; i <= l && !end; ++i) end = as_set(Seq(P.begin(), P.begin() + i)) == x;
      if (!end) end = as_set(Seq(P.begin() + std::max(0, l - k), P.end())) == x;
      if (end) best_end = std::max(best_end, static_cast<int>(x.size()));
    }
  }
  if (best_end > 0) return {KType::End, best_end};
  std::set<int> covered;
  for (const auto& P : paths) covered.insert(P.begin(), P.end());
  for (int v : e)
    if (!covered.count(v)) return {KType::Lo, 0};
  int j = 0;
  for (const auto& P : paths) {
    std::set<int> vp(P.begin(), P.end());
    int c = 0;
    for (int v : e) c += vp.count(v) ? 1 : 0;
    j = std::max(j, c);
  }
  return {KType::Con, j};
}

nlohmann::json packing_report_json(const PackingReport& r) {
  return {{"ok", r.ok}, {"reasons", r.reasons}, {"warnings", r.warnings}};
}

nlohmann::json regk_json(const RegKResult& r) { return {{"r", r.r}, {"witness", r.witness}, {"nodes", r.nodes}}; }

}  // namespace hcpack
