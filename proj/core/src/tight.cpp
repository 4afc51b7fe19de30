#include "hcpack/tight.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace hcpack {

namespace {

bool distinct_valid(const Hypergraph& H, const Seq& seq) {
  std::set<int> seen;
  for (int v : seq) {
    if (!H.has_vertex(v)) return false;
    if (!seen.insert(v).second) return false;
  }
  return true;
}

}  // namespace

std::vector<Tuple> path_edges(const Seq& seq, int k) {
  std::vector<Tuple> out;
  for (int i = 0; i + k <= static_cast<int>(seq.size()); ++i) {
    Tuple e(seq.begin() + i, seq.begin() + i + k);
    std::sort(e.begin(), e.end());
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Tuple> cycle_edges(const Seq& seq, int k) {
  std::vector<Tuple> out;
  int l = static_cast<int>(seq.size());
  for (int i = 0; i < l; ++i) {
    Tuple e(k);
    for (int t = 0; t < k; ++t) e[t] = seq[(i + t) % l];
    std::sort(e.begin(), e.end());
    out.push_back(std::move(e));
  }
  return out;
}

bool is_tight_path(const Hypergraph& H, const Seq& seq) {
  if (seq.empty() || !distinct_valid(H, seq)) return false;
  for (const Tuple& e : path_edges(seq, H.k()))
    if (!H.has_edge(e)) return false;
  return true;
}

bool is_tight_cycle(const Hypergraph& H, const Seq& seq) {
  if (static_cast<int>(seq.size()) < H.k() + 1 || !distinct_valid(H, seq)) return false;
  for (const Tuple& e : cycle_edges(seq, H.k()))
    if (!H.has_edge(e)) return false;
  return true;
}

Boundary boundary(const Seq& P, int k) {
  int l = static_cast<int>(P.size());
  if (l >= 2 * k + 1) return {Seq(P.begin(), P.begin() + k), Seq(P.end() - k, P.end())};
  return {P, {}};
}

Seq interior(const Seq& P, int k) {
  int l = static_cast<int>(P.size());
  if (l >= 2 * k + 1) return Seq(P.begin() + k, P.end() - k);
  return {};
}

Seq canonical_cycle(const Seq& c) {
  if (c.empty()) return c;
  int l = static_cast<int>(c.size());
  int at = static_cast<int>(std::min_element(c.begin(), c.end()) - c.begin());
  Seq fwd(l), bwd(l);
  for (int i = 0; i < l; ++i) {
    fwd[i] = c[(at + i) % l];
    bwd[i] = c[((at - i) % l + l) % l];
  }
  return std::min(fwd, bwd);
}

Seq canonical_path(const Seq& p) {
  Seq r(p.rbegin(), p.rend());
  return std::min(p, r);
}

std::vector<int> CycleFactor::lengths() const {
  std::vector<int> ls;
  for (const Seq& c : cycles) ls.push_back(static_cast<int>(c.size()));
  std::sort(ls.begin(), ls.end());
  return ls;
}

int CycleFactor::total() const {
  int t = 0;
  for (const Seq& c : cycles) t += static_cast<int>(c.size());
  return t;
}

int CycleFactor::girth() const {
  int g = 0;
  for (const Seq& c : cycles) g = g == 0 ? static_cast<int>(c.size()) : std::min(g, static_cast<int>(c.size()));
  return g;
}

FactorCheck verify_factor_copy(const Hypergraph& H, const CycleFactor& F, std::vector<int> target_lengths) {
  FactorCheck r;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.reasons.push_back(std::move(why));
  };
  std::map<int, int> seen;
  for (std::size_t i = 0; i < F.cycles.size(); ++i) {
    const Seq& c = F.cycles[i];
    if (!is_tight_cycle(H, c)) fail("cycle " + std::to_string(i) + " is not a tight cycle of the host");
    for (int v : c) ++seen[v];
  }
  for (auto [v, cnt] : seen) {
    if (cnt > 1) fail("vertex " + std::to_string(v) + " used " + std::to_string(cnt) + " times");
    if (!H.has_vertex(v)) fail("vertex " + std::to_string(v) + " not in host");
  }
  std::string missing;
  for (int v : H.vertices())
    if (!seen.count(v)) missing += (missing.empty() ? "" : " ") + std::to_string(v);
  if (!missing.empty()) fail("not spanning, missing vertices: " + missing);
  std::sort(target_lengths.begin(), target_lengths.end());
  if (F.lengths() != target_lengths) fail("cycle length multiset differs from target");
  return r;
}

std::string KType::str() const {
  switch (kind) {
    case End:
      return std::to_string(j) + "-end";
    case Con:
      return std::to_string(j) + "-con";
    default:
      return "lo";
  }
}

std::string set_key(Tuple x) {
  std::sort(x.begin(), x.end());
  std::string s;
  for (int v : x) {
    s += std::to_string(v);
    s += ',';
  }
  return s;
}

PathCollection::PathCollection(int k, std::vector<Seq> paths) : k_(k), paths_(std::move(paths)) {
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    const Seq& P = paths_[i];
    for (int v : P)
      if (!owner_.emplace(v, static_cast<int>(i)).second)
        throw DomainError("paths are not vertex-disjoint at vertex " + std::to_string(v));
    int l = static_cast<int>(P.size());
    for (int t = 1; t <= std::min(l, k_); ++t) end_sets_.insert(set_key(Tuple(P.begin(), P.begin() + t)));
    if (l >= k_) end_sets_.insert(set_key(Tuple(P.end() - k_, P.end())));
  }
}

int PathCollection::owner(int v) const {
  auto it = owner_.find(v);
  return it == owner_.end() ? -1 : it->second;
}

bool PathCollection::is_end_set(Tuple x) const {
  if (x.empty()) return false;
  if (static_cast<int>(x.size()) <= k_) return end_sets_.count(set_key(x)) > 0;
  int o = owner(x[0]);
  if (o < 0) return false;
  const Seq& P = paths_[o];
  if (x.size() > P.size()) return false;
  return set_key(Tuple(P.begin(), P.begin() + x.size())) == set_key(x);
}

KType PathCollection::classify(const Tuple& e) const {
  Tuple s = e;
  std::sort(s.begin(), s.end());
  int k = static_cast<int>(s.size());
  int best_end = 0;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    int sz = __builtin_popcount(mask);
    if (sz <= best_end) continue;
    Tuple x;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1u) x.push_back(s[i]);
    if (end_sets_.count(set_key(x))) best_end = sz;
  }
  if (best_end > 0) return {KType::End, best_end};
  std::map<int, int> per_path;
  for (int v : s) {
    int o = owner(v);
    if (o < 0) return {KType::Lo, 0};
    ++per_path[o];
  }
  int j = 0;
  for (auto [p, c] : per_path) j = std::max(j, c);
  return {KType::Con, j};
}

nlohmann::json factors_to_json(const std::vector<CycleFactor>& factors) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CycleFactor& F : factors) {
    std::vector<Seq> cs;
    for (const Seq& c : F.cycles) cs.push_back(canonical_cycle(c));
    std::sort(cs.begin(), cs.end());
    arr.push_back({{"cycles", cs}});
  }
  return {{"factors", arr}};
}

std::vector<CycleFactor> factors_from_json(const nlohmann::json& j) {
  std::vector<CycleFactor> out;
  if (!j.contains("factors") || !j["factors"].is_array()) throw DomainError("factors JSON needs a `factors` array");
  for (const auto& f : j["factors"]) {
    CycleFactor F;
    for (const auto& c : f.at("cycles")) F.cycles.push_back(c.get<Seq>());
    out.push_back(std::move(F));
  }
  return out;
}

}  // namespace hcpack
