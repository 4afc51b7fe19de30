#include "hcpack/absorb.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <nlohmann/json.hpp>

#include "hcpack/fracmatch.hpp"
#include "hcpack/walker.hpp"

namespace hcpack {

bool is_x_absorber(const Hypergraph& H, const Seq& a, int x) {
  const int k = H.k();
  if (static_cast<int>(a.size()) != 2 * k) return false;
  if (!is_tight_path(H, a)) return false;
  Seq b(a.begin(), a.begin() + k);
  b.push_back(x);
  b.insert(b.end(), a.begin() + k, a.end());
  return is_tight_path(H, b);
}

std::vector<int> absorber_centers(const Hypergraph& H, const Seq& a) {
  std::vector<int> out;
  if (!is_tight_path(H, a)) return out;
  for (int x : H.vertices())
    if (is_x_absorber(H, a, x)) out.push_back(x);
  return out;
}

std::vector<Absorber> enumerate_absorbers(const Hypergraph& H, int x, std::size_t cap) {
  if (!H.has_vertex(x)) throw DomainError("invalid vertex " + std::to_string(x));
  const int k = H.k();
  std::vector<Absorber> out;
  if (H.degree(x) == 0) return out;
  Seq a;
  std::vector<char> used(H.id_bound(), 0);
  used[x] = 1;
  auto window_ok = [&](const Seq& s, int end) {
    Tuple e(s.begin() + end - k + 1, s.begin() + end + 1);
    return H.has_edge(e);
  };
  // inserted sequence a_1..a_k x a_k+1..; checked window by window
  auto inserted = [&]() {
    Seq b;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (i == k) b.push_back(x);
      b.push_back(a[i]);
    }
    if (static_cast<int>(a.size()) == k) b.push_back(x);
    return b;
  };
  std::function<bool()> rec = [&]() -> bool {
    const int p = static_cast<int>(a.size());
    if (p == 2 * k) {
      out.push_back({a, absorber_centers(H, a)});
      return out.size() < cap;
    }
    for (int v : H.vertices()) {
      if (used[v]) continue;
      a.push_back(v);
      bool ok = true;
      if (p >= k - 1) ok = window_ok(a, p);
      if (ok && p >= k - 1) {
        Seq b = inserted();
        int last = static_cast<int>(b.size()) - 1;
        ok = window_ok(b, last);
        if (ok && p == k - 1) ok = window_ok(b, last - 1);
      }
      if (ok) {
        used[v] = 1;
        bool more = rec();
        used[v] = 0;
        if (!more) {
          a.pop_back();
          return false;
        }
      }
      a.pop_back();
    }
    return true;
  };
  if (cap > 0) rec();
  return out;
}

std::string ItemChecks::failing() const {
  std::string s;
  auto add = [&](bool ok, const char* name) {
    if (ok) return;
    if (!s.empty()) s += ",";
    s += name;
  };
  add(paths_bound, "i");
  add(regular_residual, "ii");
  add(enough_blocks, "iii");
  add(no_bad_blocks, "iv");
  return s;
}

StarSizes star_sizes(int n, int k, const AbsorbParams& p) {
  if (p.L < 1 || p.a < 1 || p.ell < 0 || p.theta <= 0 || p.theta > 1) throw DomainError("bad absorbing parameters");
  if (p.L % (p.a * (2 * k + p.ell)) != 0)
    throw DomainError("L must be a multiple of a(2k+l) = " + std::to_string(p.a * (2 * k + p.ell)));
  int t = p.t_star;
  if (t <= 0) {
    t = std::max(k + 1, static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n)) - 1e-12)));
    t = (t + p.L - 1) / p.L * p.L;
  }
  if (t % p.L != 0) throw DomainError("t_star must be a multiple of L");
  int s = p.s_star >= 0 ? p.s_star : static_cast<int>(std::floor(p.theta * p.theta * n / t + 1e-12));
  return {t, s};
}

namespace {

void fill_blocks(const Hypergraph& H_plus, int n, AbsorbingStructure& S) {
  const int k = S.k;
  const auto& p = S.params;
  const int unit = 2 * k + p.ell;
  const int blen = p.a * unit;
  const double bad_cap = std::pow(p.theta, 4) * n;
  S.blocks.clear();
  S.sigma.assign(S.paths.size(), 0);
  S.bad_blocks_dropped = 0;
  for (std::size_t pi = 0; pi < S.paths.size(); ++pi) {
    const Seq& P = S.paths[pi];
    for (int i = 0; (i + 1) * blen <= static_cast<int>(P.size()); ++i) {
      Block B;
      B.path = static_cast<int>(pi);
      B.index = i;
      B.offset = i * blen;
      B.seq.assign(P.begin() + B.offset, P.begin() + B.offset + blen);
      for (int j = 0; j < p.a; ++j) B.slots.emplace_back(B.seq.begin() + j * unit, B.seq.begin() + j * unit + 2 * k);
      for (int x : H_plus.vertices()) {
        for (int j = 0; j < p.a; ++j)
          if (is_x_absorber(H_plus, B.slots[j], x)) {
            B.slot_for[x] = j;
            break;
          }
      }
      B.unabsorbable = H_plus.n() - static_cast<int>(B.slot_for.size());
      B.good = B.unabsorbable <= bad_cap + 1e-9;
      if (B.good) {
        S.blocks.push_back(std::move(B));
        ++S.sigma[pi];
      } else {
        ++S.bad_blocks_dropped;
      }
    }
  }
}

}  // namespace

ItemChecks check_items(const Hypergraph& H_plus, const Hypergraph& H, const AbsorbingStructure& S) {
  ItemChecks c;
  const int n = H.n();
  const auto& p = S.params;
  const double t4 = std::pow(p.theta, 4) * n;
  c.paths_bound = S.paths.size() <= p.theta * p.theta * n / p.L + 1e-9;
  std::vector<int> used;
  for (const auto& P : S.paths) used.insert(used.end(), P.begin(), P.end());
  Hypergraph rest = H.remove_vertices(used);
  double rho_in = p.rho >= 0 ? p.rho : rho_of(H);
  c.regular_residual = rest.m() == 0 ? used.empty() : rho_of(rest) <= 2 * rho_in + 1e-9;
  if (S.s_star > 0) {
    const double need = p.cover_factor * t4;
    for (int x : H_plus.vertices()) {
      int cnt = 0;
      for (const auto& B : S.blocks) cnt += B.slot_for.count(x) ? 1 : 0;
      if (cnt + 1e-9 < need) {
        c.enough_blocks = false;
        break;
      }
    }
  }
  for (const auto& B : S.blocks)
    if (B.unabsorbable > t4 + 1e-9) c.no_bad_blocks = false;
  return c;
}

AbsorbingStructure build_absorbing_structure(const Hypergraph& H_plus, const Hypergraph& H, const AbsorbParams& p,
                                             std::uint64_t seed) {
  const int k = H.k();
  if (H_plus.k() != k) throw DomainError("uniformity mismatch");
  for (int v : H.vertices())
    if (!H_plus.has_vertex(v)) throw DomainError("H is not inside H_plus");
  const int n = H.n();
  auto [t_star, s_star] = star_sizes(n, k, p);
  std::mt19937_64 master(seed);
  AbsorbingStructure S;
  for (int attempt = 1; attempt <= std::max(1, p.retries); ++attempt) {
    S = AbsorbingStructure{};
    S.k = k;
    S.params = p;
    S.n = n;
    S.t_star = t_star;
    S.s_star = s_star;
    S.attempts = attempt;
    std::mt19937_64 rng(master());
    Hypergraph residual = H;
    for (int s = 1; s <= s_star; ++s) {
      try {
        auto w = assigned_pfm(residual, rng(), p.balance_bound);
        if (!w) {
          S.fatal = true;
          S.fatal_reason = "stage " + std::to_string(s) + ": no balanced perfect fractional matching";
          break;
        }
        Seq walk = sample_walk(residual, *w, p.L, t_star, rng());
        Seq sorted = walk;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
          ++S.stages_failed;
          continue;
        }
        ++S.stages_kept;
        for (int q = 0; q < t_star / p.L; ++q) S.paths.emplace_back(walk.begin() + q * p.L, walk.begin() + (q + 1) * p.L);
        residual = residual.remove_vertices(walk);
      } catch (const NotConnectedError& e) {
        S.fatal = true;
        S.fatal_reason = "stage " + std::to_string(s) + ": not connected: " + e.what();
        break;
      } catch (const StuckWalkError& e) {
        S.fatal = true;
        S.fatal_reason = "stage " + std::to_string(s) + ": " + e.what();
        break;
      }
    }
    if (S.fatal) continue;
    fill_blocks(H_plus, n, S);
    S.items = check_items(H_plus, H, S);
    S.ok = S.items.all();
    if (S.ok) return S;
  }
  return S;
}

std::vector<int> max_bipartite_matching(const Bipartite& G) {
  const int n = static_cast<int>(G.size());
  int nr = 0;
  for (const auto& a : G)
    for (int r : a) nr = std::max(nr, r + 1);
  std::vector<int> match_l(n, -1), match_r(nr, -1);
  std::vector<int> seen(nr, -1);
  std::function<bool(int, int)> augment = [&](int l, int stamp) {
    for (int r : G[l]) {
      if (seen[r] == stamp) continue;
      seen[r] = stamp;
      if (match_r[r] < 0 || augment(match_r[r], stamp)) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    return false;
  };
  for (int l = 0; l < n; ++l) augment(l, l);
  return match_l;
}

int hall_guarantee(const Bipartite& G) {
  const int n = static_cast<int>(G.size());
  if (n == 0) return 0;
  int d1 = n;
  std::vector<int> d2(n, 0);
  for (const auto& a : G) {
    d1 = std::min(d1, static_cast<int>(a.size()));
    for (int r : a) ++d2[r];
  }
  int g = d1 + *std::min_element(d2.begin(), d2.end()) - n;
  return g > 0 ? (g + 1) / 2 : 0;
}

std::vector<std::vector<int>> disjoint_perfect_matchings(const Bipartite& G, int count) {
  Bipartite R = G;
  for (auto& a : R) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    for (int r : a)
      if (r < 0 || r >= static_cast<int>(G.size())) throw DomainError("right vertex out of range");
  }
  std::vector<std::vector<int>> out;
  while (static_cast<int>(out.size()) < count && !R.empty()) {
    auto m = max_bipartite_matching(R);
    if (std::find(m.begin(), m.end(), -1) != m.end()) break;
    for (std::size_t l = 0; l < R.size(); ++l) R[l].erase(std::find(R[l].begin(), R[l].end(), m[l]));
    out.push_back(std::move(m));
  }
  return out;
}

Absorption absorb(const AbsorbingStructure& S, const std::vector<int>& X, std::uint64_t seed) {
  const int c = S.capacity();
  if (static_cast<int>(X.size()) != c)
    throw DomainError("absorb: |X| = " + std::to_string(X.size()) + " but capacity is " + std::to_string(c));
  Absorption out;
  out.paths = S.paths;
  if (c == 0) return out;
  Bipartite G(c);
  for (int i = 0; i < c; ++i)
    for (int b = 0; b < c; ++b)
      if (S.blocks[b].slot_for.count(X[i])) G[i].push_back(b);
  auto family = disjoint_perfect_matchings(G, c);
  out.matchings_available = static_cast<int>(family.size());
  if (family.empty()) {
    auto m = max_bipartite_matching(G);
    std::string names;
    for (int i = 0; i < c; ++i)
      if (m[i] < 0) names += (names.empty() ? "" : " ") + std::to_string(X[i]);
    throw StageFailure("absorb", "no perfect matching; unmatched: " + names);
  }
  std::mt19937_64 rng(seed);
  const auto& mu = family[std::uniform_int_distribution<std::size_t>(0, family.size() - 1)(rng)];
  const int k = S.k;
  const int unit = 2 * k + S.params.ell;
  std::vector<std::vector<std::pair<int, int>>> inserts(S.paths.size());
  for (int i = 0; i < c; ++i) {
    const Block& B = S.blocks[mu[i]];
    int slot = B.slot_for.at(X[i]);
    inserts[B.path].emplace_back(B.offset + slot * unit + k, X[i]);
    out.block_of[X[i]] = mu[i];
  }
  for (std::size_t pi = 0; pi < inserts.size(); ++pi) {
    auto& ins = inserts[pi];
    std::sort(ins.rbegin(), ins.rend());
    for (auto [pos, x] : ins) out.paths[pi].insert(out.paths[pi].begin() + pos, x);
  }
  return out;
}

nlohmann::json structure_to_json(const AbsorbingStructure& S) {
  nlohmann::json j;
  j["paths"] = S.paths;
  j["sigma"] = S.sigma;
  j["capacity"] = S.capacity();
  auto& blocks = j["blocks"] = nlohmann::json::array();
  for (const auto& B : S.blocks)
    blocks.push_back({{"path", B.path},
                      {"index", B.index},
                      {"offset", B.offset},
                      {"slots", B.slots},
                      {"absorbable", B.slot_for.size()},
                      {"unabsorbable", B.unabsorbable}});
  const auto& p = S.params;
  j["params"] = {{"L", p.L}, {"a", p.a}, {"ell", p.ell}, {"theta", p.theta}, {"cover_factor", p.cover_factor},
                 {"retries", p.retries}};
  j["t_star"] = S.t_star;
  j["s_star"] = S.s_star;
  j["stages_kept"] = S.stages_kept;
  j["stages_failed"] = S.stages_failed;
  j["attempts"] = S.attempts;
  j["bad_blocks_dropped"] = S.bad_blocks_dropped;
  j["fatal"] = S.fatal_reason;
  j["items"] = {{"i", S.items.paths_bound},
                {"ii", S.items.regular_residual},
                {"iii", S.items.enough_blocks},
                {"iv", S.items.no_bad_blocks}};
  j["ok"] = S.ok;
  return j;
}

}  // namespace hcpack
