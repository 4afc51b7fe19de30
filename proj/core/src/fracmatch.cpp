#include "hcpack/fracmatch.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "hcpack/lp.hpp"

namespace hcpack {

EdgeWeighting EdgeWeighting::from_exact(std::vector<Rational> q) {
  EdgeWeighting r;
  r.exact = true;
  r.w.reserve(q.size());
  for (auto& x : q) {
    x.canonicalize();
    r.w.push_back(x.get_d());
  }
  r.q = std::move(q);
  return r;
}

EdgeWeighting EdgeWeighting::from_double(std::vector<double> w) {
  EdgeWeighting r;
  r.w = std::move(w);
  return r;
}

namespace {

std::vector<int> edges_containing(const Hypergraph& H, const Tuple& x) {
  Tuple s = x;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) {
    std::vector<int> all(H.m());
    for (std::size_t i = 0; i < H.m(); ++i) all[i] = static_cast<int>(i);
    return all;
  }
  if (static_cast<int>(s.size()) > H.k()) return {};
  for (int v : s)
    if (!H.has_vertex(v)) throw DomainError("invalid vertex " + std::to_string(v));
  if (static_cast<int>(s.size()) == H.k()) {
    auto id = H.find_edge(s);
    return id ? std::vector<int>{*id} : std::vector<int>{};
  }
  return H.incident(s);
}

}  // namespace

Rational omega_exact(const Hypergraph& H, const EdgeWeighting& w, const Tuple& x) {
  if (!w.exact) throw DomainError("omega_exact on a float weighting");
  Rational s = 0;
  for (int id : edges_containing(H, x)) s += w.q[id];
  return s;
}

double omega(const Hypergraph& H, const EdgeWeighting& w, const Tuple& x) {
  double s = 0;
  for (int id : edges_containing(H, x)) s += w.w[id];
  return s;
}

std::vector<Rational> vertex_sums_exact(const Hypergraph& H, const EdgeWeighting& w) {
  std::vector<Rational> out;
  for (int v : H.vertices()) {
    Rational s = 0;
    for (int id : H.vertex_edges(v)) s += w.q[id];
    out.push_back(s);
  }
  return out;
}

std::vector<double> vertex_sums(const Hypergraph& H, const EdgeWeighting& w) {
  std::vector<double> out;
  for (int v : H.vertices()) {
    double s = 0;
    for (int id : H.vertex_edges(v)) s += w.w[id];
    out.push_back(s);
  }
  return out;
}

bool is_perfect_fractional_matching(const Hypergraph& H, const EdgeWeighting& w, double tol) {
  if (w.size() != H.m()) return false;
  if (w.exact) {
    for (const Rational& q : w.q)
      if (q <= 0) return false;
    for (const Rational& s : vertex_sums_exact(H, w))
      if (s != 1) return false;
    return true;
  }
  for (double x : w.w)
    if (!(x > 0)) return false;
  for (double s : vertex_sums(H, w))
    if (std::abs(s - 1.0) > tol) return false;
  return true;
}

EdgeWeighting uniform_weighting(const Hypergraph& H, bool exact) {
  if (H.m() == 0) throw DomainError("uniform_weighting: empty edge set");
  Rational w0(H.n(), static_cast<long>(H.k() * H.m()));
  w0.canonicalize();
  EdgeWeighting r = exact ? EdgeWeighting::from_exact(std::vector<Rational>(H.m(), w0))
                          : EdgeWeighting::from_double(std::vector<double>(H.m(), w0.get_d()));
  r.method = "uniform";
  return r;
}

std::size_t WalkRegistry::total() const {
  std::size_t t = 0;
  for (const auto& [p, ws] : walks) t += ws.size();
  return t;
}

WalkRegistry build_walk_registry(const Hypergraph& H, std::size_t cap_per_pair, std::uint64_t seed) {
  WalkRegistry R;
  std::mt19937_64 rng(seed);
  const int k = H.k();
  for (int s : H.vertices()) {
    for (int t : H.vertices()) {
      if (s == t) continue;
      std::vector<Tuple> ws;
      for (int id : H.vertex_edges(s)) {
        const Tuple& e = H.edge(id);
        if (std::binary_search(e.begin(), e.end(), t)) continue;
        Tuple M;
        for (int v : e)
          if (v != s) M.push_back(v);
        Tuple M2 = M;
        M2.push_back(t);
        if (!H.has_edge(M2)) continue;
        std::sort(M.begin(), M.end());
        do {
          Tuple w;
          w.reserve(k + 1);
          w.push_back(s);
          w.insert(w.end(), M.begin(), M.end());
          w.push_back(t);
          ws.push_back(std::move(w));
        } while (std::next_permutation(M.begin(), M.end()));
      }
      if (ws.size() > cap_per_pair) {
        std::shuffle(ws.begin(), ws.end(), rng);
        ws.resize(cap_per_pair);
        std::sort(ws.begin(), ws.end());
      }
      R.walks[{s, t}] = std::move(ws);
    }
  }
  return R;
}

namespace {

template <class T>
T make_weight(long num, long den);
template <>
Rational make_weight<Rational>(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}
template <>
double make_weight<double>(long num, long den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

template <class T>
std::vector<T> redistribute(const Hypergraph& H, const WalkRegistry& W) {
  const int n = H.n(), k = H.k();
  const T w0 = make_weight<T>(n, k * static_cast<long>(H.m()));
  std::vector<T> w(H.m(), w0);
  std::unordered_map<int, T> xi;
  for (int v : H.vertices()) xi[v] = w0 * H.degree(v) - 1;
  for (int s : H.vertices())
    for (int t : H.vertices()) {
      if (s == t) continue;
      auto it = W.walks.find({s, t});
      if (it == W.walks.end() || it->second.empty()) throw NotConnectedError(s, t);
    }
  std::unordered_map<int, long> minus, plus;
  for (int s : H.vertices()) {
    if (xi[s] == 0) continue;
    for (int t : H.vertices()) {
      if (s == t) continue;
      const auto& ws = W.walks.at({s, t});
      minus.clear();
      plus.clear();
      for (const Tuple& walk : ws) {
        auto e1 = H.find_edge(Tuple(walk.begin(), walk.begin() + k));
        auto e2 = H.find_edge(Tuple(walk.begin() + 1, walk.end()));
        if (!e1 || !e2) throw DomainError("registry walk is not a walk of the host");
        ++minus[*e1];
        ++plus[*e2];
      }
      T a = xi[s] / (T(n) * T(static_cast<long>(ws.size())));
      for (auto [e, c] : minus) w[e] -= a * T(c);
      for (auto [e, c] : plus) w[e] += a * T(c);
    }
  }
  int worst = -1;
  for (std::size_t e = 0; e < w.size(); ++e)
    if (w[e] <= 0 && (worst < 0 || w[e] < w[worst])) worst = static_cast<int>(e);
  if (worst >= 0) {
    std::ostringstream msg;
    msg << "nonpositive weight on edge " << worst << " {";
    for (int v : H.edge(worst)) msg << ' ' << v;
    msg << " }";
    throw BalanceError(worst, msg.str());
  }
  return w;
}

}  // namespace

EdgeWeighting redistribute_pfm(const Hypergraph& H, const WalkRegistry& W, bool exact) {
  if (H.m() == 0) throw DomainError("redistribute_pfm: empty edge set");
  EdgeWeighting r = exact ? EdgeWeighting::from_exact(redistribute<Rational>(H, W))
                          : EdgeWeighting::from_double(redistribute<double>(H, W));
  r.method = "redistribution";
  return r;
}

double balancedness(const EdgeWeighting& w) {
  if (w.w.empty()) return 1.0;
  auto [lo, hi] = std::minmax_element(w.w.begin(), w.w.end());
  return *hi / *lo;
}

Rational balancedness_exact(const EdgeWeighting& w) {
  if (!w.exact) throw DomainError("balancedness_exact on a float weighting");
  if (w.q.empty()) return 1;
  auto [lo, hi] = std::minmax_element(w.q.begin(), w.q.end());
  Rational r = *hi / *lo;
  r.canonicalize();
  return r;
}

std::optional<EdgeWeighting> pfm_lp(const Hypergraph& H) {
  if (H.m() == 0) return std::nullopt;
  const int m = static_cast<int>(H.m());
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  for (int v : H.vertices()) {
    std::vector<double> row(m + 1, 0.0);
    row[0] = H.degree(v);
    for (int id : H.vertex_edges(v)) row[1 + id] = 1.0;
    A.push_back(std::move(row));
    b.push_back(1.0);
  }
  std::vector<double> c(m + 1, 0.0);
  c[0] = 1.0;
  LPResult res = solve_lp(A, b, c);
  if (res.status != LPResult::Optimal || res.x[0] <= 1e-12) return std::nullopt;
  std::vector<double> w(m);
  for (int e = 0; e < m; ++e) w[e] = res.x[0] + res.x[1 + e];
  EdgeWeighting r = EdgeWeighting::from_double(std::move(w));
  r.method = "lp";
  if (!is_perfect_fractional_matching(H, r, 1e-7)) return std::nullopt;
  return r;
}

std::optional<EdgeWeighting> assigned_pfm(const Hypergraph& H, std::uint64_t seed, double balance_bound, bool exact,
                                          std::size_t cap_per_pair) {
  if (H.m() == 0) return std::nullopt;
  bool regular = true;
  for (int v : H.vertices()) regular = regular && H.degree(v) * H.n() == static_cast<long>(H.k() * H.m());
  if (regular) return uniform_weighting(H, exact);
  try {
    EdgeWeighting w = redistribute_pfm(H, build_walk_registry(H, cap_per_pair, seed), exact);
    if (balancedness(w) <= balance_bound) return w;
  } catch (const NotConnectedError&) {
  } catch (const BalanceError&) {
  }
  auto lp = pfm_lp(H);
  if (lp && balancedness(*lp) <= balance_bound) return lp;
  return std::nullopt;
}

SparsifyResult sparsify_intersecting(const Hypergraph& H, const Hypergraph& F, double eps, const EdgeWeighting& pfm,
                                     std::uint64_t seed, const SparsifyGates& gates) {
  if (pfm.size() != H.m()) throw DomainError("sparsify: weighting does not match host");
  if (eps < 0 || eps > 1) throw DomainError("sparsify: eps outside [0,1]");
  double wmax = 0;
  for (double x : pfm.w) wmax = std::max(wmax, x);
  std::vector<double> p(H.m());
  for (std::size_t e = 0; e < H.m(); ++e) {
    double base = wmax > 0 ? eps * pfm.w[e] / wmax : 0.0;
    p[e] = F.has_edge(H.edge(static_cast<int>(e))) ? (1 - eps) + base : base;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  SparsifyResult out;
  int tries = std::max(1, gates.retries);
  for (int a = 1; a <= tries; ++a) {
    std::vector<Tuple> kept;
    for (std::size_t e = 0; e < H.m(); ++e)
      if (p[e] >= 1.0 || U(rng) < p[e]) kept.push_back(H.edge(static_cast<int>(e)));
    out.graph = Hypergraph(H.k(), H.vertices(), std::move(kept));
    out.report = regularity_report(out.graph);
    out.attempts = a;
    bool ok = true;
    if (gates.eta_min) ok = ok && out.report.eta_star && out.report.eta_star->get_d() >= *gates.eta_min;
    if (gates.rho_max) ok = ok && out.report.rho_star.get_d() <= *gates.rho_max;
    if (ok) {
      out.ok = true;
      return out;
    }
  }
  return out;
}

void write_weighting(std::ostream& out, const EdgeWeighting& w) {
  for (std::size_t e = 0; e < w.size(); ++e) {
    if (w.exact) {
      out << e << ' ' << to_string(w.q[e]) << '\n';
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", w.w[e]);
      out << e << ' ' << buf << '\n';
    }
  }
}

EdgeWeighting read_weighting(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::vector<std::pair<long, std::string>> rows;
  bool exact = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long id;
    std::string val;
    if (!(ls >> id >> val) || id < 0) throw ParseError(lineno, "expected `edge_id value`");
    if (val.find('/') == std::string::npos) exact = false;
    rows.emplace_back(id, val);
  }
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].first != static_cast<long>(i)) throw ParseError(0, "edge ids must be 0..m-1 without gaps");
  if (exact) {
    std::vector<Rational> q;
    for (auto& [id, v] : rows) q.emplace_back(v);
    return EdgeWeighting::from_exact(std::move(q));
  }
  std::vector<double> w;
  for (auto& [id, v] : rows) {
    auto slash = v.find('/');
    w.push_back(slash == std::string::npos ? std::stod(v) : Rational(v).get_d());
  }
  return EdgeWeighting::from_double(std::move(w));
}

}  // namespace hcpack
