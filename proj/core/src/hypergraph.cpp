#include "hcpack/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace hcpack {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

struct Hypergraph::Index {
  explicit Index(int k) : once(new std::once_flag[k + 1]), maps(k + 1), built(k + 1, false) {}
  std::unique_ptr<std::once_flag[]> once;
  std::vector<std::unordered_map<std::uint64_t, std::vector<int>>> maps;
  std::vector<char> built;
};

namespace {

bool next_combination(std::vector<int>& idx, int n) {
  int j = static_cast<int>(idx.size());
  for (int i = j - 1; i >= 0; --i) {
    if (idx[i] < n - j + i) {
      ++idx[i];
      for (int t = i + 1; t < j; ++t) idx[t] = idx[t - 1] + 1;
      return true;
    }
  }
  return false;
}

std::uint64_t binom(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

}  // namespace

std::vector<Tuple> subsets_of_size(const Tuple& s, int j) {
  std::vector<Tuple> out;
  int n = static_cast<int>(s.size());
  if (j < 0 || j > n) return out;
  if (j == 0) return {Tuple{}};
  std::vector<int> idx(j);
  std::iota(idx.begin(), idx.end(), 0);
  do {
    Tuple t(j);
    for (int i = 0; i < j; ++i) t[i] = s[idx[i]];
    out.push_back(std::move(t));
  } while (next_combination(idx, n));
  return out;
}

std::vector<Tuple> all_subsets(const std::vector<int>& vertices, int j) {
  Tuple s = vertices;
  std::sort(s.begin(), s.end());
  return subsets_of_size(s, j);
}

Hypergraph::Hypergraph(int k, int n, std::vector<Tuple> edges) {
  if (n < 0) throw DomainError("negative vertex count");
  std::vector<int> vs(n);
  std::iota(vs.begin(), vs.end(), 0);
  *this = Hypergraph(k, std::move(vs), std::move(edges));
}

Hypergraph::Hypergraph(int k, std::vector<int> vertices, std::vector<Tuple> edges)
    : k_(k), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (k < 1 || k > 16) throw DomainError("uniformity must be in [1,16]");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw DomainError("duplicate vertex id");
  if (!vertices_.empty() && vertices_.front() < 0) throw DomainError("negative vertex id");
  id_bound_ = vertices_.empty() ? 0 : vertices_.back() + 1;
  bits_ = 64 / k;
  if (bits_ < 63 && id_bound_ > (1 << std::min(bits_, 30)))
    throw DomainError("vertex ids too large for uniformity " + std::to_string(k));
  build();
}

int Hypergraph::max_id_for(int k) const { return (1 << std::min(64 / k, 30)) - 1; }

std::uint64_t Hypergraph::key(const Tuple& sorted) const {
  std::uint64_t h = 0;
  for (int v : sorted) h = (h << bits_) | static_cast<std::uint64_t>(v);
  return h;
}

void Hypergraph::build() {
  member_.assign(id_bound_, 0);
  for (int v : vertices_) member_[v] = 1;
  vertex_edges_.assign(id_bound_, {});
  edge_index_.clear();
  edge_index_.reserve(edges_.size() * 2);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Tuple& e = edges_[i];
    if (static_cast<int>(e.size()) != k_)
      throw DomainError("edge " + std::to_string(i) + " has " + std::to_string(e.size()) + " vertices");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw DomainError("edge " + std::to_string(i) + " repeats a vertex");
    for (int v : e)
      if (!has_vertex(v)) throw DomainError("edge " + std::to_string(i) + " uses unknown vertex " + std::to_string(v));
    auto [it, fresh] = edge_index_.emplace(key(e), static_cast<int>(i));
    if (!fresh) throw DomainError("duplicate edge at index " + std::to_string(i));
    for (int v : e) vertex_edges_[v].push_back(static_cast<int>(i));
  }
  index_ = std::make_shared<Index>(k_);
}

std::optional<int> Hypergraph::find_edge(Tuple e) const {
  if (static_cast<int>(e.size()) != k_) return std::nullopt;
  std::sort(e.begin(), e.end());
  for (int v : e)
    if (!has_vertex(v)) return std::nullopt;
  auto it = edge_index_.find(key(e));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

int Hypergraph::degree(int v) const {
  if (!has_vertex(v)) throw DomainError("invalid vertex " + std::to_string(v));
  return static_cast<int>(vertex_edges_[v].size());
}

const std::vector<int>& Hypergraph::vertex_edges(int v) const {
  if (!has_vertex(v)) throw DomainError("invalid vertex " + std::to_string(v));
  return vertex_edges_[v];
}

Tuple Hypergraph::checked_subset(const Tuple& x, int lo, int hi) const {
  int j = static_cast<int>(x.size());
  if (j < lo || j > hi) throw DomainError("subset size " + std::to_string(j) + " outside [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  Tuple s = x;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DomainError("subset repeats a vertex");
  for (int v : s)
    if (!has_vertex(v)) throw DomainError("invalid vertex " + std::to_string(v));
  return s;
}

const std::unordered_map<std::uint64_t, std::vector<int>>* Hypergraph::subset_index(int j) const {
  if (binom(k_, j) * edges_.size() > index_cap_) return nullptr;
  Index& ix = *index_;
  std::call_once(ix.once[j], [&] {
    auto& mp = ix.maps[j];
    mp.reserve(edges_.size() * binom(k_, j));
    for (std::size_t i = 0; i < edges_.size(); ++i)
      for (const Tuple& s : subsets_of_size(edges_[i], j)) mp[key(s)].push_back(static_cast<int>(i));
    ix.built[j] = 1;
  });
  return &ix.maps[j];
}

std::vector<int> Hypergraph::incident(const Tuple& x) const {
  Tuple s = checked_subset(x, 1, std::max(1, k_ - 1));
  int j = static_cast<int>(s.size());
  if (j == 1) return vertex_edges_[s[0]];
  if (const auto* mp = subset_index(j)) {
    auto it = mp->find(key(s));
    return it == mp->end() ? std::vector<int>{} : it->second;
  }
  std::vector<int> out;
  for (int id : vertex_edges_[s[0]])
    if (std::includes(edges_[id].begin(), edges_[id].end(), s.begin(), s.end())) out.push_back(id);
  return out;
}

int Hypergraph::codegree(const Tuple& x) const { return static_cast<int>(incident(x).size()); }

std::vector<int> Hypergraph::neighborhood(const Tuple& x) const {
  if (static_cast<int>(x.size()) != k_ - 1) throw DomainError("neighborhood needs a (k-1)-set");
  Tuple s = checked_subset(x, k_ - 1, k_ - 1);
  std::vector<int> out;
  if (k_ == 1) {
    for (const Tuple& e : edges_) out.push_back(e[0]);
    return out;
  }
  for (int id : incident(s)) {
    for (int v : edges_[id])
      if (!std::binary_search(s.begin(), s.end(), v)) {
        out.push_back(v);
        break;
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Hypergraph Hypergraph::induced(const std::vector<int>& U) const {
  std::vector<char> in(id_bound_, 0);
  for (int v : U) {
    if (!has_vertex(v)) throw DomainError("induced: invalid vertex " + std::to_string(v));
    in[v] = 1;
  }
  std::vector<int> vs;
  for (int v : vertices_)
    if (in[v]) vs.push_back(v);
  std::vector<Tuple> es;
  for (const Tuple& e : edges_)
    if (std::all_of(e.begin(), e.end(), [&](int v) { return in[v]; })) es.push_back(e);
  return Hypergraph(k_, std::move(vs), std::move(es));
}

Hypergraph Hypergraph::remove_edges(const std::vector<int>& edge_ids) const {
  std::vector<char> drop(edges_.size(), 0);
  for (int id : edge_ids) {
    if (id < 0 || id >= static_cast<int>(edges_.size())) throw DomainError("remove_edges: invalid edge id " + std::to_string(id));
    drop[id] = 1;
  }
  std::vector<Tuple> es;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (!drop[i]) es.push_back(edges_[i]);
  return Hypergraph(k_, vertices_, std::move(es));
}

Hypergraph Hypergraph::remove_edge_sets(const std::vector<Tuple>& sets) const {
  std::vector<int> ids;
  for (const Tuple& e : sets) {
    auto id = find_edge(e);
    if (!id) throw DomainError("remove_edges: not an edge");
    ids.push_back(*id);
  }
  return remove_edges(ids);
}

Hypergraph Hypergraph::remove_vertices(const std::vector<int>& X) const {
  std::vector<char> out(id_bound_, 0);
  for (int v : X)
    if (has_vertex(v)) out[v] = 1;
  std::vector<int> keep;
  for (int v : vertices_)
    if (!out[v]) keep.push_back(v);
  return induced(keep);
}

Hypergraph complete_hypergraph(int k, int n) {
  std::vector<int> vs(n);
  std::iota(vs.begin(), vs.end(), 0);
  return Hypergraph(k, n, subsets_of_size(vs, k));
}

Hypergraph read_hypergraph(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line)) throw ParseError(lineno + 1, "missing header `k n m`");
  long long k, n, m;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> k >> n >> m) || (hs >> extra)) throw ParseError(lineno, "header must be `k n m`");
    if (k < 1 || n < 0 || m < 0) throw ParseError(lineno, "header values out of range");
  }
  std::vector<Tuple> edges;
  std::unordered_map<std::string, int> seen;
  for (long long i = 0; i < m; ++i) {
    if (!next_line(line)) throw ParseError(lineno + 1, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    std::istringstream es(line);
    Tuple e;
    std::string tok;
    while (es >> tok) {
      std::size_t pos = 0;
      long long v = -1;
      try {
        v = std::stoll(tok, &pos);
      } catch (...) {
        pos = 0;
      }
      if (pos != tok.size()) throw ParseError(lineno, "not an integer: `" + tok + "`");
      if (v < 0 || v >= n) throw ParseError(lineno, "vertex " + tok + " out of range");
      e.push_back(static_cast<int>(v));
    }
    if (static_cast<long long>(e.size()) != k) throw ParseError(lineno, "edge must have " + std::to_string(k) + " vertices");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw ParseError(lineno, "edge repeats a vertex");
    std::string sig;
    for (int v : e) sig += std::to_string(v) + ",";
    auto [it, fresh] = seen.emplace(sig, lineno);
    if (!fresh) throw ParseError(lineno, "duplicate edge (first seen on line " + std::to_string(it->second) + ")");
    edges.push_back(std::move(e));
  }
  if (next_line(line)) throw ParseError(lineno, "trailing content after " + std::to_string(m) + " edges");
  return Hypergraph(static_cast<int>(k), static_cast<int>(n), std::move(edges));
}

Hypergraph read_hypergraph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_hypergraph(f);
}

void write_hypergraph(std::ostream& out, const Hypergraph& H) {
  std::vector<Tuple> es = H.edges();
  std::sort(es.begin(), es.end());
  out << H.k() << ' ' << H.id_bound() << ' ' << es.size() << '\n';
  for (const Tuple& e : es) {
    for (int i = 0; i < static_cast<int>(e.size()); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
}

namespace {

struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(int n) : w((n + 63) / 64, 0) {}
  void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
  int and_count(const Bits& o) const {
    int c = 0;
    for (std::size_t i = 0; i < w.size(); ++i) c += std::popcount(w[i] & o.w[i]);
    return c;
  }
  int and3_count(const Bits& o, const Bits& p) const {
    int c = 0;
    for (std::size_t i = 0; i < w.size(); ++i) c += std::popcount(w[i] & o.w[i] & p.w[i]);
    return c;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }
};

}  // namespace

RegularityReport degree_report(const Hypergraph& H) {
  RegularityReport r;
  r.k = H.k();
  r.n = H.n();
  r.m = H.m();
  long total = 0;
  r.min_degree = H.n() ? std::numeric_limits<int>::max() : 0;
  for (int v : H.vertices()) {
    int d = H.degree(v);
    r.degrees.push_back(d);
    total += d;
    r.min_degree = std::min(r.min_degree, d);
    r.max_degree = std::max(r.max_degree, d);
  }
  r.r_mean = H.n() ? Rational(total, H.n()) : Rational(0);
  r.r_mean.canonicalize();
  r.rho_star = 0;
  if (r.r_mean > 0) {
    for (int d : r.degrees) {
      Rational dev = Rational(d) / r.r_mean - 1;
      if (dev < 0) dev = -dev;
      if (dev > r.rho_star) r.rho_star = dev;
    }
  }
  return r;
}

RegularityReport regularity_report(const Hypergraph& H) {
  RegularityReport r = degree_report(H);
  const int k = H.k();
  if (k < 2) return r;
  auto sets = all_subsets(H.vertices(), k - 1);
  std::vector<Bits> nb, own;
  nb.reserve(sets.size());
  r.delta_codegree = sets.empty() ? 0 : std::numeric_limits<int>::max();
  for (const Tuple& x : sets) {
    Bits b(H.id_bound()), o(H.id_bound());
    auto N = H.neighborhood(x);
    for (int v : N) b.set(v);
    for (int v : x) o.set(v);
    r.delta_codegree = std::min(r.delta_codegree, static_cast<int>(N.size()));
    nb.push_back(std::move(b));
    own.push_back(std::move(o));
  }
  if (H.n() < 2 * (k - 1) || sets.size() < 2) return r;
  int best_all = std::numeric_limits<int>::max(), best_dis = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      int c = nb[i].and_count(nb[j]);
      best_all = std::min(best_all, c);
      if (!own[i].intersects(own[j])) best_dis = std::min(best_dis, c);
    }
  r.eta_star = Rational(best_all, H.n());
  r.eta_star->canonicalize();
  if (best_dis != std::numeric_limits<int>::max()) {
    r.eta_disjoint = Rational(best_dis, H.n());
    r.eta_disjoint->canonicalize();
  }
  return r;
}

double rho_of(const Hypergraph& H) { return degree_report(H).rho_star.get_d(); }

std::optional<double> eta_within(const Hypergraph& H, const std::vector<int>& W, bool disjoint_only) {
  const int k = H.k();
  if (W.empty() || k < 2 || H.n() < 2 * (k - 1)) return std::nullopt;
  Bits w(H.id_bound());
  for (int v : W)
    if (H.has_vertex(v)) w.set(v);
  auto sets = all_subsets(H.vertices(), k - 1);
  if (sets.size() < 2) return std::nullopt;
  std::vector<Bits> nb, own;
  for (const Tuple& x : sets) {
    Bits b(H.id_bound()), o(H.id_bound());
    for (int v : H.neighborhood(x)) b.set(v);
    for (int v : x) o.set(v);
    nb.push_back(std::move(b));
    own.push_back(std::move(o));
  }
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (disjoint_only && own[i].intersects(own[j])) continue;
      best = std::min(best, nb[i].and3_count(nb[j], w));
    }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return static_cast<double>(best) / static_cast<double>(W.size());
}

namespace {

int count_in(const std::vector<int>& xs, const std::vector<char>& in) {
  int c = 0;
  for (int v : xs) c += in[v] ? 1 : 0;
  return c;
}

}  // namespace

TransferFit fit_transfer(const Hypergraph& H, const std::vector<int>& U) {
  std::vector<char> in(H.id_bound(), 0);
  for (int v : U)
    if (H.has_vertex(v)) in[v] = 1;
  std::vector<double> ratios;
  for (const Tuple& x : all_subsets(H.vertices(), H.k() - 1)) {
    auto N = H.neighborhood(x);
    if (N.empty()) continue;
    ratios.push_back(static_cast<double>(count_in(N, in)) / static_cast<double>(N.size()));
  }
  TransferFit f;
  if (ratios.empty()) return f;
  f.theta = std::accumulate(ratios.begin(), ratios.end(), 0.0) / static_cast<double>(ratios.size());
  if (f.theta <= 0) return f;
  for (double r : ratios) f.eps = std::max(f.eps, std::abs(r / f.theta - 1.0));
  return f;
}

DegreeTransferReport degree_transfer_check(const Hypergraph& H, const std::vector<int>& U, double theta, double eps) {
  const int k = H.k();
  const double tol = 1e-12;
  DegreeTransferReport rep;
  std::vector<char> in(H.id_bound(), 0);
  for (int v : U) {
    if (!H.has_vertex(v)) throw DomainError("degree_transfer_check: invalid vertex " + std::to_string(v));
    in[v] = 1;
  }
  for (const Tuple& x : all_subsets(H.vertices(), k - 1)) {
    auto N = H.neighborhood(x);
    double d = static_cast<double>(N.size());
    double du = count_in(N, in);
    if (std::abs(du - theta * d) > eps * theta * d + tol) {
      rep.precondition_ok = false;
      rep.failing_sets.push_back(x);
    }
  }
  rep.window = 8.0 * k * k * k * eps;
  rep.lemma_applies = theta > 0 && theta < 1 ? eps <= (1 - theta) / (8.0 * k * k) : eps == 0;
  const double scale = std::pow(theta, k - 1);
  for (int v : H.vertices()) {
    int d = H.degree(v);
    int du = 0;
    for (int id : H.vertex_edges(v)) {
      bool ok = true;
      for (int u : H.edge(id))
        if (u != v && !in[u]) ok = false;
      du += ok ? 1 : 0;
    }
    double expect = scale * d;
    DegreeTransferReport::VertexRow row{v, du, d, expect > 0 ? du / expect : (du == 0 ? 1.0 : INFINITY), false};
    row.pass = std::abs(du - expect) <= rep.window * expect + 1e-9;
    rep.conclusion_ok = rep.conclusion_ok && row.pass;
    rep.vertices.push_back(row);
  }
  return rep;
}

}  // namespace hcpack
