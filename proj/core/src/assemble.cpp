#include "hcpack/assemble.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hcpack/fracmatch.hpp"
#include "hcpack/oracles.hpp"

namespace hcpack {

// ---------------------------------------------------------------- profile

namespace {

double to_double(const std::string& k, const std::string& v) {
  std::size_t pos = 0;
  double d = 0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty()) throw DomainError("profile key " + k + ": not a number: " + v);
  return d;
}

int to_int(const std::string& k, const std::string& v) {
  double d = to_double(k, v);
  if (d != std::floor(d)) throw DomainError("profile key " + k + ": not an integer: " + v);
  return static_cast<int>(d);
}

bool to_bool(const std::string& k, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw DomainError("profile key " + k + ": not a boolean: " + v);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Field {
  const char* key;
  std::function<void(Profile&, const std::string&)> set;
  std::function<std::string(const Profile&)> get;
};

std::string num(double d) {
  std::ostringstream o;
  o.precision(12);
  o << d;
  return o.str();
}

#define HC_D(name) \
  Field{#name, [](Profile& p, const std::string& v) { p.name = to_double(#name, v); }, [](const Profile& p) { return num(p.name); }}
#define HC_I(name) \
  Field{#name, [](Profile& p, const std::string& v) { p.name = to_int(#name, v); }, [](const Profile& p) { return std::to_string(p.name); }}
#define HC_B(name) \
  Field{#name, [](Profile& p, const std::string& v) { p.name = to_bool(#name, v); }, [](const Profile& p) { return std::string(p.name ? "true" : "false"); }}
#define HC_O(name)                                                                                   \
  Field{#name,                                                                                       \
        [](Profile& p, const std::string& v) {                                                       \
          if (v == "none") p.name.reset();                                                           \
          else p.name = to_double(#name, v);                                                         \
        },                                                                                           \
        [](const Profile& p) { return p.name ? num(*p.name) : std::string("none"); }}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      HC_I(L), HC_D(mu), HC_D(cap_con), HC_D(cap_end), HC_I(cover_retries),
      HC_D(delta), HC_D(eta), HC_D(rho), HC_D(beta), HC_I(ell0), HC_I(ell1), HC_I(Lp), HC_I(cover_choices),
      HC_I(good_retries), HC_I(reservoir_retries), HC_I(reservoir_audit), HC_B(reservoir_rho_gate), HC_I(girth_mult),
      HC_I(layer_retries),
      HC_I(abs_L), HC_I(a), HC_I(ell), HC_D(theta), HC_I(t_star), HC_I(s_star), HC_D(cover_factor), HC_I(abs_retries),
      HC_D(nu_plus), HC_D(balance_bound),
      HC_D(cap_fraction), HC_I(min_codegree),
      HC_D(eps), HC_O(sparsify_eta_min), HC_O(sparsify_rho_max), HC_I(sparsify_retries), HC_I(decompose_retries),
      HC_D(time_budget),
  };
  return f;
}

#undef HC_D
#undef HC_I
#undef HC_B
#undef HC_O

}  // namespace

void Profile::set(const std::string& key, const std::string& value) {
  for (const auto& f : fields())
    if (key == f.key) {
      f.set(*this, trim(value));
      return;
    }
  throw DomainError("unknown profile key: " + key);
}

AbsorbParams Profile::absorb_params() const {
  AbsorbParams p;
  p.L = abs_L;
  p.a = a;
  p.ell = ell;
  p.theta = theta;
  p.t_star = t_star;
  p.s_star = s_star;
  p.cover_factor = cover_factor;
  p.retries = abs_retries;
  p.balance_bound = balance_bound;
  return p;
}

CoverGates Profile::cover_gates() const { return CoverGates{mu, cap_con, cap_end, cover_retries}; }

Profile read_profile(std::istream& in) {
  Profile p;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(no, "expected key=value");
    try {
      p.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const DomainError& e) {
      throw ParseError(no, e.what());
    }
  }
  return p;
}

Profile read_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open profile " + path);
  return read_profile(in);
}

void write_profile(std::ostream& out, const Profile& p) {
  for (const auto& f : fields()) out << f.key << '=' << f.get(p) << '\n';
}

nlohmann::json profile_to_json(const Profile& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& f : fields()) j[f.key] = f.get(p);
  return j;
}

// ---------------------------------------------------------------- reservoir and connections

std::vector<Seq> connectors(const Hypergraph& F, const Seq& s, const Seq& t, int ell, const std::vector<int>& pool,
                            std::size_t cap) {
  const int k = F.k();
  std::vector<Seq> out;
  std::vector<char> ok(F.id_bound(), 0);
  for (int v : pool)
    if (F.has_vertex(v)) ok[v] = 1;
  for (int v : s) ok[v] = 0;
  for (int v : t) ok[v] = 0;
  Seq seq = s;
  auto last_window_ok = [&]() {
    Tuple e(seq.end() - k, seq.end());
    return F.has_edge(e);
  };
  std::function<bool(int)> rec = [&](int left) -> bool {
    if (left == 0) {
      std::size_t mark = seq.size();
      bool good = true;
      for (int v : t) {
        seq.push_back(v);
        if (!last_window_ok()) {
          good = false;
          break;
        }
      }
      if (good) out.emplace_back(seq.begin() + static_cast<long>(s.size()), seq.begin() + static_cast<long>(mark));
      seq.resize(mark);
      return out.size() < cap;
    }
    Tuple x(seq.end() - (k - 1), seq.end());
    std::sort(x.begin(), x.end());
    for (int v : F.neighborhood(x)) {
      if (!ok[v]) continue;
      ok[v] = 0;
      seq.push_back(v);
      bool more = rec(left - 1);
      seq.pop_back();
      ok[v] = 1;
      if (!more) return false;
    }
    return true;
  };
  if (static_cast<int>(s.size()) != k || static_cast<int>(t.size()) != k) throw DomainError("endpoints must be k-tuples");
  rec(ell);
  return out;
}

Reservoir build_reservoir(const Hypergraph& F, double beta, int ell0, int ell1, std::uint64_t seed,
                          const ReservoirOptions& opt) {
  if (ell0 > ell1) throw DomainError("ell0 > ell1");
  if (beta <= 0 || beta > 1) throw DomainError("beta outside (0,1]");
  const int n = F.n();
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution pick(std::min(1.0, 0.75 * beta));
  Reservoir res;
  res.beta = beta;
  res.ell0 = ell0;
  res.ell1 = ell1;
  for (int a = 1; a <= std::max(1, opt.retries); ++a) {
    res.attempts = a;
    res.R.clear();
    for (int v : F.vertices())
      if (pick(rng)) res.R.push_back(v);
    const double r = static_cast<double>(res.R.size());
    res.size_ok = r >= beta * n / 2 - 1e-9 && r <= beta * n + 1e-9;
    if (!res.size_ok) continue;
    Hypergraph rest = F.remove_vertices(res.R);
    res.regular_ok = !opt.rho_gate || rho_of(rest) <= 2 * opt.rho + 1e-9;
    if (!res.regular_ok) continue;
    res.audit_ok = true;
    res.audited = 0;
    res.audit_failure.clear();
    if (opt.audit_pairs > 0 && rest.m() >= 2) {
      std::uniform_int_distribution<std::size_t> E(0, rest.m() - 1);
      int tries = 0;
      while (res.audited < opt.audit_pairs && tries < 50 * opt.audit_pairs) {
        ++tries;
        Seq s = rest.edge(static_cast<int>(E(rng)));
        Seq t = rest.edge(static_cast<int>(E(rng)));
        bool disjoint = true;
        for (int v : s) disjoint = disjoint && std::find(t.begin(), t.end(), v) == t.end();
        if (!disjoint) continue;
        std::shuffle(s.begin(), s.end(), rng);
        std::shuffle(t.begin(), t.end(), rng);
        ++res.audited;
        for (int ell = ell0; ell <= ell1 && res.audit_ok; ++ell) {
          double need = beta * std::pow(r, ell);
          auto c = connectors(F, s, t, ell, res.R, static_cast<std::size_t>(std::ceil(need)) + 1);
          if (static_cast<double>(c.size()) < need - 1e-9) {
            res.audit_ok = false;
            res.audit_failure = "pair " + set_key(s) + " -> " + set_key(t) + " has " + std::to_string(c.size()) +
                                " paths with " + std::to_string(ell) + " inner vertices, needs " + num(need);
          }
        }
        if (!res.audit_ok) break;
      }
    }
    if (res.audit_ok) return res;
  }
  return res;
}

std::vector<Seq> connect(const Hypergraph& F, const std::vector<ConnectRequest>& Q, const std::vector<int>& R,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<int> blocked;
  for (const auto& q : Q) {
    blocked.insert(q.from.begin(), q.from.end());
    blocked.insert(q.to.begin(), q.to.end());
  }
  std::vector<Seq> out;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    std::vector<int> pool;
    for (int v : R)
      if (!blocked.count(v)) pool.push_back(v);
    auto cand = connectors(F, Q[i].from, Q[i].to, Q[i].lambda, pool);
    if (cand.empty())
      throw StageFailure("connect", "no connector left for request " + std::to_string(i) + " (" + set_key(Q[i].from) +
                                        " -> " + set_key(Q[i].to) + ", " + std::to_string(Q[i].lambda) + " inner)");
    const Seq& w = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
    blocked.insert(w.begin(), w.end());
    out.push_back(w);
  }
  return out;
}

std::optional<std::vector<int>> split_budget(int budget, int z, int ell0, int ell1) {
  if (z <= 0) return budget == 0 ? std::optional<std::vector<int>>(std::vector<int>{}) : std::nullopt;
  if (budget < z * ell0 || budget > z * ell1) return std::nullopt;
  std::vector<int> out(z, budget / z);
  for (int i = 0; i < budget % z; ++i) ++out[i];
  return out;
}

// ---------------------------------------------------------------- layer

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  std::map<std::string, double>& sink;
  std::string name;
  Clock::time_point t0 = Clock::now();
  ~Timer() { sink[name] += std::chrono::duration<double>(Clock::now() - t0).count(); }
};

std::vector<int> minus(const std::vector<int>& a, const std::set<int>& b) {
  std::vector<int> out;
  for (int v : a)
    if (!b.count(v)) out.push_back(v);
  return out;
}

int pick_from(const std::vector<int>& c, std::mt19937_64& rng) {
  return c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)];
}

void check_layer_inputs(const Hypergraph& H, const Hypergraph& F, const std::vector<Seq>& P,
                        const std::vector<int>& target, const Profile& prof) {
  const int k = H.k();
  if (F.k() != k) throw DomainError("uniformity mismatch");
  int total = std::accumulate(target.begin(), target.end(), 0);
  if (total != H.n()) throw DomainError("target lengths sum to " + std::to_string(total) + ", not n");
  int girth = target.empty() ? 0 : *std::min_element(target.begin(), target.end());
  if (girth < prof.girth_mult * prof.L)
    throw DomainError("target girth " + std::to_string(girth) + " below " + std::to_string(prof.girth_mult * prof.L));
  if (girth < k + 1) throw DomainError("target cycle shorter than k+1");
  if (prof.ell0 > prof.ell1 || prof.ell0 < 0) throw DomainError("need 0 <= ell0 <= ell1");
  std::set<int> seen;
  int cov = 0;
  for (const auto& p : P) {
    if (!is_tight_path(H, p)) throw DomainError("input path is not a tight path of H");
    if (static_cast<int>(p.size()) < k) throw DomainError("input path shorter than k");
    for (const auto& e : path_edges(p, k))
      if (F.has_edge(e)) throw DomainError("input path uses an edge of F");
    for (int v : p)
      if (!seen.insert(v).second) throw DomainError("input paths are not vertex-disjoint");
    cov += static_cast<int>(p.size());
  }
  if (cov < (1 - prof.mu) * H.n() - 1e-9)
    throw DomainError("paths cover " + std::to_string(cov) + " vertices, below (1-mu)n");
}

struct Item {
  Seq seq;
  int kind;  // 0 extended input path, 1 cover path, 2 absorbing path
  int sidx;  // index into the absorbing structure
  int sigma;
};

}  // namespace

LayerResult layer_attempt(const Hypergraph& H, const Hypergraph& F, const std::vector<Seq>& P,
                          const std::vector<int>& target, const Profile& prof, std::uint64_t seed) {
  const int k = H.k();
  const int n = H.n();
  std::mt19937_64 rng(seed);
  LayerResult out;
  LayerReport& rep = out.report;
  rep.attempts = 1;

  // (1) good subset of the input paths
  std::vector<int> kept;
  std::vector<int> V1;
  {
    Timer tm{rep.seconds, "good-subset"};
    std::bernoulli_distribution keep(1 - prof.delta);
    bool good = false;
    for (int tries = 0; tries < std::max(1, prof.good_retries) && !good; ++tries) {
      kept.clear();
      std::set<int> covered;
      for (int i = 0; i < static_cast<int>(P.size()); ++i)
        if (keep(rng)) {
          kept.push_back(i);
          covered.insert(P[i].begin(), P[i].end());
        }
      V1 = minus(H.vertices(), covered);
      const double sz = static_cast<double>(V1.size());
      if (sz < prof.delta * n / 2 - 1e-9 || sz > 1.5 * prof.delta * n + 1e-9) continue;
      auto eta = eta_within(F, V1);
      if (!eta || *eta < prof.eta / 2 - 1e-12) continue;
      if (rho_of(F.induced(V1)) > 2 * prof.rho + 1e-9) continue;
      good = true;
    }
    if (!good) throw StageFailure("good-subset", "no good subset within the retry budget");
  }
  rep.kept_paths = static_cast<int>(kept.size());
  rep.v1 = static_cast<int>(V1.size());
  const Hypergraph F1 = F.induced(V1);

  // (3) reservoir inside F[V1]
  Reservoir res;
  {
    Timer tm{rep.seconds, "reservoir"};
    ReservoirOptions opt{prof.reservoir_retries, prof.reservoir_audit, prof.reservoir_rho_gate, prof.rho};
    opt.rho = 2 * prof.rho;
    res = build_reservoir(F1, prof.beta, prof.ell0, prof.ell1, rng(), opt);
    if (!res.ok())
      throw StageFailure("reservoir", !res.size_ok ? "size window" : !res.regular_ok ? "regularity" : res.audit_failure);
  }
  rep.reservoir = static_cast<int>(res.R.size());
  std::set<int> inR(res.R.begin(), res.R.end());

  // (2) extend every kept path by an F-edge at each end
  std::vector<Seq> extended;
  std::set<int> taken;
  {
    Timer tm{rep.seconds, "extend"};
    for (int idx : kept) {
      const Seq& Pi = P[idx];
      std::set<int> avoid = inR;
      avoid.insert(taken.begin(), taken.end());
      std::vector<int> U = minus(V1, avoid);
      Seq u(k), v(k);
      std::set<int> used_u;
      for (int j = k; j >= 1; --j) {
        Tuple x;
        for (int q = j + 1; q <= k; ++q) x.push_back(u[q - 1]);
        for (int q = 1; q <= j - 1; ++q) x.push_back(Pi[q - 1]);
        std::sort(x.begin(), x.end());
        std::vector<int> cand;
        for (int w : F.neighborhood(x))
          if (std::binary_search(U.begin(), U.end(), w) && !used_u.count(w)) cand.push_back(w);
        if (cand.empty()) throw StageFailure("extend", "no F-neighbour to prepend to path " + std::to_string(idx));
        u[j - 1] = pick_from(cand, rng);
        used_u.insert(u[j - 1]);
      }
      const int l = static_cast<int>(Pi.size());
      std::set<int> used_v;
      for (int j = 1; j <= k; ++j) {
        Tuple x;
        for (int q = j + 1; q <= k; ++q) x.push_back(Pi[l - k + q - 1]);
        for (int q = 1; q <= j - 1; ++q) x.push_back(v[q - 1]);
        std::sort(x.begin(), x.end());
        std::vector<int> cand;
        for (int w : F.neighborhood(x))
          if (std::binary_search(U.begin(), U.end(), w) && !used_u.count(w) && !used_v.count(w)) cand.push_back(w);
        if (cand.empty()) throw StageFailure("extend", "no F-neighbour to append to path " + std::to_string(idx));
        v[j - 1] = pick_from(cand, rng);
        used_v.insert(v[j - 1]);
      }
      Seq ext = u;
      ext.insert(ext.end(), Pi.begin(), Pi.end());
      ext.insert(ext.end(), v.begin(), v.end());
      extended.push_back(std::move(ext));
      taken.insert(u.begin(), u.end());
      taken.insert(v.begin(), v.end());
    }
  }
  std::set<int> avoid2 = inR;
  avoid2.insert(taken.begin(), taken.end());
  const std::vector<int> V2 = minus(V1, avoid2);
  rep.v2 = static_cast<int>(V2.size());

  // (4) absorbing structure in F[V2] with host F[V1]
  AbsorbingStructure S;
  {
    Timer tm{rep.seconds, "absorbing"};
    AbsorbParams ap = prof.absorb_params();
    ap.rho = 5 * prof.rho;
    S = build_absorbing_structure(F1, F.induced(V2), ap, rng());
    if (!S.ok)
      throw StageFailure("absorbing", S.fatal ? S.fatal_reason : "items failing: " + S.items.failing());
  }
  rep.capacity = S.capacity();
  std::set<int> inS;
  for (const auto& p : S.paths) inS.insert(p.begin(), p.end());
  const std::vector<int> V3 = minus(V2, inS);
  rep.v3 = static_cast<int>(V3.size());

  // (5) cover F[V3] by Lp-cycles, keep one collection, open every cycle
  std::vector<Seq> What;
  {
    Timer tm{rep.seconds, "cover"};
    Hypergraph F3 = F.induced(V3);
    if (static_cast<int>(V3.size()) >= prof.Lp && F3.m() > 0 && prof.cover_choices > 0) {
      auto frac = fractional_cycle_decomposition(F3, prof.Lp, true, 20000, rng());
      if (!frac.cycles.empty()) {
        auto cols = extract_cycle_collections(F3, frac, prof.cover_choices, rng());
        int pick = std::uniform_int_distribution<int>(0, prof.cover_choices - 1)(rng);
        What = cycles_to_paths({cols[pick]}, k, rng())[0];
      }
    }
  }

  // (6) group paths into cycles
  std::vector<Item> items;
  for (const auto& e : extended) items.push_back({e, 0, -1, 0});
  for (const auto& w : What) items.push_back({w, 1, -1, 0});
  for (int i = 0; i < static_cast<int>(S.paths.size()); ++i) items.push_back({S.paths[i], 2, i, S.sigma[i]});
  std::vector<char> used(items.size(), 0);
  std::vector<std::vector<int>> groups;
  {
    Timer tm{rep.seconds, "group"};
    for (int Li : target) {
      std::vector<int> Z;
      int load = 0;
      auto fill = [&](bool absorbing) {
        std::vector<int> idx;
        for (int i = 0; i < static_cast<int>(items.size()); ++i)
          if (!used[i] && (items[i].kind == 2) == absorbing) idx.push_back(i);
        std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
          return items[x].seq.size() + items[x].sigma < items[y].seq.size() + items[y].sigma;
        });
        for (int i : idx) {
          int w = prof.ell0 + static_cast<int>(items[i].seq.size()) + items[i].sigma;
          if (load + w <= Li) {
            load += w;
            Z.push_back(i);
            used[i] = 1;
          }
        }
      };
      fill(true);
      fill(false);
      if (Z.empty()) throw StageFailure("group", "cycle of length " + std::to_string(Li) + " receives no path");
      std::sort(Z.begin(), Z.end());
      groups.push_back(Z);
    }
    for (std::size_t i = 0; i < items.size(); ++i)
      if (!used[i] && items[i].kind != 1)
        throw StageFailure("group", std::string(items[i].kind == 0 ? "input" : "absorbing") + " path left ungrouped");
  }

  // (7) budgets and (8) connections through R
  std::vector<ConnectRequest> Q;
  {
    Timer tm{rep.seconds, "connect"};
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const auto& Z = groups[i];
      int vz = 0, sig = 0;
      for (int g : Z) {
        vz += static_cast<int>(items[g].seq.size());
        sig += items[g].sigma;
      }
      auto lam = split_budget(target[i] - vz - sig, static_cast<int>(Z.size()), prof.ell0, prof.ell1);
      if (!lam) throw StageFailure("budget", "cycle " + std::to_string(i) + " budget outside [ell0,ell1] range");
      for (std::size_t g = 0; g < Z.size(); ++g) {
        const Seq& A = items[Z[g]].seq;
        const Seq& B = items[Z[(g + 1) % Z.size()]].seq;
        Q.push_back({Seq(A.end() - k, A.end()), Seq(B.begin(), B.begin() + k), (*lam)[g]});
      }
    }
  }
  std::vector<Seq> W;
  {
    Timer tm{rep.seconds, "connect"};
    W = connect(F1, Q, res.R, rng());
  }

  // (9) absorb the leftover
  std::set<int> covered;
  for (const auto& Z : groups)
    for (int g : Z) covered.insert(items[g].seq.begin(), items[g].seq.end());
  for (const auto& w : W) covered.insert(w.begin(), w.end());
  std::vector<int> X = minus(V1, covered);
  rep.leftover = static_cast<int>(X.size());
  rep.budget_identity = rep.leftover == S.capacity();
  if (!rep.budget_identity)
    throw StageFailure("budget-identity", "|X| = " + std::to_string(X.size()) + " but capacity is " +
                                              std::to_string(S.capacity()));
  Absorption ab;
  {
    Timer tm{rep.seconds, "absorb"};
    ab = absorb(S, X, rng());
  }

  // (10) splice
  {
    Timer tm{rep.seconds, "splice"};
    std::size_t qi = 0;
    for (const auto& Z : groups) {
      Seq cyc;
      for (int g : Z) {
        const Item& it = items[g];
        const Seq& body = it.kind == 2 ? ab.paths[it.sidx] : it.seq;
        if (it.kind == 2 && (!std::equal(body.begin(), body.begin() + k, it.seq.begin()) ||
                             !std::equal(body.end() - k, body.end(), it.seq.end() - k)))
          throw StageFailure("splice", "absorbed path changed its end-edges");
        cyc.insert(cyc.end(), body.begin(), body.end());
        cyc.insert(cyc.end(), W[qi].begin(), W[qi].end());
        ++qi;
      }
      out.factor.cycles.push_back(std::move(cyc));
    }
    FactorCheck fc = verify_factor_copy(H, out.factor, target);
    if (!fc.ok) throw StageFailure("verify", fc.reasons.empty() ? "invalid" : fc.reasons.front());
    std::set<Tuple> fe;
    for (const auto& c : out.factor.cycles)
      for (const auto& e : cycle_edges(c, k))
        if (F.has_edge(e)) fe.insert(e);
    out.f_edges.assign(fe.begin(), fe.end());
  }
  out.ok = true;
  return out;
}

LayerResult layer_transform(const Hypergraph& H, const Hypergraph& F, const std::vector<Seq>& P,
                            const std::vector<int>& target, const Profile& prof, std::uint64_t seed) {
  check_layer_inputs(H, F, P, target, prof);
  std::mt19937_64 master(seed);
  LayerReport agg;
  for (int a = 1; a <= std::max(1, prof.layer_retries); ++a) {
    try {
      LayerResult r = layer_attempt(H, F, P, target, prof, master());
      r.report.attempts = a;
      r.report.failures = agg.failures;
      for (const auto& [k, v] : agg.seconds) r.report.seconds[k] += v;
      return r;
    } catch (const StageFailure& e) {
      ++agg.failures[e.stage];
      agg.last_failure = e.what();
    }
  }
  LayerResult r;
  r.report = agg;
  r.report.attempts = std::max(1, prof.layer_retries);
  return r;
}

// ---------------------------------------------------------------- packing

void UsageLedger::add_layer(const std::vector<Tuple>& f_edges) {
  std::map<Tuple, int> y;
  for (const auto& e : f_edges) {
    Tuple s = e;
    std::sort(s.begin(), s.end());
    for (const auto& x : subsets_of_size(s, k - 1)) {
      ++consumed[x];
      ++y[x];
    }
  }
  layers.push_back(std::move(y));
}

std::map<Tuple, int> UsageLedger::recompute(int k, const std::vector<std::vector<Tuple>>& f_edges_per_layer) {
  UsageLedger l;
  l.k = k;
  for (const auto& f : f_edges_per_layer) l.add_layer(f);
  return l.consumed;
}

int UsageLedger::max_consumed() const {
  int m = 0;
  for (const auto& [x, c] : consumed) m = std::max(m, c);
  return m;
}

void check_targets(const std::vector<std::vector<int>>& targets, int n, int k, const Profile& prof) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& t = targets[i];
    if (t.empty()) throw DomainError("target " + std::to_string(i) + " is empty");
    int total = std::accumulate(t.begin(), t.end(), 0);
    if (total != n)
      throw DomainError("target " + std::to_string(i) + " sums to " + std::to_string(total) + ", not " +
                        std::to_string(n));
    int girth = *std::min_element(t.begin(), t.end());
    if (girth < k + 1 || girth < prof.girth_mult * prof.L)
      throw DomainError("target " + std::to_string(i) + " girth " + std::to_string(girth) + " below gate " +
                        std::to_string(std::max(k + 1, prof.girth_mult * prof.L)));
  }
}

std::vector<std::vector<int>> parse_targets(const std::string& spec, int n) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(spec);
  std::string factor;
  while (std::getline(ss, factor, ';')) {
    factor = trim(factor);
    if (factor.empty()) continue;
    int rep = 1;
    auto star = factor.find('*');
    if (star != std::string::npos) {
      rep = to_int("targets", trim(factor.substr(0, star)));
      factor = factor.substr(star + 1);
    }
    std::vector<int> lengths;
    std::stringstream fs(factor);
    std::string tok;
    while (std::getline(fs, tok, ',')) {
      tok = trim(tok);
      if (tok == "H" || tok == "hamilton") lengths.push_back(n);
      else lengths.push_back(to_int("targets", tok));
    }
    if (lengths.empty() || rep < 1) throw DomainError("bad target factor: " + factor);
    for (int r = 0; r < rep; ++r) out.push_back(lengths);
  }
  if (out.empty()) throw DomainError("no targets given");
  return out;
}

PackResult pack_factors(const Hypergraph& H, const Hypergraph& F, const std::vector<std::vector<Seq>>& collections,
                        const std::vector<std::vector<int>>& targets, const Profile& prof, std::uint64_t seed) {
  const int k = H.k();
  const int n = H.n();
  check_targets(targets, n, k, prof);
  if (targets.size() > collections.size()) throw DomainError("more targets than path collections");
  PackResult out;
  out.ledger.k = k;
  out.ledger.cap = static_cast<int>(std::ceil(prof.cap_fraction * n - 1e-12));
  std::mt19937_64 master(seed);
  Hypergraph Fcur = F;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (const auto& [x, c] : out.ledger.consumed)
      if (c > out.ledger.cap) {
        out.status = PackResult::BudgetExceeded;
        out.culprit = x;
        out.message = "set " + set_key(x) + " consumed " + std::to_string(c) + " > cap " + std::to_string(out.ledger.cap);
        return out;
      }
    if (prof.min_codegree > 0)
      for (const auto& x : all_subsets(H.vertices(), k - 1))
        if (Fcur.codegree(x) < prof.min_codegree) {
          out.status = PackResult::BudgetExceeded;
          out.culprit = x;
          out.message = "set " + set_key(x) + " has F-codegree " + std::to_string(Fcur.codegree(x)) + " < " +
                        std::to_string(prof.min_codegree);
          return out;
        }
    LayerResult lr = layer_transform(H, Fcur, collections[i], targets[i], prof, master());
    out.layers.push_back(lr.report);
    if (!lr.ok) {
      out.status = PackResult::Partial;
      out.message = "layer " + std::to_string(i) + " failed: " + lr.report.last_failure;
      return out;
    }
    out.factors.push_back(lr.factor);
    out.f_edges.push_back(lr.f_edges);
    out.ledger.add_layer(lr.f_edges);
    Fcur = Fcur.remove_edge_sets(lr.f_edges);
    out.ledger_consistent = out.ledger_consistent && UsageLedger::recompute(k, out.f_edges) == out.ledger.consumed;
  }
  return out;
}

// ---------------------------------------------------------------- full pipeline

namespace {

nlohmann::json layer_json(const LayerReport& r, bool normalize) {
  nlohmann::json t = nlohmann::json::object();
  for (const auto& [k, v] : r.seconds) t[k] = normalize ? 0.0 : v;
  return {{"attempts", r.attempts},     {"failures", r.failures}, {"kept_paths", r.kept_paths},
          {"v1", r.v1},                 {"reservoir", r.reservoir}, {"v2", r.v2},
          {"v3", r.v3},                 {"capacity", r.capacity}, {"leftover", r.leftover},
          {"budget_identity", r.budget_identity}, {"seconds", t}, {"last_failure", r.last_failure}};
}

nlohmann::json ledger_json(const UsageLedger& l) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& y : l.layers) {
    int total = 0, mx = 0;
    for (const auto& [x, c] : y) {
      total += c;
      mx = std::max(mx, c);
    }
    per.push_back({{"sets_touched", y.size()}, {"total", total}, {"max", mx}});
  }
  nlohmann::json top = nlohmann::json::array();
  for (const auto& [x, c] : l.consumed) top.push_back({{"set", x}, {"consumed", c}});
  return {{"cap", l.cap}, {"max_consumed", l.max_consumed()}, {"layers", per}, {"consumed", top}};
}

}  // namespace

DecomposeResult decompose(const Hypergraph& H, const std::vector<std::vector<int>>& targets, const Profile& prof,
                          std::uint64_t seed, bool normalize_timings) {
  const int k = H.k();
  check_targets(targets, H.n(), k, prof);
  DecomposeResult out;
  std::mt19937_64 master(seed);
  const auto t0 = Clock::now();
  nlohmann::json attempts = nlohmann::json::array();
  nlohmann::json cover_info;
  for (int a = 1; a <= std::max(1, prof.decompose_retries); ++a) {
    if (a > 1 && prof.time_budget > 0 &&
        std::chrono::duration<double>(Clock::now() - t0).count() > prof.time_budget)
      break;
    out.attempts = a;
    std::uint64_t s_pfm = master(), s_sp = master(), s_cov = master(), s_pack = master();
    out.failed_stage.clear();
    nlohmann::json att = {{"attempt", a}};
    try {
      auto pfm = assigned_pfm(H, s_pfm, prof.balance_bound);
      if (!pfm) throw StageFailure("pfm", "no balanced perfect fractional matching");
      Hypergraph empty(k, H.vertices(), {});
      SparsifyGates gates{prof.sparsify_eta_min, prof.sparsify_rho_max, prof.sparsify_retries};
      SparsifyResult sp = sparsify_intersecting(H, empty, prof.eps, *pfm, s_sp, gates);
      if (!sp.ok) throw StageFailure("sparsify", "gates unmet");
      const Hypergraph& F = sp.graph;
      Hypergraph rest = H.remove_edge_sets(F.edges());
      att["f_edges"] = F.m();
      att["cover_edges"] = rest.m();
      auto frac = fractional_cycle_decomposition(rest, prof.L, true, 20000, s_cov);
      CoverBundle bundle = simultaneous_path_cover(rest, frac, static_cast<int>(targets.size()), prof.cover_gates(), s_cov);
      cover_info = bundle_to_json(bundle);
      cover_info["fractional_exact"] = frac.exact;
      cover_info["uncovered_edges"] = frac.uncovered_edges;
      cover_info["cycles_in_family"] = frac.cycles.size();
      if (!bundle.coverage_ok) throw StageFailure("cover", "a collection covers fewer than (1-mu)n vertices");
      out.pack = pack_factors(H, F, bundle.paths, targets, prof, s_pack);
      std::vector<std::vector<int>> done(targets.begin(), targets.begin() + static_cast<long>(out.pack.factors.size()));
      PackingReport vr = validate_packing(H, out.pack.factors, done);
      out.valid = vr.ok && out.pack.ledger_consistent;
      out.validation = vr.reasons;
      att["status"] = out.pack.status == PackResult::Full ? "full" : out.pack.status == PackResult::Partial ? "partial" : "budget";
      att["factors"] = out.pack.factors.size();
      attempts.push_back(att);
      if (out.pack.status == PackResult::Full && out.valid) break;
      out.failed_stage = out.pack.status == PackResult::BudgetExceeded ? "ledger" : "layer";
    } catch (const StageFailure& e) {
      out.failed_stage = e.stage;
      att["status"] = std::string("failed: ") + e.what();
      attempts.push_back(att);
      out.pack = PackResult{};
      out.pack.status = PackResult::Partial;
    }
  }
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : out.pack.layers) layers.push_back(layer_json(l, normalize_timings));
  out.manifest = {
      {"seed", seed},
      {"profile", profile_to_json(prof)},
      {"n", H.n()},
      {"k", k},
      {"m", H.m()},
      {"targets", targets},
      {"attempts", attempts},
      {"cover", cover_info},
      {"layers", layers},
      {"ledger", ledger_json(out.pack.ledger)},
      {"status", out.pack.status == PackResult::Full ? "full"
                 : out.pack.status == PackResult::Partial ? "partial"
                                                          : "budget-exceeded"},
      {"message", out.pack.message},
      {"failed_stage", out.failed_stage},
      {"valid", out.valid},
      {"validation", out.validation},
      {"achieved", out.pack.factors.size()},
      {"requested", targets.size()},
      {"seconds", normalize_timings ? 0.0 : std::chrono::duration<double>(Clock::now() - t0).count()},
  };
  out.manifest["factors"] = factors_to_json(out.pack.factors)["factors"];
  return out;
}

}  // namespace hcpack
