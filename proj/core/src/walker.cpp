#include "hcpack/walker.hpp"

#include <algorithm>
#include <cmath>

namespace hcpack {

int WalkState::m(int k) const { return std::min(k - 1, (t() - 1) % L); }

namespace {

Tuple suffix_of(const std::vector<int>& history, int m) {
  Tuple s(history.end() - m, history.end());
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<int> edges_with(const Hypergraph& H, const Tuple& s) {
  if (s.empty()) {
    std::vector<int> all(H.m());
    for (std::size_t i = 0; i < H.m(); ++i) all[i] = static_cast<int>(i);
    return all;
  }
  return H.incident(s);
}

std::vector<int> positions(const Hypergraph& H) {
  std::vector<int> pos(H.id_bound(), -1);
  for (int i = 0; i < H.n(); ++i) pos[H.vertices()[i]] = i;
  return pos;
}

template <class T>
std::vector<T> law_for(const Hypergraph& H, const std::vector<T>& wt, const Tuple& suffix, const std::vector<int>& pos) {
  const int k = H.k();
  const int m = static_cast<int>(suffix.size());
  std::vector<T> p(H.n(), T(0));
  T total = 0;
  for (int id : edges_with(H, suffix)) {
    total += wt[id];
    for (int v : H.edge(id))
      if (!std::binary_search(suffix.begin(), suffix.end(), v)) p[pos[v]] += wt[id];
  }
  if (!(total > 0)) throw StuckWalkError("zero weight on suffix of size " + std::to_string(m));
  T denom = total * T(k - m);
  for (auto& x : p) x /= denom;
  return p;
}

}  // namespace

std::vector<Rational> transition_dist_exact(const Hypergraph& H, const EdgeWeighting& w, const WalkState& s) {
  if (!w.exact) throw DomainError("exact transition law needs an exact weighting");
  if (s.L < 1) throw DomainError("L must be positive");
  return law_for(H, w.q, suffix_of(s.history, s.m(H.k())), positions(H));
}

std::vector<double> transition_dist(const Hypergraph& H, const EdgeWeighting& w, const WalkState& s) {
  if (s.L < 1) throw DomainError("L must be positive");
  return law_for(H, w.w, suffix_of(s.history, s.m(H.k())), positions(H));
}

WalkSampler::WalkSampler(const Hypergraph& H, const EdgeWeighting& w, int L)
    : H_(H), w_(w), L_(L), pos_(positions(H)) {
  if (L < 1) throw DomainError("L must be positive");
  if (w.size() != H.m()) throw DomainError("weighting size does not match the edge count");
}

const WalkSampler::Cum& WalkSampler::law(const std::vector<int>& suffix) {
  auto it = cache_.find(suffix);
  if (it != cache_.end()) return it->second;
  auto p = law_for(H_, w_.w, suffix, pos_);
  Cum c;
  double acc = 0;
  for (int i = 0; i < H_.n(); ++i)
    if (p[i] > 0) {
      acc += p[i];
      c.cum.push_back(acc);
      c.v.push_back(H_.vertices()[i]);
    }
  return cache_.emplace(suffix, std::move(c)).first->second;
}

std::vector<int> WalkSampler::sample(int t_star, std::mt19937_64& rng) {
  std::vector<int> walk;
  walk.reserve(t_star);
  const int k = H_.k();
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 1; t <= t_star; ++t) {
    int m = std::min(k - 1, (t - 1) % L_);
    const Cum& c = law(suffix_of(walk, m));
    double r = U(rng) * c.cum.back();
    auto at = std::upper_bound(c.cum.begin(), c.cum.end(), r) - c.cum.begin();
    if (at >= static_cast<long>(c.v.size())) at = static_cast<long>(c.v.size()) - 1;
    walk.push_back(c.v[at]);
  }
  return walk;
}

std::vector<int> sample_walk(const Hypergraph& H, const EdgeWeighting& w, int L, int t_star, std::uint64_t seed) {
  WalkSampler S(H, w, L);
  std::mt19937_64 rng(seed);
  return S.sample(t_star, rng);
}

void for_each_walk(const Hypergraph& H, const EdgeWeighting& w, int L, int t,
                   const std::function<void(const std::vector<int>&, const Rational&)>& visit, double cap) {
  if (!w.exact) throw DomainError("walk enumeration needs an exact weighting");
  if (L < 1 || t < 0) throw DomainError("bad walk parameters");
  if (std::pow(static_cast<double>(H.n()), t) > cap)
    throw CapExceeded("n^t = " + std::to_string(H.n()) + "^" + std::to_string(t) + " exceeds the enumeration cap");
  const int k = H.k();
  auto pos = positions(H);
  std::map<Tuple, std::vector<std::pair<int, Rational>>> cache;
  std::vector<int> walk;
  std::vector<Rational> prob{Rational(1)};
  std::function<void()> rec = [&]() {
    int step = static_cast<int>(walk.size()) + 1;
    if (step > t) {
      visit(walk, prob.back());
      return;
    }
    int m = std::min(k - 1, (step - 1) % L);
    Tuple suf = suffix_of(walk, m);
    auto it = cache.find(suf);
    if (it == cache.end()) {
      auto p = law_for(H, w.q, suf, pos);
      std::vector<std::pair<int, Rational>> sparse;
      for (int i = 0; i < H.n(); ++i)
        if (p[i] > 0) sparse.emplace_back(H.vertices()[i], p[i]);
      it = cache.emplace(suf, std::move(sparse)).first;
    }
    for (const auto& [v, q] : it->second) {
      walk.push_back(v);
      prob.push_back(prob.back() * q);
      rec();
      prob.pop_back();
      walk.pop_back();
    }
  };
  rec();
}

namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void odometer(const std::vector<int>& V, int j, const std::function<void(const Tuple&)>& f) {
  Tuple x(j);
  std::vector<std::size_t> idx(j, 0);
  if (V.empty()) return;
  while (true) {
    for (int i = 0; i < j; ++i) x[i] = V[idx[i]];
    f(x);
    int i = j - 1;
    while (i >= 0 && ++idx[i] == V.size()) idx[i--] = 0;
    if (i < 0) return;
  }
}

}  // namespace

std::map<int, std::vector<TupleMarginal>> tuple_marginals_all(const Hypergraph& H, const EdgeWeighting& w, int L,
                                                              int t, int jmax, double cap) {
  const int k = H.k();
  const int top = std::min({k, t, jmax});
  if (top < 1) throw DomainError("need 1 <= j <= min(k, t)");
  std::vector<std::map<Tuple, Rational>> acc(top + 1);
  for_each_walk(
      H, w, L, t,
      [&](const std::vector<int>& walk, const Rational& p) {
        for (int j = 1; j <= top; ++j) acc[j][Tuple(walk.end() - j, walk.end())] += p;
      },
      cap);
  const Rational w0 = omega_exact(H, w, {});
  const Rational kf = factorial(k);
  std::map<int, std::vector<TupleMarginal>> out;
  for (int j = 1; j <= top; ++j) {
    const Rational c = factorial(k - j) / (kf * w0);
    auto& rows = out[j];
    odometer(H.vertices(), j, [&](const Tuple& x) {
      TupleMarginal r;
      r.tuple = x;
      auto it = acc[j].find(x);
      r.p_enum = it == acc[j].end() ? Rational(0) : it->second;
      Tuple s = x;
      std::sort(s.begin(), s.end());
      bool distinct = std::adjacent_find(s.begin(), s.end()) == s.end();
      r.p_formula = distinct ? c * omega_exact(H, w, x) : Rational(0);
      rows.push_back(std::move(r));
    });
  }
  return out;
}

std::vector<TupleMarginal> tuple_marginal_oracle(const Hypergraph& H, const EdgeWeighting& w, int L, int t, int j,
                                                 double cap) {
  if (j < 1 || j > std::min(H.k(), t)) throw DomainError("need 1 <= j <= min(k, t)");
  auto all = tuple_marginals_all(H, w, L, t, j, cap);
  return std::move(all[j]);
}

RateEstimate self_avoiding_rate(const Hypergraph& H, const EdgeWeighting& w, int L, int t_star, long trials,
                                std::uint64_t seed) {
  WalkSampler S(H, w, L);
  std::mt19937_64 rng(seed);
  long good = 0;
  for (long i = 0; i < trials; ++i) {
    auto walk = S.sample(t_star, rng);
    std::sort(walk.begin(), walk.end());
    if (std::adjacent_find(walk.begin(), walk.end()) == walk.end()) ++good;
  }
  RateEstimate r;
  r.trials = trials;
  r.rate = trials ? static_cast<double>(good) / trials : 0.0;
  r.radius = trials ? 1.96 * std::sqrt(r.rate * (1 - r.rate) / trials) : 1.0;
  return r;
}

}  // namespace hcpack
