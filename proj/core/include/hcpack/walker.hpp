#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "hcpack/fracmatch.hpp"
#include "hcpack/hypergraph.hpp"

namespace hcpack {

struct WalkState {
  std::vector<int> history;
  int L = 1;
  // 1-based index of the step about to be drawn
  int t() const { return static_cast<int>(history.size()) + 1; }
  int m(int k) const;
};

// law of X_t given the history; indexed like H.vertices()
std::vector<Rational> transition_dist_exact(const Hypergraph& H, const EdgeWeighting& w, const WalkState& s);
std::vector<double> transition_dist(const Hypergraph& H, const EdgeWeighting& w, const WalkState& s);

// step-by-step sampler with per-suffix caches of the cumulative law
class WalkSampler {
 public:
  WalkSampler(const Hypergraph& H, const EdgeWeighting& w, int L);
  std::vector<int> sample(int t_star, std::mt19937_64& rng);

 private:
  struct Cum {
    std::vector<double> cum;
    std::vector<int> v;
  };
  const Cum& law(const std::vector<int>& suffix);
  const Hypergraph& H_;
  const EdgeWeighting& w_;
  int L_;
  std::vector<int> pos_;
  std::map<Tuple, Cum> cache_;
};

std::vector<int> sample_walk(const Hypergraph& H, const EdgeWeighting& w, int L, int t_star, std::uint64_t seed);

// visits every length-t prefix with positive probability; refuses when n^t exceeds cap
void for_each_walk(const Hypergraph& H, const EdgeWeighting& w, int L, int t,
                   const std::function<void(const std::vector<int>&, const Rational&)>& visit,
                   double cap = 5e7);

struct TupleMarginal {
  std::vector<int> tuple;
  Rational p_enum;
  Rational p_formula;
};

// P[X_{t-j+1..t} = tuple] by enumeration and by (k-j)! w(tuple) / (k! w({}))
std::vector<TupleMarginal> tuple_marginal_oracle(const Hypergraph& H, const EdgeWeighting& w, int L, int t, int j,
                                                 double cap = 5e7);
// all j in [1, min(k,t,jmax)] from one enumeration
std::map<int, std::vector<TupleMarginal>> tuple_marginals_all(const Hypergraph& H, const EdgeWeighting& w, int L,
                                                              int t, int jmax, double cap = 5e7);

struct RateEstimate {
  double rate = 0;
  long trials = 0;
  double radius = 0;  // 95% normal-approximation half width
};

RateEstimate self_avoiding_rate(const Hypergraph& H, const EdgeWeighting& w, int L, int t_star, long trials,
                                std::uint64_t seed);

}  // namespace hcpack
