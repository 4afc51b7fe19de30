#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "hcpack/fracmatch.hpp"
#include "hcpack/hypergraph.hpp"

namespace hcpack::gen {

inline std::vector<Tuple> all_edges(int k, int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return all_subsets(v, k);
}

// each k-set kept independently with probability p
inline Hypergraph random_hypergraph(int k, int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(p);
  std::vector<Tuple> e;
  for (auto& t : all_edges(k, n))
    if (keep(rng)) e.push_back(t);
  return Hypergraph(k, n, e);
}

// random 3-graph whose all-pairs intersection parameter is at least eta
inline Hypergraph random_intersecting(int n, double eta, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dens(0.75, 0.95);
  for (;;) {
    Hypergraph H = random_hypergraph(3, n, dens(rng), rng);
    std::vector<int> V = H.vertices();
    auto e = eta_within(H, V);
    if (e && *e >= eta) return H;
  }
}

// random 3-graph with rho_star <= rho and a perfect fractional matching
inline Hypergraph random_almost_regular(int n, double rho, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dens(0.8, 0.97);
  for (;;) {
    Hypergraph H = random_hypergraph(3, n, dens(rng), rng);
    if (H.m() == 0 || rho_of(H) > rho) continue;
    return H;
  }
}


}  // namespace hcpack::gen
