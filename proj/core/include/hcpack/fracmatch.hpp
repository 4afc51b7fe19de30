#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcpack/hypergraph.hpp"

namespace hcpack {

// Edge weights indexed by edge id of the host. Exact mode keeps rationals
// alongside their double images; float mode only the doubles.
struct EdgeWeighting {
  bool exact = false;
  std::vector<Rational> q;
  std::vector<double> w;
  std::string method;

  std::size_t size() const { return w.size(); }
  double operator[](int e) const { return w[e]; }

  static EdgeWeighting from_exact(std::vector<Rational> q);
  static EdgeWeighting from_double(std::vector<double> w);
};

// omega(x) = sum of w(e) over edges e containing the vertex set x; omega({}) = total
Rational omega_exact(const Hypergraph& H, const EdgeWeighting& w, const Tuple& x);
double omega(const Hypergraph& H, const EdgeWeighting& w, const Tuple& x);
std::vector<Rational> vertex_sums_exact(const Hypergraph& H, const EdgeWeighting& w);
std::vector<double> vertex_sums(const Hypergraph& H, const EdgeWeighting& w);
// every vertex sum equals 1 (exactly in exact mode, within tol otherwise)
bool is_perfect_fractional_matching(const Hypergraph& H, const EdgeWeighting& w, double tol = 1e-9);

EdgeWeighting uniform_weighting(const Hypergraph& H, bool exact = true);

// ordered pair (s,t) -> self-avoiding (k+1)-vertex walks s ... t
struct WalkRegistry {
  std::map<std::pair<int, int>, std::vector<Tuple>> walks;
  std::size_t total() const;
};

WalkRegistry build_walk_registry(const Hypergraph& H, std::size_t cap_per_pair = 500, std::uint64_t seed = 1);

EdgeWeighting redistribute_pfm(const Hypergraph& H, const WalkRegistry& W, bool exact = true);

double balancedness(const EdgeWeighting& w);
Rational balancedness_exact(const EdgeWeighting& w);

// maximise the minimum weight subject to unit vertex sums; nullopt if no PFM exists
std::optional<EdgeWeighting> pfm_lp(const Hypergraph& H);

// Redistribution first, LP when redistribution fails or exceeds the balance bound.
// nullopt means no C-balanced PFM was found.
std::optional<EdgeWeighting> assigned_pfm(const Hypergraph& H, std::uint64_t seed, double balance_bound = 2.0,
                                          bool exact = false, std::size_t cap_per_pair = 500);

struct SparsifyGates {
  std::optional<double> eta_min;
  std::optional<double> rho_max;
  int retries = 50;
};

struct SparsifyResult {
  bool ok = false;
  Hypergraph graph;
  RegularityReport report;
  int attempts = 0;
};

// keep e with p_e = (1-eps) + eps w(e)/w_max if e in F, else eps w(e)/w_max
SparsifyResult sparsify_intersecting(const Hypergraph& H, const Hypergraph& F, double eps, const EdgeWeighting& pfm,
                                     std::uint64_t seed, const SparsifyGates& gates = {});

void write_weighting(std::ostream& out, const EdgeWeighting& w);
EdgeWeighting read_weighting(std::istream& in);

}  // namespace hcpack
