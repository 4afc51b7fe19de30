#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hcpack/hypergraph.hpp"
#include "hcpack/tight.hpp"

namespace hcpack {

struct Absorber {
  Seq seq;                          // a_1 ... a_2k
  std::vector<int> center_candidates;  // x with a_1..a_k x a_k+1..a_2k a tight path
};

// a_1..a_2k and a_1..a_k x a_k+1..a_2k are both tight paths
bool is_x_absorber(const Hypergraph& H, const Seq& a, int x);
std::vector<int> absorber_centers(const Hypergraph& H, const Seq& a);

// ordered sequences, lexicographic; at most cap of them
std::vector<Absorber> enumerate_absorbers(const Hypergraph& H_plus, int x, std::size_t cap = SIZE_MAX);

struct AbsorbParams {
  int L = 14;
  int a = 2;
  int ell = 1;
  double theta = 0.5;
  int t_star = 0;     // 0: max(k+1, ceil(n^(1/3))) rounded up to a multiple of L
  int s_star = -1;    // -1: floor(theta^2 n / t_star)
  double rho = -1;    // input regularity; -1 measures H
  double cover_factor = 3.0;
  int retries = 20;
  double balance_bound = 2.0;
};

struct Block {
  int path = 0;    // index into AbsorbingStructure::paths
  int index = 0;   // i-th block of that path, 0-based
  int offset = 0;  // first position inside the path
  Seq seq;
  std::vector<Seq> slots;
  std::map<int, int> slot_for;  // x -> lowest slot holding an x-absorber
  int unabsorbable = 0;         // vertices of the host with no absorber among the slots
  bool good = false;
};

struct ItemChecks {
  bool paths_bound = true;     // |P| <= theta^2 n / L
  bool regular_residual = true;  // H - V(P) is 2 rho-almost regular
  bool enough_blocks = true;   // every x sees >= factor theta^4 n blocks
  bool no_bad_blocks = true;   // every kept block misses <= theta^4 n vertices
  bool all() const { return paths_bound && regular_residual && enough_blocks && no_bad_blocks; }
  std::string failing() const;
};

struct AbsorbingStructure {
  int k = 0;
  std::vector<Seq> paths;
  std::vector<Block> blocks;  // good blocks only
  std::vector<int> sigma;     // per path
  int capacity() const { return static_cast<int>(blocks.size()); }

  AbsorbParams params;
  int n = 0;
  int t_star = 0;
  int s_star = 0;
  int stages_kept = 0;
  int stages_failed = 0;
  bool fatal = false;
  std::string fatal_reason;
  int attempts = 0;
  int bad_blocks_dropped = 0;
  ItemChecks items;
  bool ok = false;
};

struct StarSizes {
  int t_star;
  int s_star;
};
StarSizes star_sizes(int n, int k, const AbsorbParams& p);

// H is an induced subgraph of H_plus; paths live in H, absorbers are read in H_plus
AbsorbingStructure build_absorbing_structure(const Hypergraph& H_plus, const Hypergraph& H, const AbsorbParams& p,
                                             std::uint64_t seed);
ItemChecks check_items(const Hypergraph& H_plus, const Hypergraph& H, const AbsorbingStructure& S);

// left side i adjacent to right side adj[i]; both sides of size adj.size()
using Bipartite = std::vector<std::vector<int>>;
// maximum matching, match[left] = right or -1
std::vector<int> max_bipartite_matching(const Bipartite& G);
std::vector<std::vector<int>> disjoint_perfect_matchings(const Bipartite& G, int count);
int hall_guarantee(const Bipartite& G);  // ceil((d1 + d2 - n) / 2), clamped at 0

struct Absorption {
  std::vector<Seq> paths;         // phi(P) in the order of S.paths
  std::map<int, int> block_of;    // x -> block index
  int matchings_available = 0;
};

// inserts every x of X into its matched block; |X| must equal the capacity
Absorption absorb(const AbsorbingStructure& S, const std::vector<int>& X, std::uint64_t seed);

nlohmann::json structure_to_json(const AbsorbingStructure& S);

}  // namespace hcpack
