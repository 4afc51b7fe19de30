#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hcpack/hypergraph.hpp"
#include "hcpack/tight.hpp"

namespace hcpack {

// canonical tight L-cycles of H; a seeded sample of size cap when there are more
std::vector<Seq> enumerate_cycles(const Hypergraph& H, int L, std::size_t cap = 20000, std::uint64_t seed = 1,
                                  bool* truncated = nullptr);

struct FractionalCycleDecomposition {
  int L = 0;
  std::vector<Seq> cycles;  // canonical
  std::vector<double> weight;
  bool exact = false;       // every edge sums to 1; false means a maximum partial packing
  double max_deviation = 0;  // max |1 - sum| over edges
  double min_weight = 0;
  double max_weight = 0;
  bool family_truncated = false;
  int uncovered_edges = 0;  // edges with sum < 1 - 1e-9
};

// LP over the cycle family. Throws StageFailure("cover", ...) when infeasible and allow_partial is false.
FractionalCycleDecomposition fractional_cycle_decomposition(const Hypergraph& H, int L, bool allow_partial = false,
                                                            std::size_t cap = 20000, std::uint64_t seed = 1);
// independent per-edge summation; max |1 - sum|
double decomposition_deviation(const Hypergraph& H, const FractionalCycleDecomposition& f);

struct CoverGates {
  double mu = 0.2;
  double cap_con = 1.0;
  double cap_end = 1.0;
  int retries = 10;
};

struct TypeStats {
  int max_lo = 0;
  std::vector<int> max_con;  // index j = 1..k
  std::vector<int> max_end;  // index j = 1..k
  bool lo_ok = true;
  bool con_ok = true;
  bool end_ok = true;
};

struct CoverBundle {
  int k = 0;
  int n = 0;
  std::vector<std::vector<Seq>> cycles;  // per collection
  std::vector<std::vector<Seq>> paths;   // per collection
  std::vector<int> coverage;
  TypeStats stats;
  bool coverage_ok = true;
  int attempts = 0;
  bool ok() const { return coverage_ok && stats.lo_ok && stats.con_ok && stats.end_ok; }
};

// randomized greedy matching in the blow-up: cycles drawn with probability proportional to weight,
// edge-disjoint across collections and vertex-disjoint within one
std::vector<std::vector<Seq>> extract_cycle_collections(const Hypergraph& H, const FractionalCycleDecomposition& f,
                                                        int r, std::uint64_t seed);

// deletes k-1 consecutive edges of every cycle at a uniform rotation
std::vector<std::vector<Seq>> cycles_to_paths(const std::vector<std::vector<Seq>>& collections, int k,
                                              std::uint64_t seed);

TypeStats type_statistics(const std::vector<int>& vertices, int k, const std::vector<std::vector<Seq>>& paths,
                          const CoverGates& g);

// extraction + conversion retried until the gates hold; the last attempt is returned otherwise
CoverBundle simultaneous_path_cover(const Hypergraph& H, const FractionalCycleDecomposition& f, int r,
                                    const CoverGates& g, std::uint64_t seed);

bool collections_valid(const Hypergraph& H, const std::vector<std::vector<Seq>>& collections, bool cycles,
                       std::string* why = nullptr);

nlohmann::json bundle_to_json(const CoverBundle& b);

}  // namespace hcpack
