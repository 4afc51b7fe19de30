#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hcpack/fracmatch.hpp"
#include "hcpack/hypergraph.hpp"
#include "hcpack/tight.hpp"

namespace hcpack {

struct RegKResult {
  int r = 0;
  std::vector<int> witness;  // edge ids; every vertex lies in exactly r of them
  long nodes = 0;
};

// backtracking over edge subsets, descending over r divisible by k
RegKResult reg_k(const Hypergraph& H, std::size_t cap = 64);
// all 2^|E| subsets
RegKResult reg_k_bruteforce(const Hypergraph& H, std::size_t cap = 24);

std::optional<Seq> hamilton_exists(const Hypergraph& H, int cap = 14);

std::map<Seq, Rational> walk_distribution(const Hypergraph& H, const EdgeWeighting& w, int L, int t,
                                          double cap = 5e7);

struct PackingReport {
  bool ok = true;
  std::vector<std::string> reasons;
  std::vector<std::string> warnings;
};

// tightness, per-factor spanning and disjointness, cross-factor edge-disjointness, optional lengths
PackingReport validate_packing(const Hypergraph& H, const std::vector<CycleFactor>& factors,
                               const std::vector<std::vector<int>>& target_lengths = {});

// subset enumeration straight from the definitions of end-sets, leftover and concentration
KType classify_oracle(int k, const std::vector<Seq>& paths, const Tuple& e);

nlohmann::json packing_report_json(const PackingReport& r);
nlohmann::json regk_json(const RegKResult& r);

}  // namespace hcpack
