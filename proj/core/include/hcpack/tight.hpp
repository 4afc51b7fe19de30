#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hcpack/hypergraph.hpp"

namespace hcpack {

using Seq = std::vector<int>;

bool is_tight_path(const Hypergraph& H, const Seq& seq);
bool is_tight_cycle(const Hypergraph& H, const Seq& seq);

// edges of a tight path / cycle as sorted k-sets, in window order
std::vector<Tuple> path_edges(const Seq& seq, int k);
std::vector<Tuple> cycle_edges(const Seq& seq, int k);

// first k and last k vertices for l >= 2k+1, else the whole path
struct Boundary {
  Seq head;
  Seq tail;
};
Boundary boundary(const Seq& P, int k);
Seq interior(const Seq& P, int k);

// start at the minimum vertex, then the lexicographically smaller direction
Seq canonical_cycle(const Seq& c);
// lexicographically smaller of P and its reversal
Seq canonical_path(const Seq& p);

struct CycleFactor {
  std::vector<Seq> cycles;
  std::vector<int> lengths() const;  // sorted
  int total() const;
  int girth() const;
};

struct FactorCheck {
  bool ok = true;
  std::vector<std::string> reasons;
};

FactorCheck verify_factor_copy(const Hypergraph& H, const CycleFactor& F, std::vector<int> target_lengths);

struct KType {
  enum Kind { End, Lo, Con };
  Kind kind = Lo;
  int j = 0;
  std::string str() const;
  bool operator==(const KType&) const = default;
};

// vertex-disjoint tight paths with the end-set index used by classify
class PathCollection {
 public:
  PathCollection() = default;
  PathCollection(int k, std::vector<Seq> paths);

  int k() const { return k_; }
  const std::vector<Seq>& paths() const { return paths_; }
  int coverage() const { return static_cast<int>(owner_.size()); }
  // -1 if v is not covered
  int owner(int v) const;
  bool is_end_set(Tuple x) const;

  KType classify(const Tuple& e) const;

 private:
  int k_ = 0;
  std::vector<Seq> paths_;
  std::unordered_map<int, int> owner_;
  std::unordered_set<std::string> end_sets_;
};

std::string set_key(Tuple x);

// {"factors":[{"cycles":[[...]]}]} in canonical form
nlohmann::json factors_to_json(const std::vector<CycleFactor>& factors);
std::vector<CycleFactor> factors_from_json(const nlohmann::json& j);

}  // namespace hcpack
