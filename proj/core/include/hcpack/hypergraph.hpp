#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "hcpack/errors.hpp"

namespace hcpack {

using Rational = mpq_class;
using Tuple = std::vector<int>;

std::string to_string(const Rational& q);

// k-uniform hypergraph over a set of integer vertex ids.
// Ids are global: H[U] keeps the labels of H, so subgraphs can be
// compared and glued without translation.
class Hypergraph {
 public:
  Hypergraph() = default;
  // vertices 0..n-1
  Hypergraph(int k, int n, std::vector<Tuple> edges);
  Hypergraph(int k, std::vector<int> vertices, std::vector<Tuple> edges);

  int k() const { return k_; }
  int n() const { return static_cast<int>(vertices_.size()); }
  std::size_t m() const { return edges_.size(); }
  int id_bound() const { return id_bound_; }
  const std::vector<int>& vertices() const { return vertices_; }
  bool has_vertex(int v) const { return v >= 0 && v < id_bound_ && member_[v]; }

  const std::vector<Tuple>& edges() const { return edges_; }
  const Tuple& edge(int id) const { return edges_.at(id); }
  std::optional<int> find_edge(Tuple e) const;
  bool has_edge(const Tuple& e) const { return find_edge(e).has_value(); }

  int degree(int v) const;
  int codegree(const Tuple& x) const;
  // sorted vertex list {v : x + v in E}; |x| = k-1
  std::vector<int> neighborhood(const Tuple& x) const;
  // ids of the edges containing x, 1 <= |x| <= k-1
  std::vector<int> incident(const Tuple& x) const;
  const std::vector<int>& vertex_edges(int v) const;

  Hypergraph induced(const std::vector<int>& U) const;
  Hypergraph remove_edges(const std::vector<int>& edge_ids) const;
  Hypergraph remove_edge_sets(const std::vector<Tuple>& sets) const;
  Hypergraph remove_vertices(const std::vector<int>& X) const;

  std::uint64_t key(const Tuple& sorted) const;
  int max_id_for(int k) const;

  // memory cap (entries) for the memoised j-subset index
  static constexpr std::size_t kDefaultIndexCap = 10'000'000;
  void set_index_cap(std::size_t cap) { index_cap_ = cap; }

 private:
  struct Index;
  void build();
  const std::unordered_map<std::uint64_t, std::vector<int>>* subset_index(int j) const;
  Tuple checked_subset(const Tuple& x, int lo, int hi) const;

  int k_ = 0;
  int id_bound_ = 0;
  int bits_ = 0;
  std::vector<int> vertices_;
  std::vector<char> member_;
  std::vector<Tuple> edges_;
  std::unordered_map<std::uint64_t, int> edge_index_;
  std::vector<std::vector<int>> vertex_edges_;
  std::shared_ptr<Index> index_;
  std::size_t index_cap_ = kDefaultIndexCap;
};

Hypergraph complete_hypergraph(int k, int n);
Hypergraph read_hypergraph(std::istream& in);
Hypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph(std::ostream& out, const Hypergraph& H);

struct RegularityReport {
  int k = 0;
  int n = 0;
  std::size_t m = 0;
  Rational r_mean;
  Rational rho_star;
  // all-pairs minimum of |N(x) & N(y)| / n; absent when n < 2(k-1)
  std::optional<Rational> eta_star;
  std::optional<Rational> eta_disjoint;
  int delta_codegree = 0;
  int min_degree = 0;
  int max_degree = 0;
  std::vector<int> degrees;  // indexed like H.vertices()

  bool operator==(const RegularityReport&) const = default;
};

RegularityReport regularity_report(const Hypergraph& H);
// cheaper variant without the pairwise intersection scan
RegularityReport degree_report(const Hypergraph& H);
double rho_of(const Hypergraph& H);
// all-pairs (or disjoint-pairs) minimum of |N(x) & N(y) & W| / |W|
std::optional<double> eta_within(const Hypergraph& H, const std::vector<int>& W, bool disjoint_only = false);

struct DegreeTransferReport {
  bool precondition_ok = true;
  std::vector<Tuple> failing_sets;
  double window = 0;  // 8 k^3 eps
  bool conclusion_ok = true;
  bool lemma_applies = true;  // eps <= (1 - theta) / (8 k^2)
  struct VertexRow {
    int v;
    int induced_degree;
    int degree;
    double ratio;  // induced / (theta^{k-1} d)
    bool pass;
  };
  std::vector<VertexRow> vertices;
};

DegreeTransferReport degree_transfer_check(const Hypergraph& H, const std::vector<int>& U, double theta, double eps);

// measured per-(k-1)-set ratio statistics for U: mean theta and max relative deviation eps
struct TransferFit {
  double theta = 0;
  double eps = 0;
};
TransferFit fit_transfer(const Hypergraph& H, const std::vector<int>& U);

// all j-subsets of a sorted tuple, lexicographic
std::vector<Tuple> subsets_of_size(const Tuple& s, int j);
// all j-subsets of vertices
std::vector<Tuple> all_subsets(const std::vector<int>& vertices, int j);

}  // namespace hcpack
