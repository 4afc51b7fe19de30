#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcpack/absorb.hpp"
#include "hcpack/cover.hpp"
#include "hcpack/hypergraph.hpp"
#include "hcpack/tight.hpp"

namespace hcpack {

// Every tunable constant of the pipeline. Serialized as key=value lines.
struct Profile {
  // outer cover
  int L = 4;
  double mu = 0.2;
  double cap_con = 1.0;
  double cap_end = 1.0;
  int cover_retries = 10;
  // layer
  double delta = 0.3;
  double eta = 0.2;
  double rho = 0.1;
  double beta = 0.4;
  int ell0 = 2;
  int ell1 = 6;
  int Lp = 4;  // inner cover cycle length
  int cover_choices = 3;
  int good_retries = 1000;
  int reservoir_retries = 1000;
  int reservoir_audit = 50;       // endpoint pairs audited; 0 skips the count check
  bool reservoir_rho_gate = true;
  int girth_mult = 2;             // target girth >= girth_mult * L
  int layer_retries = 20;
  // absorbing structure
  int abs_L = 14;
  int a = 2;
  int ell = 1;
  double theta = 0.5;
  int t_star = 0;
  int s_star = -1;
  double cover_factor = 3.0;
  int abs_retries = 20;
  double nu_plus = 0.5;
  double balance_bound = 2.0;
  // packing
  double cap_fraction = 0.25;
  int min_codegree = 0;
  // split of the host
  double eps = 0.3;
  std::optional<double> sparsify_eta_min;
  std::optional<double> sparsify_rho_max;
  int sparsify_retries = 50;
  int decompose_retries = 1;
  double time_budget = 0;  // seconds per decompose call; 0 is unbounded

  // throws DomainError on an unknown key or a bad value
  void set(const std::string& key, const std::string& value);
  AbsorbParams absorb_params() const;
  CoverGates cover_gates() const;
};

Profile read_profile(std::istream& in);
Profile read_profile_file(const std::string& path);
void write_profile(std::ostream& out, const Profile& p);
nlohmann::json profile_to_json(const Profile& p);

struct ReservoirOptions {
  int retries = 1000;
  int audit_pairs = 50;
  bool rho_gate = true;
  double rho = 0.1;
};

struct Reservoir {
  std::vector<int> R;
  double beta = 0;
  int ell0 = 0, ell1 = 0;
  int attempts = 0;
  bool size_ok = false;
  bool regular_ok = false;
  bool audit_ok = false;
  int audited = 0;
  std::string audit_failure;
  bool ok() const { return size_ok && regular_ok && audit_ok; }
};

// ordered s -> t connectors: sequences of ell distinct vertices of `pool` with s ++ seq ++ t tight in F
std::vector<Seq> connectors(const Hypergraph& F, const Seq& s, const Seq& t, int ell, const std::vector<int>& pool,
                            std::size_t cap = 1000000);

Reservoir build_reservoir(const Hypergraph& F, double beta, int ell0, int ell1, std::uint64_t seed,
                          const ReservoirOptions& opt = {});

struct ConnectRequest {
  Seq from;  // ordered ending edge t of one path
  Seq to;    // ordered starting edge s of the next
  int lambda = 0;
};

// one uniformly chosen connector per request, vertex-disjoint from earlier picks and all endpoints;
// throws StageFailure("connect", ...) naming the exhausted request
std::vector<Seq> connect(const Hypergraph& F, const std::vector<ConnectRequest>& Q, const std::vector<int>& R,
                         std::uint64_t seed);

// lambda_1..lambda_z in [ell0, ell1] summing to budget, as even as possible; nullopt when impossible
std::optional<std::vector<int>> split_budget(int budget, int z, int ell0, int ell1);

struct LayerReport {
  int attempts = 0;
  std::map<std::string, int> failures;  // stage -> count
  int kept_paths = 0;
  int v1 = 0, reservoir = 0, v2 = 0, v3 = 0;
  int capacity = 0;
  int leftover = 0;
  bool budget_identity = false;
  std::map<std::string, double> seconds;
  std::string last_failure;
};

struct LayerResult {
  bool ok = false;
  CycleFactor factor;
  std::vector<Tuple> f_edges;  // F-edges used by the factor
  LayerReport report;
};

// one attempt; throws StageFailure naming the stage
LayerResult layer_attempt(const Hypergraph& H, const Hypergraph& F, const std::vector<Seq>& P,
                          const std::vector<int>& target, const Profile& prof, std::uint64_t seed);
// retried up to prof.layer_retries times; parameter errors are thrown before any work
LayerResult layer_transform(const Hypergraph& H, const Hypergraph& F, const std::vector<Seq>& P,
                            const std::vector<int>& target, const Profile& prof, std::uint64_t seed);

struct UsageLedger {
  int k = 0;
  int cap = 0;
  std::map<Tuple, int> consumed;             // (k-1)-set -> consumed F-codegree
  std::vector<std::map<Tuple, int>> layers;  // Y indicators per layer

  void add_layer(const std::vector<Tuple>& f_edges);
  static std::map<Tuple, int> recompute(int k, const std::vector<std::vector<Tuple>>& f_edges_per_layer);
  int max_consumed() const;
};

struct PackResult {
  enum Status { Full, Partial, BudgetExceeded };
  Status status = Full;
  std::vector<CycleFactor> factors;
  std::vector<LayerReport> layers;
  std::vector<std::vector<Tuple>> f_edges;
  UsageLedger ledger;
  std::optional<Tuple> culprit;
  bool ledger_consistent = true;
  std::string message;
};

PackResult pack_factors(const Hypergraph& H, const Hypergraph& F, const std::vector<std::vector<Seq>>& collections,
                        const std::vector<std::vector<int>>& targets, const Profile& prof, std::uint64_t seed);

// lengths summing to n with girth gate; throws DomainError otherwise
void check_targets(const std::vector<std::vector<int>>& targets, int n, int k, const Profile& prof);
std::vector<std::vector<int>> parse_targets(const std::string& spec, int n);

struct DecomposeResult {
  PackResult pack;
  bool valid = false;  // validate_packing on the emitted factors
  std::vector<std::string> validation;
  int attempts = 0;
  std::string failed_stage;
  nlohmann::json manifest;
};

DecomposeResult decompose(const Hypergraph& H, const std::vector<std::vector<int>>& targets, const Profile& prof,
                          std::uint64_t seed, bool normalize_timings = false);

}  // namespace hcpack
