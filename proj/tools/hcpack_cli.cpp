#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hcpack/absorb.hpp"
#include "hcpack/assemble.hpp"
#include "hcpack/cover.hpp"
#include "hcpack/errors.hpp"
#include "hcpack/fracmatch.hpp"
#include "hcpack/hypergraph.hpp"
#include "hcpack/oracles.hpp"
#include "hcpack/walker.hpp"

using namespace hcpack;
using nlohmann::json;

namespace {

// exit codes
constexpr int kOk = 0;
constexpr int kPartial = 10;
constexpr int kParse = 20;
constexpr int kSpec = 21;
constexpr int kIo = 22;
constexpr int kStage = 30;
constexpr int kBudget = 31;
constexpr int kCap = 32;
constexpr int kWalk = 33;
constexpr int kInvalid = 34;

struct Common {
  std::string input;
  std::uint64_t seed = 1;
  std::string out;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string rat(const Rational& q) { return to_string(q); }

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << text;
}

Hypergraph load(const std::string& path) {
  if (path == "-") return read_hypergraph(std::cin);
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  return read_hypergraph(f);
}

Profile load_profile(const std::string& path, const std::vector<std::string>& sets) {
  Profile p;
  if (!path.empty()) p = read_profile_file(path);
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw DomainError("--set expects key=value, got " + kv);
    p.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return p;
}

int cmd_analyze(const Common& c) {
  Hypergraph H = load(c.input);
  RegularityReport r = regularity_report(H);
  std::map<int, int> hist;
  for (int d : r.degrees) ++hist[d];
  std::ostringstream o;
  o << "k " << r.k << "\nn " << r.n << "\nm " << r.m << "\n";
  o << "delta_codegree " << r.delta_codegree << "\n";
  o << "eta_star " << (r.eta_star ? rat(*r.eta_star) : "none") << "\n";
  o << "rho_star " << rat(r.rho_star) << "\n";
  o << "r_mean " << rat(r.r_mean) << "\n";
  o << "degree_histogram";
  for (const auto& [d, cnt] : hist) o << ' ' << d << ':' << cnt;
  o << "\n";
  emit(c.out, o.str());
  return kOk;
}

int cmd_regsub(const Common& c, std::size_t cap, bool brute) {
  Hypergraph H = load(c.input);
  RegKResult r = brute ? reg_k_bruteforce(H, cap) : reg_k(H, cap);
  emit(c.out, regk_json(r).dump(2) + "\n");
  return kOk;
}

int cmd_pfm(const Common& c, bool exact, double bound) {
  Hypergraph H = load(c.input);
  auto w = assigned_pfm(H, c.seed, bound, exact);
  if (!w) throw StageFailure("pfm", "no perfect fractional matching within the balance bound");
  std::ostringstream o;
  write_weighting(o, *w);
  emit(c.out, o.str());
  std::cerr << "method " << w->method << " balancedness " << balancedness(*w) << "\n";
  return kOk;
}

int cmd_walk(const Common& c, int L, int t, long samples, int oracle_j, bool rate) {
  Hypergraph H = load(c.input);
  auto w = assigned_pfm(H, c.seed, 2.0, oracle_j > 0);
  if (!w) throw StageFailure("pfm", "no perfect fractional matching within the balance bound");
  std::ostringstream o;
  if (oracle_j > 0) {
    for (const auto& m : tuple_marginal_oracle(H, *w, L, t, oracle_j)) {
      for (std::size_t i = 0; i < m.tuple.size(); ++i) o << (i ? " " : "") << m.tuple[i];
      o << " : " << rat(m.p_enum) << ' ' << rat(m.p_formula) << "\n";
    }
  } else if (rate) {
    RateEstimate r = self_avoiding_rate(H, *w, L, t, samples, c.seed);
    o << "rate " << r.rate << "\ntrials " << r.trials << "\nradius " << r.radius << "\n";
  } else {
    WalkSampler S(H, *w, L);
    std::mt19937_64 rng(c.seed);
    for (long i = 0; i < samples; ++i) {
      auto walk = S.sample(t, rng);
      for (std::size_t j = 0; j < walk.size(); ++j) o << (j ? " " : "") << walk[j];
      o << "\n";
    }
  }
  emit(c.out, o.str());
  return kOk;
}

int cmd_absorbers(const Common& c, int x, std::size_t cap, bool structure, const Profile& prof) {
  Hypergraph H = load(c.input);
  if (structure) {
    AbsorbingStructure S = build_absorbing_structure(H, H, prof.absorb_params(), c.seed);
    emit(c.out, structure_to_json(S).dump(2) + "\n");
    return S.ok ? kOk : kStage;
  }
  auto list = enumerate_absorbers(H, x, cap);
  std::ostringstream o;
  for (const auto& a : list) {
    for (std::size_t i = 0; i < a.seq.size(); ++i) o << (i ? " " : "") << a.seq[i];
    o << "\n";
  }
  emit(c.out, o.str());
  std::cerr << "absorbers " << list.size() << "\n";
  return kOk;
}

int cmd_cover(const Common& c, int L, int r, const Profile& prof) {
  Hypergraph H = load(c.input);
  auto f = fractional_cycle_decomposition(H, L, true, 20000, c.seed);
  CoverBundle b = simultaneous_path_cover(H, f, r, prof.cover_gates(), c.seed);
  json j = bundle_to_json(b);
  j["fractional_exact"] = f.exact;
  j["uncovered_edges"] = f.uncovered_edges;
  emit(c.out, j.dump(2) + "\n");
  return b.ok() ? kOk : kStage;
}

int cmd_decompose(const Common& c, const std::string& targets_spec, const Profile& prof, const std::string& manifest,
                  int parallel, bool normalize) {
  Hypergraph H = load(c.input);
  auto targets = parse_targets(targets_spec, H.n());
  check_targets(targets, H.n(), H.k(), prof);
  const int N = std::max(1, parallel);
  std::vector<std::future<DecomposeResult>> runs;
  for (int i = 0; i < N; ++i)
    runs.push_back(std::async(std::launch::async, [&, i] { return decompose(H, targets, prof, c.seed + i, normalize); }));
  std::vector<DecomposeResult> results;
  for (auto& f : runs) results.push_back(f.get());
  std::size_t pick = 0;
  for (std::size_t i = 0; i < results.size(); ++i)
    if (results[i].pack.status == PackResult::Full && results[i].valid) {
      pick = i;
      break;
    }
  const DecomposeResult& d = results[pick];
  emit(c.out, json{{"factors", d.manifest["factors"]}}.dump(2) + "\n");
  if (!manifest.empty()) emit(manifest, d.manifest.dump(2) + "\n");
  std::cerr << "achieved " << d.pack.factors.size() << " of " << targets.size() << " factors";
  if (!d.pack.message.empty()) std::cerr << " (" << d.pack.message << ")";
  if (!d.failed_stage.empty()) std::cerr << " failed stage " << d.failed_stage;
  std::cerr << "\n";
  if (!d.valid && !d.pack.factors.empty()) return kInvalid;
  if (d.pack.status == PackResult::Full && d.valid) return kOk;
  if (d.pack.status == PackResult::BudgetExceeded) return kBudget;
  if (!d.pack.factors.empty()) return kPartial;
  return kStage;
}

int cmd_verify(const Common& c, const std::string& factors_path) {
  Hypergraph H = load(c.input);
  std::ifstream f(factors_path);
  if (!f) throw IoError("cannot open " + factors_path);
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(0, e.what());
  }
  std::vector<CycleFactor> factors;
  try {
    factors = factors_from_json(j);
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad factors document: ") + e.what());
  }
  PackingReport r = validate_packing(H, factors);
  emit(c.out, packing_report_json(r).dump(2) + "\n");
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  return r.ok ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hcpack: tight Hamilton cycle packing toolkit"};
  app.require_subcommand(1);
  Common c;
  std::string profile_path;
  std::vector<std::string> sets;
  auto add_common = [&](CLI::App* s) {
    s->add_option("input", c.input, "hypergraph file, - for stdin")->required();
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("-o,--out", c.out, "output file, default stdout");
    s->add_option("--profile", profile_path, "key=value profile file");
    s->add_option("--set", sets, "profile override key=value (repeatable)");
  };

  auto* analyze = app.add_subcommand("analyze", "regularity report");
  add_common(analyze);

  std::size_t reg_cap = 64;
  bool brute = false;
  auto* regsub = app.add_subcommand("regsub", "largest k-divisible regular spanning subgraph");
  add_common(regsub);
  regsub->add_option("--cap", reg_cap, "edge cap of the search");
  regsub->add_flag("--bruteforce", brute, "full subset enumeration");

  bool exact = false;
  double bound = 2.0;
  auto* pfm = app.add_subcommand("pfm", "balanced perfect fractional matching");
  add_common(pfm);
  pfm->add_flag("--exact", exact, "rational arithmetic");
  pfm->add_option("--bound", bound, "balancedness bound");

  int L = 4, t = 4, oracle_j = 0, x = 0, r = 2;
  long samples = 1;
  bool rate = false, structure = false;
  auto* walk = app.add_subcommand("walk", "sample walks or dump the tuple-marginal oracle");
  add_common(walk);
  walk->add_option("--L", L, "walk period");
  walk->add_option("--t", t, "walk length");
  walk->add_option("--samples", samples, "number of walks or rate trials");
  walk->add_option("--oracle", oracle_j, "dump j-tuple marginals instead of walks");
  walk->add_flag("--rate", rate, "estimate the self-avoiding rate");

  std::size_t abs_cap = SIZE_MAX;
  auto* absorbers = app.add_subcommand("absorbers", "enumerate absorbers or build an absorbing structure");
  add_common(absorbers);
  absorbers->add_option("--x", x, "vertex to absorb");
  absorbers->add_option("--cap", abs_cap, "maximum number listed");
  absorbers->add_flag("--structure", structure, "build and dump an absorbing structure");

  auto* cover = app.add_subcommand("cover", "simultaneous tight path covers");
  add_common(cover);
  cover->add_option("--L", L, "cycle length");
  cover->add_option("--r", r, "number of collections");

  std::string targets = "H", manifest;
  int parallel = 1;
  bool normalize = false;
  auto* decompose_cmd = app.add_subcommand("decompose", "pack edge-disjoint cycle factors");
  add_common(decompose_cmd);
  decompose_cmd->add_option("--targets", targets, "factors separated by ';', lengths by ','; H is n; N*F repeats");
  decompose_cmd->add_option("--manifest", manifest, "manifest JSON output");
  decompose_cmd->add_option("--parallel-seeds", parallel, "independent seeds run side by side");
  decompose_cmd->add_flag("--normalize-timings", normalize, "zero all timings in the manifest");

  std::string factors_path;
  auto* verify = app.add_subcommand("verify", "validate a factors document");
  add_common(verify);
  verify->add_option("factors", factors_path, "factors JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kParse;
  }

  try {
    Profile prof = load_profile(profile_path, sets);
    if (*analyze) return cmd_analyze(c);
    if (*regsub) return cmd_regsub(c, reg_cap, brute);
    if (*pfm) return cmd_pfm(c, exact, bound);
    if (*walk) return cmd_walk(c, L, t, samples, oracle_j, rate);
    if (*absorbers) return cmd_absorbers(c, x, abs_cap, structure, prof);
    if (*cover) return cmd_cover(c, L, r, prof);
    if (*decompose_cmd) return cmd_decompose(c, targets, prof, manifest, parallel, normalize);
    if (*verify) return cmd_verify(c, factors_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const DomainError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kSpec;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const StageFailure& e) {
    std::cerr << "stage failure: " << e.what() << "\n";
    return kStage;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const std::runtime_error& e) {
    std::cerr << "stage failure: " << e.what() << "\n";
    return kWalk;
  }
  return kOk;
}
