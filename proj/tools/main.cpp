#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hamdec/decomposer.hpp"
#include "hamdec/expander.hpp"
#include "hamdec/matching_flow.hpp"
#include "json.hpp"

using namespace hamdec;

namespace {

// exit codes: 0 success/pass, 2 verified negative, 3 inconclusive, 4 input
// error (70 marks an internal invariant failure, which is always a bug)
constexpr int kOk = 0;
constexpr int kNegative = 2;
constexpr int kInconclusive = 3;
constexpr int kInputError = 4;
constexpr int kInternalError = 70;

constexpr const char* kVersion = "hamdec 1 (edge-list format 1, json records 1)";

// stdout plus an optional copy into a file, line-buffered for tailing
struct Sink {
  std::optional<std::ofstream> file;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.emplace(path);
    if (!*file) throw std::invalid_argument("cannot open output file '" + path + "'");
  }
  void line(const std::string& s) {
    std::cout << s << "\n" << std::flush;
    if (file) *file << s << "\n";
  }
};

std::string slurp(std::istream& is) {
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Digraph load_graph(const std::string& path) {
  if (path == "-") return parse_digraph(slurp(std::cin));
  return read_digraph_file(path);
}

std::string load_text(const std::string& path) {
  if (path == "-") return slurp(std::cin);
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read '" + path + "'");
  return slurp(f);
}

struct CertifyArgs {
  std::string graph, nu, tau, mode = "exhaustive", output;
  uint64_t seed = 0;
  int jobs = 1, cap = 18;
};

int run_certify(const CertifyArgs& a) {
  Sink out;
  out.open(a.output);
  ExpanderParams params(Rational::parse(a.nu), Rational::parse(a.tau));
  CertifyOptions opt;
  opt.seed = a.seed;
  opt.jobs = a.jobs;
  opt.exhaustive_cap = a.cap;
  CertMode mode;
  if (a.mode == "exhaustive") {
    mode = CertMode::exhaustive;
  } else if (a.mode == "sampled" || a.mode.rfind("sampled:", 0) == 0) {
    mode = CertMode::sampled;
    if (a.mode.size() > 8) {
      try {
        opt.samples = std::stoull(a.mode.substr(8));
      } catch (const std::logic_error&) {
        throw std::invalid_argument("bad sample count in --mode '" + a.mode + "'");
      }
    }
  } else if (a.mode == "degree") {
    mode = CertMode::degree_implied;
  } else {
    throw std::invalid_argument("unknown mode '" + a.mode +
                                "' (expected exhaustive, sampled[:K] or degree)");
  }
  auto g = load_graph(a.graph);
  auto cert = certify(g, params, mode, opt);
  out.line(certificate_to_json(cert));
  if (cert.pass) return kOk;
  // a violating set refutes expansion; a failed degree bound decides nothing
  return mode == CertMode::degree_implied ? kInconclusive : kNegative;
}

struct FactorizeArgs {
  std::string graph, output;
};

int run_factorize(const FactorizeArgs& a) {
  Sink out;
  out.open(a.output);
  auto g = load_graph(a.graph);
  auto fz = one_factorization(g);
  nlohmann::ordered_json j;
  j["n"] = g.n();
  j["r"] = (int)fz.factors.size();
  auto arr = nlohmann::ordered_json::array();
  auto counts = nlohmann::ordered_json::array();
  for (const auto& f : fz.factors) {
    arr.push_back(f.succ_map());
    counts.push_back(cycle_count(f));
  }
  j["factors"] = arr;
  j["cycle_counts"] = counts;
  out.line(j.dump());
  return kOk;
}

struct DecomposeArgs {
  std::string graph, nu, tau, output;
  bool certify = false;
  uint64_t seed = 0;
  long long budget = 0;
  int restarts = 64, exact_cap = 10, jobs = 1;
};

int verdict_code(const DecompositionReport& rep) {
  switch (rep.verdict) {
    case Verdict::success: return kOk;
    case Verdict::proved_impossible: return kNegative;
    case Verdict::failure: return kInconclusive;
  }
  return kInternalError;
}

DecomposeConfig make_config(const DecomposeArgs& a) {
  DecomposeConfig cfg;
  cfg.certify = a.certify;
  if (!a.nu.empty() || !a.tau.empty()) {
    if (a.nu.empty() || a.tau.empty())
      throw std::invalid_argument("--nu and --tau must be given together");
    cfg.cert_params = ExpanderParams(Rational::parse(a.nu), Rational::parse(a.tau));
  }
  cfg.seed = a.seed;
  cfg.restarts = a.restarts;
  cfg.switch_budget = a.budget;
  cfg.exact_cap = a.exact_cap;
  cfg.jobs = a.jobs;
  return cfg;
}

int run_decompose(const DecomposeArgs& a) {
  Sink out;
  out.open(a.output);
  auto g = load_graph(a.graph);
  auto rep = decompose(g, make_config(a));
  out.line(report_to_json(rep));
  return verdict_code(rep);
}

struct TillsonArgs {
  int n = 0;
  std::string output;
  uint64_t seed = 0;
  long long budget = 0;
  int restarts = 64, jobs = 1;
};

int run_tillson(const TillsonArgs& a) {
  Sink out;
  out.open(a.output);
  DecomposeConfig cfg;
  cfg.seed = a.seed;
  cfg.restarts = a.restarts;
  cfg.switch_budget = a.budget;
  cfg.jobs = a.jobs;
  auto rep = tillson_decompose(a.n, cfg);
  out.line(report_to_json(rep));
  return verdict_code(rep);
}

struct AtspArgs {
  std::string weights, output;
  uint64_t seed = 0;
  bool brute_force = false;
};

int run_atsp(const AtspArgs& a) {
  Sink out;
  out.open(a.output);
  auto w = parse_weight_matrix(load_text(a.weights));
  auto res = atsp_domination_tour(w, a.seed, a.brute_force);
  nlohmann::ordered_json j;
  j["n"] = w.n;
  j["tour"] = res.tour;
  j["weight"] = res.weight.str();
  j["mean"] = res.mean.str();
  j["bound_ok"] = res.bound_ok;
  j["fallback"] = res.fallback;
  if (res.domination_count) {
    j["domination_count"] = *res.domination_count;
    j["domination_fraction"] = res.domination_fraction->str();
  }
  out.line(j.dump());
  return res.bound_ok ? kOk : kNegative;
}

struct TournamentArgs {
  int n = 0, trials = 0;
  std::string output;
  uint64_t seed = 0;
  long long budget = 0;
  int restarts = 64, jobs = 1;
};

int run_tournament(const TournamentArgs& a) {
  Sink out;
  out.open(a.output);
  DecomposeConfig base;
  base.restarts = a.restarts;
  base.switch_budget = a.budget;
  int extracted = 0, decomposed = 0;
  int chunk = std::max(1, a.jobs);
  for (int first = 0; first < a.trials; first += chunk) {
    int count = std::min(chunk, a.trials - first);
    auto part = tournament_experiment(a.n, count, a.seed, base, a.jobs, first);
    for (const auto& tr : part) {
      extracted += tr.extracted;
      decomposed += tr.decomposed;
      nlohmann::ordered_json j;
      j["trial"] = tr.trial;
      j["delta0"] = tr.delta0;
      j["extracted"] = tr.extracted;
      j["decomposed"] = tr.decomposed;
      j["restarts_used"] = tr.restarts_used;
      out.line(j.dump());
    }
  }
  nlohmann::ordered_json s;
  s["summary"] = true;
  s["n"] = a.n;
  s["trials"] = a.trials;
  s["extracted"] = extracted;
  s["decomposed"] = decomposed;
  out.line(s.dump());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge-disjoint Hamilton decompositions of dense regular digraphs"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CertifyArgs ca;
  auto* certify_cmd = app.add_subcommand("certify", "robust outexpansion certificate");
  certify_cmd->add_option("graph", ca.graph, "edge-list file, '-' for stdin")->required();
  certify_cmd->add_option("--nu", ca.nu, "expansion margin (rational A/B)")->required();
  certify_cmd->add_option("--tau", ca.tau, "set-size window (rational C/D)")->required();
  certify_cmd->add_option("--mode", ca.mode, "exhaustive | sampled[:K] | degree");
  certify_cmd->add_option("--seed", ca.seed, "sampling seed");
  certify_cmd->add_option("--jobs", ca.jobs, "worker threads");
  certify_cmd->add_option("--cap", ca.cap, "exhaustive scan vertex cap");
  certify_cmd->add_option("-o,--output", ca.output, "copy records to a file");

  FactorizeArgs fa;
  auto* factorize_cmd = app.add_subcommand("factorize", "split a regular digraph into 1-factors");
  factorize_cmd->add_option("graph", fa.graph, "edge-list file, '-' for stdin")->required();
  factorize_cmd->add_option("-o,--output", fa.output, "copy records to a file");

  DecomposeArgs da;
  auto* decompose_cmd = app.add_subcommand("decompose", "Hamilton-decompose a regular digraph");
  decompose_cmd->add_option("graph", da.graph, "edge-list file, '-' for stdin")->required();
  decompose_cmd->add_flag("--certify", da.certify, "attach an expansion certificate");
  decompose_cmd->add_option("--nu", da.nu, "certificate margin")->needs("--certify");
  decompose_cmd->add_option("--tau", da.tau, "certificate window")->needs("--certify");
  decompose_cmd->add_option("--seed", da.seed, "restart seed");
  decompose_cmd->add_option("--budget", da.budget, "exchanges per restart (0: n^2)");
  decompose_cmd->add_option("--restarts", da.restarts, "switching restarts");
  decompose_cmd->add_option("--exact-cap", da.exact_cap, "exhaustive fallback vertex cap");
  decompose_cmd->add_option("--jobs", da.jobs, "parallel restart attempts");
  decompose_cmd->add_option("-o,--output", da.output, "copy records to a file");

  TillsonArgs ta;
  auto* tillson_cmd = app.add_subcommand("tillson", "decompose the complete digraph K_n");
  tillson_cmd->add_option("n", ta.n, "number of vertices (>= 3)")->required();
  tillson_cmd->add_option("--seed", ta.seed, "restart seed");
  tillson_cmd->add_option("--budget", ta.budget, "exchanges per restart (0: n^2)");
  tillson_cmd->add_option("--restarts", ta.restarts, "switching restarts");
  tillson_cmd->add_option("--jobs", ta.jobs, "parallel restart attempts");
  tillson_cmd->add_option("-o,--output", ta.output, "copy records to a file");

  AtspArgs aa;
  auto* atsp_cmd = app.add_subcommand("atsp", "tour no heavier than the all-tour average");
  atsp_cmd->add_option("weights", aa.weights, "weight matrix file, '-' for stdin")->required();
  atsp_cmd->add_option("--seed", aa.seed, "decomposition seed");
  atsp_cmd->add_flag("--brute-force", aa.brute_force,
                     "count dominated tours exhaustively (n <= 8)");
  atsp_cmd->add_option("-o,--output", aa.output, "copy records to a file");

  TournamentArgs na;
  auto* tournament_cmd =
      app.add_subcommand("tournament", "random-tournament decomposition experiment");
  tournament_cmd->add_option("--n", na.n, "tournament order")->required();
  tournament_cmd->add_option("--trials", na.trials, "number of trials")->required();
  tournament_cmd->add_option("--seed", na.seed, "experiment seed");
  tournament_cmd->add_option("--budget", na.budget, "exchanges per restart (0: n^2)");
  tournament_cmd->add_option("--restarts", na.restarts, "switching restarts per trial");
  tournament_cmd->add_option("--jobs", na.jobs, "parallel trials");
  tournament_cmd->add_option("-o,--output", na.output, "copy records to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;  // bad flags are input errors
  }

  try {
    if (*certify_cmd) return run_certify(ca);
    if (*factorize_cmd) return run_factorize(fa);
    if (*decompose_cmd) return run_decompose(da);
    if (*tillson_cmd) return run_tillson(ta);
    if (*atsp_cmd) return run_atsp(aa);
    if (*tournament_cmd) return run_tournament(na);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}
