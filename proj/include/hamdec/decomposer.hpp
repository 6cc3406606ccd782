#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamdec/digraph.hpp"
#include "hamdec/expander.hpp"
#include "hamdec/rational.hpp"
#include "hamdec/switching.hpp"

namespace hamdec {

struct DecomposeConfig {
  bool certify = false;                       // attach an expansion certificate
  std::optional<ExpanderParams> cert_params;  // defaults to default_expander_params(n)
  uint64_t seed = 0;
  int restarts = 64;              // independent switching attempts
  long long switch_budget = 0;    // exchanges per attempt (0: n^2)
  int exact_cap = 10;             // exhaustive fallback bound
  int jobs = 1;                   // restart attempts evaluated in parallel
};

enum class Verdict { success, failure, proved_impossible };

struct DecompositionStats {
  int restarts_used = 0;
  long long switches = 0;
  bool exact_fallback = false;
  double runtime_ms = 0;  // informational; excluded from canonical output
};

struct DecompositionReport {
  Verdict verdict = Verdict::failure;
  std::optional<HamiltonDecomposition> decomposition;
  std::optional<ExpanderCertificate> certificate;
  DecompositionStats stats;
  std::string detail;
};

// Full pipeline on a regular digraph: optional certification, splitting into
// one-factors, switching the factors into Hamilton cycles across seeded
// restarts, exhaustive fallback for at most exact_cap vertices.  Every
// decomposition is re-verified before the report claims success.  Non-regular
// input is rejected (the exception message carries the degree table).
DecompositionReport decompose(const Digraph& g, const DecomposeConfig& cfg = {});

struct ExactResult {
  std::optional<HamiltonDecomposition> decomposition;
  bool proved_none = false;  // exhaustive search completed empty
  long long nodes = 0;
};

// Exhaustive backtracking over edge-disjoint Hamilton cycles.  Branches on
// the cycle covering the smallest unused out-edge of vertex 0, which kills
// the ordering symmetry.  Refused above the cap.
ExactResult exact_decompose(const Digraph& g, int cap = 10);

// Hamilton decomposition of the complete digraph: proved impossible for
// n = 4 and 6 (by the exhaustive oracle), constructed otherwise.  n >= 3.
DecompositionReport tillson_decompose(int n, const DecomposeConfig& cfg = {});

struct WeightMatrix {
  int n = 0;
  std::vector<Rational> w;  // row-major, diagonal unused
  const Rational& at(int i, int j) const { return w[(size_t)i * (size_t)n + (size_t)j]; }
  Rational& at(int i, int j) { return w[(size_t)i * (size_t)n + (size_t)j]; }
};

// Matrix file: n, then an n-by-n table with '-' on the diagonal.
WeightMatrix parse_weight_matrix(const std::string& text);
std::string serialize_weight_matrix(const WeightMatrix& w);

struct AtspResult {
  std::vector<int> tour;  // cyclic order starting at 0
  Rational weight;
  Rational mean;           // total weight / (n-1) = average over all tours
  bool bound_ok = false;   // weight <= mean, checked in exact arithmetic
  bool fallback = false;   // n in {4, 6}: best-of-all-tours instead
  std::optional<long long> domination_count;  // tours no lighter (n <= 8)
  std::optional<Rational> domination_fraction;
};

// Tour whose weight is at most the average over all (n-1)! tours: decompose
// the complete digraph into n-1 Hamilton cycles and keep the lightest.
AtspResult atsp_domination_tour(const WeightMatrix& w, uint64_t seed = 0,
                                bool brute_force_domination = false);

struct TournamentTrial {
  int trial = 0;
  int delta0 = 0;      // minimum semidegree of the drawn tournament
  bool extracted = false;
  bool decomposed = false;  // delta0 edge-disjoint Hamilton cycles verified
  int restarts_used = 0;
};

// Per trial: draw a random tournament, pull out a delta0-regular spanning
// subdigraph by flow, decompose it, and re-verify the cycles inside the
// original tournament.  Stubborn draws re-extract from relabeled copies and
// finally peel cycles off the tournament directly; an infeasible flow proves
// no valid subdigraph exists.  Failures are recorded, not raised.  Trials are
// numbered first_trial..first_trial+trials-1 and depend only on (n, seed,
// index), so ranges can be evaluated piecemeal or in parallel.
std::vector<TournamentTrial> tournament_experiment(int n, int trials, uint64_t seed,
                                                   const DecomposeConfig& base = {}, int jobs = 1,
                                                   int first_trial = 0);

std::string report_to_json(const DecompositionReport& r);

}  // namespace hamdec
