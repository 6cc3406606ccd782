#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamdec/digraph.hpp"
#include "hamdec/rational.hpp"

namespace hamdec {

// Robust outexpansion parameters; requires 0 < nu <= tau < 1.
struct ExpanderParams {
  Rational nu, tau;
  ExpanderParams(Rational nu_, Rational tau_);
};

// Engineering defaults nu = ceil(n/20)/n, tau = 1/5; certificates carry a
// flag marking them as defaults rather than calibrated values.
ExpanderParams default_expander_params(int n);

enum class CertMode { exhaustive, sampled, degree_implied };

struct ExpansionViolation {
  std::vector<int> set;  // the witness S, sorted
  int rn_size = 0;       // |RN_nu(S)| actually observed
};

struct ExpanderCertificate {
  Rational nu, tau;
  CertMode mode = CertMode::exhaustive;
  bool pass = false;
  std::vector<ExpansionViolation> violations;  // capped at 100
  bool violations_truncated = false;
  long long subsets_checked = 0;
  uint64_t samples = 0, seed = 0;  // sampled mode
  std::string note;                // degree_implied: which inequality decided
  bool params_default = false;
};

struct CertifyOptions {
  int exhaustive_cap = 18;   // refuse exhaustive scans beyond this many vertices
  uint64_t samples = 10000;  // sampled mode
  uint64_t seed = 0;
  int jobs = 1;              // exhaustive scan partitions the subset space
};

// Vertices with at least ceil(nu*n) in-neighbours inside S (so exact ties at
// nu*n count).  S must be a set of valid vertices.
std::vector<int> robust_out_neighbourhood(const Digraph& g, const std::vector<int>& s,
                                          const Rational& nu);

// Checks |RN_nu(S)| >= |S| + nu*n for every S with tau*n <= |S| <= (1-tau)*n.
// exhaustive enumerates all such S (refused above the cap -- no silent
// downgrade to sampling); sampled draws uniform sets in the size window;
// degree_implied applies the semidegree conditions below and claims pass
// without exhibiting specific (nu, tau) expansion.
ExpanderCertificate certify(const Digraph& g, const ExpanderParams& p, CertMode mode,
                            const CertifyOptions& opt = {});

// Oriented graphs: min out + min in + min total degree >= 3n/2 + eps*n.
// Throws if g has a digon or parallel edge.
bool degree_condition_oriented(const Digraph& g, const Rational& eps);

// General digraphs: minimum semidegree >= (1/2 + eps) * n.
bool degree_condition_digraph(const Digraph& g, const Rational& eps);

// r copies per vertex; every edge becomes a complete bipartite bundle
// oriented from the tail's block to the head's block.  Vertex x maps to
// block {x*r, ..., x*r + r - 1}.
Digraph blow_up(const Digraph& g, int r);

// Parameters certified for a blow-up (r >= 3) of a (nu, tau)-expander with
// 3*nu <= tau: (nu^3, 2*tau).
ExpanderParams blow_up_params(const ExpanderParams& p);

std::string certificate_to_json(const ExpanderCertificate& c);

}  // namespace hamdec
