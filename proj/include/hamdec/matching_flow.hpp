#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hamdec/digraph.hpp"
#include "hamdec/switching.hpp"

namespace hamdec {

struct BipartiteGraph {
  int left = 0, right = 0;
  std::vector<std::vector<int>> adj;  // adj[l] = sorted right-neighbours
};

// Hopcroft-Karp.  Returns match_of_left (-1 for exposed vertices).  Ties are
// broken by scanning vertices and adjacency in index order, so the result is
// deterministic.
std::vector<int> max_bipartite_matching(const BipartiteGraph& b);

// Splits an r-regular (multi)digraph into r one-factors: repeatedly takes a
// perfect matching of the bipartite graph with an a-b edge per directed edge
// a->b, deleting matched copies between rounds.  Throws on non-regular input.
Factorization one_factorization(const Digraph& g);

struct DegreePrescription {
  std::vector<int> out_target, in_target;
};

// Text table with one "v out in" line per vertex (missing vertices get 0).
DegreePrescription parse_degree_prescription(const std::string& text, int n);

// Source-side of a saturated s-t cut in the prescription flow network,
// written in terms of the original digraph: a_side holds vertices whose
// out-copy is on the source side, b_side those whose in-copy is.
struct CutWitness {
  std::vector<int> a_side, b_side;
  long long capacity = 0;
};

// Recomputes the capacity of the witness cut from scratch.
long long cut_capacity(const Digraph& g, const DegreePrescription& p, const CutWitness& w);

struct SubdigraphResult {
  std::optional<Digraph> subgraph;
  std::optional<CutWitness> cut;  // set when infeasible
  bool feasible() const { return subgraph.has_value(); }
};

// Spanning subdigraph with prescribed out/in-degrees via integral max-flow;
// when none exists the saturated cut certifies it.  Unbalanced prescriptions
// (sum out != sum in) are rejected before solving.
SubdigraphResult degree_prescribed_subdigraph(const Digraph& g, const DegreePrescription& p);

// Uniform prescription out = in = r.  r exceeding the minimum semidegree is
// refused immediately with an explicit single-vertex cut.
SubdigraphResult regular_spanning_subdigraph(const Digraph& g, int r);

// Hamilton cycle of g through every edge of m.  m must be a set of
// vertex-disjoint directed paths within g (checked; directed cycles are
// rejected).  Each path a->...->b is contracted to one vertex inheriting a's
// in-neighbours and b's out-neighbours; a Hamilton cycle of the contraction
// lifts to one of g.
HamiltonSearch hamilton_through_matching(const Digraph& g, const std::vector<Edge>& m,
                                         long long budget = 0, uint64_t seed = 0);

struct CoverReport {
  std::vector<std::vector<Edge>> matchings;  // greedy edge-colour classes of g[v0]
  std::vector<OneFactor> cycles;             // cycles[i] covers matchings[i]
  bool complete = true;
  int failed_matching = -1;  // index of the first matching left uncovered
};

// Covers every edge inside v0 by edge-disjoint Hamilton cycles of g: the
// induced edges are split into matchings greedily, then each matching is
// threaded through a Hamilton cycle of g minus the cycles already used.
CoverReport cover_exceptional_edges(const Digraph& g, const std::vector<int>& v0,
                                    long long budget = 0, uint64_t seed = 0);

}  // namespace hamdec
