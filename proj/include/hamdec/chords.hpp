#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hamdec/digraph.hpp"
#include "hamdec/rational.hpp"

namespace hamdec {

// A Hamilton cycle C of a digraph R, fixed as an explicit cyclic order with
// constant-time successor/predecessor lookups.  Every edge of the order must
// exist in R.
class CycleOrder {
 public:
  CycleOrder(const Digraph& r, std::vector<int> order);
  static CycleOrder natural(const Digraph& r);  // 0, 1, ..., n-1

  int k() const { return (int)order_.size(); }
  int at(int i) const { return order_[(size_t)i]; }
  int pos(int v) const { return pos_[(size_t)v]; }
  int succ(int v) const { return order_[(pos_[(size_t)v] + 1) % order_.size()]; }
  int pred(int v) const { return order_[(pos_[(size_t)v] + order_.size() - 1) % order_.size()]; }
  bool is_cycle_edge(int u, int v) const { return succ(u) == v; }
  const std::vector<int>& order() const { return order_; }

 private:
  std::vector<int> order_, pos_;
};

// The chord edges of a shifted walk from src to dst: a walk that repeatedly
// rides C from its current vertex around to that vertex's predecessor, then
// jumps along a non-C edge of R.  Consecutive chords obey the chain law (a
// chord into W is followed by a chord out of W's predecessor); the first
// chord leaves pred(src) and the last enters dst.  interior lists the
// intermediate clusters and their predecessors, with multiplicity.
struct ChordSequence {
  int src = 0, dst = 0;
  std::vector<Edge> edges;
  std::vector<int> interior;
  bool forbidden_budget_exceeded = false;  // |forbidden| > nu*n/4 hypothesis warning
};

struct ChordSearchResult {
  std::optional<ChordSequence> sequence;
  std::vector<int> stalled_frontier;  // reachable set when the search stalls
  bool found() const { return sequence.has_value(); }
};

// Deterministic shortest-first search: grows the set of clusters reachable by
// shifted walks whose interiors avoid `forbidden`, one C-traversal per round,
// until dst (or a C-successor of one of dst's in-neighbours) is reached.
// src == dst yields the empty sequence.  On certified (nu, tau)-expanders
// with small forbidden sets the result has at most ceil(3/nu) edges.
ChordSearchResult chord_sequence(const Digraph& r, const CycleOrder& c, int src, int dst,
                                 const std::vector<int>& forbidden, const Rational& nu);

// Structural scan of the chain law described above; also rejects C-edges.
bool verify_chain_law(const CycleOrder& c, const ChordSequence& cs, std::string* why = nullptr);

struct WalkEdge {
  Edge e;
  bool chord = false;
  int ecs = -1;  // which elementary chord sequence a chord belongs to
};

struct ShiftedWalk {
  std::vector<int> vertices;    // src ... dst
  std::vector<WalkEdge> edges;  // vertices.size() - 1 of them
};

// Expands a chord sequence into the full walk.  Keeping only the chord-tagged
// edges recovers the sequence exactly.
ShiftedWalk shifted_walk(const CycleOrder& c, const ChordSequence& cs);

// For every C-edge U -> W, the number of multiset edges leaving U equals the
// number entering W.  A successful chord_sequence(A, B) becomes balanced once
// the closing edge pred(B) -> A is added.
bool verify_local_balance(const CycleOrder& c, const std::vector<Edge>& edges);

// A closed walk U on R that traverses, for each cycle vertex, an elementary
// chord sequence ECS(V_j, V_j+1) plus padding copies of C-edges, entering and
// leaving every vertex exactly ell times.  Properties verified on
// construction: (U1) the edge multiset is exactly the chosen chord sequences
// plus C-edges; (U2) each chord sequence has at most sqrt(ell)/2 edges;
// (U3) every vertex is entered and left exactly ell times.
struct UniversalWalk {
  int ell = 0;
  std::vector<WalkEdge> edges;       // in closed-walk order
  std::vector<ChordSequence> ecs;    // ecs[j] joins order[j] to order[j+1]
};

struct UniversalWalkResult {
  std::optional<UniversalWalk> walk;
  std::string failure;
  bool found() const { return walk.has_value(); }
};

// Greedy construction: each ECS avoids clusters already visited 2*ell/3 times
// by earlier chord edges; the padded edge multiset is ordered into one closed
// walk by splitting it into one-factors and stitching their cycles together
// along C.  Requires ell >= 4.  The result is verified before it is returned.
UniversalWalkResult universal_walk(const Digraph& r, const CycleOrder& c, int ell);

bool verify_universal_walk(const Digraph& r, const CycleOrder& c, const UniversalWalk& u,
                           std::string* why = nullptr);

// Walk parameter matching the chord-length guarantee: ceil(36 / nu^2).
int default_walk_parameter(const Rational& nu);

std::string chord_sequence_to_json(const ChordSequence& cs);
std::string universal_walk_to_json(const UniversalWalk& u);

}  // namespace hamdec
