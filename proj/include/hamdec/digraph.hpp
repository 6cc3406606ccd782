#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hamdec {

using Edge = std::pair<int, int>;  // directed (from, to)

// Loop-free digraph on vertices 0..n-1.  Simple by default (at most one copy
// of each ordered pair); multi mode admits parallel edges.  Adjacency lists
// are kept sorted so every traversal order in the library is deterministic.
class Digraph {
 public:
  explicit Digraph(int n, bool multi = false);
  static Digraph from_edges(int n, const std::vector<Edge>& edges, bool multi = false);

  void add_edge(int u, int v);

  int n() const { return n_; }
  long long m() const { return m_; }
  bool multi() const { return multi_; }

  int out_degree(int u) const { return (int)out_[check(u)].size(); }
  int in_degree(int v) const { return (int)in_[check(v)].size(); }
  const std::vector<int>& out_neighbours(int u) const { return out_[check(u)]; }
  const std::vector<int>& in_neighbours(int v) const { return in_[check(v)]; }

  bool has_edge(int u, int v) const { return edge_multiplicity(u, v) > 0; }
  int edge_multiplicity(int u, int v) const;

  // Lexicographically sorted edge multiset.
  std::vector<Edge> edges() const;

  // Copy with the given edge multiset removed; throws if a copy is missing.
  Digraph without(const std::vector<Edge>& remove) const;

  bool same_edge_multiset(const Digraph& other) const;

 private:
  int check(int v) const;
  int n_;
  bool multi_;
  long long m_ = 0;
  std::vector<std::vector<int>> out_, in_;
};

struct DegreeEntry {
  int out = 0;
  int in = 0;
};

struct ValidationReport {
  int n = 0;
  long long m = 0;
  bool multi = false;
  std::optional<int> regular;  // r when every vertex has in = out = r
  bool oriented = false;       // no digons and no parallel edges
  bool tournament = false;     // oriented with exactly one edge per vertex pair
  std::vector<DegreeEntry> degrees;
  int min_out = 0, min_in = 0, min_total = 0;
};

ValidationReport validate(const Digraph& g);

// Minimum semidegree min(delta^+, delta^-).
int min_semidegree(const Digraph& g);

// Spanning union of disjoint directed cycles: a fixed-point-free permutation
// of the vertex set, stored as its successor map.
class OneFactor {
 public:
  explicit OneFactor(std::vector<int> succ);

  int n() const { return (int)succ_.size(); }
  int succ(int v) const { return succ_[(size_t)v]; }
  const std::vector<int>& succ_map() const { return succ_; }
  std::vector<Edge> edges() const;

  bool operator==(const OneFactor& o) const { return succ_ == o.succ_; }

 private:
  std::vector<int> succ_;
};

struct CycleStructure {
  // Canonical form: each cycle rotated to start at its smallest vertex,
  // cycles sorted by that starting vertex.
  std::vector<std::vector<int>> cycles;
  int count() const { return (int)cycles.size(); }
};

CycleStructure cycle_structure(const OneFactor& f);
int cycle_count(const OneFactor& f);
bool is_hamilton_cycle(const OneFactor& f);

struct Factorization {
  Digraph host;
  std::vector<OneFactor> factors;
};

// Checks factors are valid one-factors whose edge multisets partition the
// host's edges.  Returns an empty string on success, else a diagnostic.
std::string check_factorization(const Factorization& f);

struct HamiltonDecomposition {
  // Each cycle as a cyclic vertex sequence (canonical rotation: starts at 0).
  std::vector<std::vector<int>> cycles;
};

std::vector<int> factor_to_cycle(const OneFactor& f);  // requires single cycle

struct VerifyReport {
  bool ok = false;
  std::string reason;                // first violated condition
  std::optional<int> member;         // offending cycle index
  std::optional<Edge> witness;       // offending edge
};

// Accepts iff every member is a Hamilton cycle of g's vertex set, members are
// pairwise edge-disjoint, and their union is exactly g's edge multiset.
VerifyReport verify_hamilton_decomposition(const Digraph& g, const HamiltonDecomposition& d);

// --- edge-list text format ---------------------------------------------
// Header "n m" (token "multi" appended for multigraphs), then one "u v" line
// per edge.  '#' starts a comment anywhere; blank lines are ignored.
Digraph parse_digraph(const std::string& text);
Digraph read_digraph_file(const std::string& path);
// Canonical form: header, then the edge multiset in lexicographic order.
std::string serialize_digraph(const Digraph& g);

}  // namespace hamdec
