#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamdec/digraph.hpp"

namespace hamdec {

// A four-cycle exchange between two edge-disjoint one-factors F and F'.
// F holds x->x_succ and y->y_succ; F' holds x->y_succ and y->x_succ.  The
// exchange swaps those pairs, merging or splitting cycles on both sides.
struct SwitchC4 {
  int x = 0, x_succ = 0, y = 0, y_succ = 0;
};

enum class SwitchWant { merge, split, any };  // effect on the first factor's cycles

// Deterministic lexicographic scan over pairs (x, y), x < y.
std::optional<SwitchC4> find_c4_switch(const OneFactor& f, const OneFactor& fp, SwitchWant want);

struct C4Effect {
  int delta_f = 0;   // cycle-count change of the first factor (+1 or -1)
  int delta_fp = 0;  // and of the second
};

// Applies the exchange in place; throws if the listed edges are stale.
// Applying the same switch twice restores both factors.
C4Effect apply_c4_exchange(OneFactor& f, OneFactor& fp, const SwitchC4& s);

// A three-factor exchange across an oriented K_{2,3}: sources x and y, target
// class z.  Factor i holds x->a[i] and y->b[i]; the exchange replaces them
// with x->b[i] and y->a[i].  {a} and {b} are both permutations of z with
// a[i] != b[i], so the union of the three factors is unchanged while the
// total cycle count changes by an odd amount.
struct SwitchK23 {
  int x = 0, y = 0;
  std::array<int, 3> z{};
  std::array<int, 3> a{};
  std::array<int, 3> b{};
};

// require_all_merge demands that in every factor the two removed edges lie on
// different cycles (each factor's count then drops by one).
std::optional<SwitchK23> find_k23_switch(const OneFactor& f0, const OneFactor& f1,
                                         const OneFactor& f2, bool require_all_merge);

// Per-factor cycle-count deltas; their sum is odd.
std::array<int, 3> apply_k23_exchange(OneFactor& f0, OneFactor& f1, OneFactor& f2,
                                      const SwitchK23& s);

struct HamiltonSearch {
  enum class Outcome { found, not_found, none_exists };
  Outcome outcome = Outcome::not_found;
  std::optional<OneFactor> cycle;
  long long nodes = 0;  // search effort actually spent
};

// Exact backtracking up to 12 vertices (can prove none_exists); above that a
// seeded degree-guided search with restarts that reports not_found when the
// node budget runs out.  budget 0 picks a size-based default.
HamiltonSearch find_hamilton(const Digraph& g, long long budget = 0, uint64_t seed = 0);

// Rewires F so that every vertex of u1 and u2 lies on one cycle, using only
// replacement edges from pool (all directed u1 -> u2).  Precondition: the
// F-edges leaving u1 form a perfect matching onto u2.  For each u in u2 let
// f(u) be the first u1-vertex reached from u along F; an auxiliary digraph on
// u2 with arcs u -> v whenever pool has f(u) -> v turns valid rewirings into
// its Hamilton cycles.  Vertices sharing an F-cycle still share one after.
struct MergeResult {
  std::optional<OneFactor> factor;
  long long search_nodes = 0;
};
MergeResult merge_cycles_via_auxiliary(const OneFactor& f, const std::vector<int>& u1,
                                       const std::vector<int>& u2, const std::vector<Edge>& pool,
                                       long long budget = 0);

struct SwitchLogEntry {
  enum class Kind { c4, k23 };
  Kind kind = Kind::c4;
  std::array<int, 3> factors{-1, -1, -1};  // touched factor indices (third unused for c4)
  SwitchC4 c4;
  SwitchK23 k23;
  std::array<int, 3> counts_before{0, 0, 0};
  std::array<int, 3> counts_after{0, 0, 0};
};

struct SwitchLog {
  std::vector<SwitchLogEntry> entries;
};

// Re-applies a log to a fresh copy of the starting factorization, checking
// the recorded cycle counts along the way; throws on any mismatch.
std::vector<OneFactor> replay_switch_log(const std::vector<OneFactor>& start, const SwitchLog& log);

std::string switch_log_to_json_lines(const SwitchLog& log);

struct StuckReport {
  std::vector<int> cycle_counts;
  int total = 0;
  int target = 0;
  bool parity_mismatch = false;
  long long steps_used = 0;
};

struct ReduceResult {
  std::optional<std::vector<OneFactor>> factors;  // all Hamilton cycles on success
  SwitchLog log;
  std::optional<StuckReport> stuck;
  long long steps = 0;
  bool success() const { return factors.has_value(); }
};

// Greedy switching engine: repeatedly applies four-cycle exchanges that lower
// the total cycle count, tolerates count-preserving ones that leave the
// partner a bicycle at worst, and repairs a cycle-count parity mismatch with
// a K_{2,3} exchange.  budget caps applied exchanges (0: max(64, 4n^2)).
ReduceResult reduce_to_hamilton(const Factorization& f, long long budget, uint64_t seed);

}  // namespace hamdec
