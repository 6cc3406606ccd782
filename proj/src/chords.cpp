#include "hamdec/chords.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hamdec/matching_flow.hpp"
#include "json.hpp"

namespace hamdec {

CycleOrder::CycleOrder(const Digraph& r, std::vector<int> order) : order_(std::move(order)) {
  int n = r.n();
  if ((int)order_.size() != n)
    throw std::invalid_argument("cycle order must list every vertex exactly once");
  if (n < 2) throw std::invalid_argument("cycle order needs at least two vertices");
  pos_.assign((size_t)n, -1);
  for (int i = 0; i < n; ++i) {
    int v = order_[(size_t)i];
    if (v < 0 || v >= n || pos_[(size_t)v] >= 0)
      throw std::invalid_argument("cycle order is not a permutation of the vertices");
    pos_[(size_t)v] = i;
  }
  for (int i = 0; i < n; ++i) {
    int u = order_[(size_t)i], v = order_[(size_t)((i + 1) % n)];
    if (!r.has_edge(u, v))
      throw std::invalid_argument("cycle order uses missing edge " + std::to_string(u) + "->" +
                                  std::to_string(v));
  }
}

CycleOrder CycleOrder::natural(const Digraph& r) {
  std::vector<int> order((size_t)r.n());
  for (int i = 0; i < r.n(); ++i) order[(size_t)i] = i;
  return CycleOrder(r, std::move(order));
}

namespace {

// Core search, shared by chord_sequence and universal_walk.  Grows the set of
// clusters reachable by shifted walks whose interiors stay eligible, one
// C-traversal per round; terminates at the first round where dst has an
// in-neighbour b0 with succ(b0) already reached (the walk then rides C to b0
// and jumps to dst).  Breadth-layered, so the result is shortest possible.
ChordSearchResult chord_search(const Digraph& r, const CycleOrder& c, int src, int dst,
                               const std::vector<int>& forbidden) {
  int n = r.n();
  ChordSearchResult result;
  ChordSequence cs;
  cs.src = src;
  cs.dst = dst;
  if (src == dst) {
    result.sequence = std::move(cs);
    return result;
  }

  std::vector<char> bad((size_t)n, 0);
  for (int v : forbidden) {
    if (v < 0 || v >= n) throw std::invalid_argument("forbidden vertex out of range");
    bad[(size_t)v] = 1;
  }
  // A cluster is eligible as an intermediate only if neither it nor its
  // C-predecessor is forbidden: the walk through V also passes pred(V).
  std::vector<char> eligible((size_t)n, 0);
  for (int v = 0; v < n; ++v) eligible[(size_t)v] = !bad[(size_t)v] && !bad[(size_t)c.pred(v)];

  int a_pred = c.pred(src);

  // Shortcut: one chord pred(src) -> dst, empty interior.  (It cannot be a
  // C-edge: succ(pred(src)) = src != dst.)
  if (r.has_edge(a_pred, dst)) {
    cs.edges.emplace_back(a_pred, dst);
    result.sequence = std::move(cs);
    return result;
  }

  // First chord: lowest-index eligible out-neighbour of pred(src).  The edge
  // to src itself is the C-edge, never a chord.
  int a0 = -1;
  for (int x : r.out_neighbours(a_pred)) {
    if (x != src && x != dst && eligible[(size_t)x]) {
      a0 = x;
      break;
    }
  }
  if (a0 < 0) return result;  // not even a first hop: empty stalled frontier

  std::vector<int> parent((size_t)n, -1);
  std::vector<char> in_s((size_t)n, 0);
  in_s[(size_t)a0] = 1;
  std::vector<int> frontier{a0};

  auto reconstruct = [&](int terminal, int b0) {
    std::vector<int> chain{terminal};
    while (chain.back() != a0) chain.push_back(parent[(size_t)chain.back()]);
    std::reverse(chain.begin(), chain.end());
    cs.edges.emplace_back(a_pred, chain.front());
    for (size_t j = 1; j < chain.size(); ++j)
      cs.edges.emplace_back(c.pred(chain[j - 1]), chain[j]);
    cs.edges.emplace_back(b0, dst);
    for (int v : chain) {
      cs.interior.push_back(v);
      cs.interior.push_back(c.pred(v));
    }
    result.sequence = std::move(cs);
  };

  while (true) {
    // Termination: some in-neighbour b0 of dst whose C-successor was reached.
    for (int b0 : r.in_neighbours(dst)) {
      if (in_s[(size_t)c.succ(b0)]) {
        reconstruct(c.succ(b0), b0);
        return result;
      }
    }
    std::vector<int> next;
    for (int w : frontier) {
      int from = c.pred(w);
      for (int x : r.out_neighbours(from)) {
        if (in_s[(size_t)x] || x == dst || !eligible[(size_t)x]) continue;
        in_s[(size_t)x] = 1;
        parent[(size_t)x] = w;
        next.push_back(x);
      }
    }
    if (next.empty()) {
      for (int v = 0; v < n; ++v)
        if (in_s[(size_t)v]) result.stalled_frontier.push_back(v);
      return result;
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
}

}  // namespace

ChordSearchResult chord_sequence(const Digraph& r, const CycleOrder& c, int src, int dst,
                                 const std::vector<int>& forbidden, const Rational& nu) {
  if (nu <= Rational(0) || nu >= Rational(1))
    throw std::invalid_argument("nu must lie strictly between 0 and 1");
  if (src < 0 || src >= r.n() || dst < 0 || dst >= r.n())
    throw std::invalid_argument("walk endpoint out of range");
  auto result = chord_search(r, c, src, dst, forbidden);
  if (result.sequence) {
    // |forbidden| <= nu*n/4 is the hypothesis under which short sequences are
    // guaranteed; exceeding it is reported, not refused.
    result.sequence->forbidden_budget_exceeded =
        Rational(4) * Rational((long long)forbidden.size()) > nu * Rational(r.n());
    std::string why;
    if (!verify_chain_law(c, *result.sequence, &why))
      throw std::logic_error("chord search produced an invalid sequence: " + why);
  }
  return result;
}

bool verify_chain_law(const CycleOrder& c, const ChordSequence& cs, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (cs.src == cs.dst) {
    if (!cs.edges.empty()) return fail("trivial walk with chord edges");
    return true;
  }
  if (cs.edges.empty()) return fail("nontrivial walk without chord edges");
  if (cs.edges.front().first != c.pred(cs.src))
    return fail("first chord does not leave pred(src)");
  if (cs.edges.back().second != cs.dst) return fail("last chord does not enter dst");
  for (size_t i = 0; i < cs.edges.size(); ++i) {
    auto [u, v] = cs.edges[i];
    if (c.succ(u) == v) return fail("chord is a cycle edge");
    if (i + 1 < cs.edges.size() && cs.edges[i + 1].first != c.pred(v))
      return fail("consecutive chords break the chain law");
  }
  return true;
}

ShiftedWalk shifted_walk(const CycleOrder& c, const ChordSequence& cs) {
  ShiftedWalk w;
  w.vertices.push_back(cs.src);
  int cur = cs.src;
  for (size_t i = 0; i < cs.edges.size(); ++i) {
    auto [x, y] = cs.edges[i];
    while (cur != x) {  // ride C from cur around to pred of the jump-off point
      int nxt = c.succ(cur);
      w.edges.push_back({{cur, nxt}, false, -1});
      w.vertices.push_back(nxt);
      cur = nxt;
    }
    w.edges.push_back({{x, y}, true, -1});
    w.vertices.push_back(y);
    cur = y;
  }
  if (cur != cs.dst) throw std::logic_error("shifted walk did not end at dst");
  return w;
}

bool verify_local_balance(const CycleOrder& c, const std::vector<Edge>& edges) {
  int n = c.k();
  std::vector<long long> out((size_t)n, 0), in((size_t)n, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) return false;
    ++out[(size_t)u];
    ++in[(size_t)v];
  }
  for (int u = 0; u < n; ++u)
    if (out[(size_t)u] != in[(size_t)c.succ(u)]) return false;
  return true;
}

UniversalWalkResult universal_walk(const Digraph& r, const CycleOrder& c, int ell) {
  UniversalWalkResult res;
  if (ell < 4) throw std::invalid_argument("walk parameter must be at least 4");
  int k = c.k();
  if (k < 3) throw std::invalid_argument("universal walk needs a cycle on at least 3 vertices");

  // Greedy chord sequences V_j -> V_j+1, each avoiding clusters already
  // visited 2*ell/3 times by chosen chord endpoints.
  std::vector<ChordSequence> ecs;
  std::vector<int> visits((size_t)r.n(), 0);
  for (int j = 0; j < k; ++j) {
    std::vector<int> full;
    for (int v = 0; v < r.n(); ++v)
      if (3 * visits[(size_t)v] >= 2 * ell) full.push_back(v);
    auto found = chord_search(r, c, c.at(j), c.at((j + 1) % k), full);
    if (!found.sequence) {
      res.failure = "chord sequence " + std::to_string(j) + " stalled";
      return res;
    }
    if (4 * (long long)found.sequence->edges.size() * (long long)found.sequence->edges.size() >
        (long long)ell) {
      res.failure = "chord sequence " + std::to_string(j) + " longer than sqrt(ell)/2";
      return res;
    }
    for (auto [u, v] : found.sequence->edges) {
      ++visits[(size_t)u];
      ++visits[(size_t)v];
    }
    ecs.push_back(std::move(*found.sequence));
  }

  std::vector<int> n_in((size_t)r.n(), 0), n_out((size_t)r.n(), 0);
  for (const auto& s : ecs)
    for (auto [u, v] : s.edges) {
      ++n_out[(size_t)u];
      ++n_in[(size_t)v];
    }
  // Chain law across consecutive sequences pairs every chord into W with a
  // chord out of pred(W), cyclically; so out-chords at V equal in-chords at
  // succ(V).  A failure here is a bug, not an input condition.
  for (int v = 0; v < r.n(); ++v)
    if (n_out[(size_t)v] != n_in[(size_t)c.succ(v)])
      throw std::logic_error("chord tallies break the traversal pairing");

  // Pad with copies of C-edges so that adding one full copy of C makes every
  // degree exactly ell.
  Digraph skeleton(r.n(), true);
  std::vector<int> ecs_padding((size_t)r.n(), 0);
  for (int v = 0; v < r.n(); ++v) {
    int pad = ell - 1 - n_in[(size_t)v];
    if (pad < 0) {
      res.failure = "cluster " + std::to_string(v) + " is entered more than ell-1 times";
      return res;
    }
    ecs_padding[(size_t)v] = pad;
  }
  for (const auto& s : ecs)
    for (auto [u, v] : s.edges) skeleton.add_edge(u, v);
  for (int v = 0; v < r.n(); ++v)
    for (int i = 0; i < ecs_padding[(size_t)v]; ++i) skeleton.add_edge(c.pred(v), v);

  auto rep = validate(skeleton);
  if (!rep.regular || *rep.regular != ell - 1)
    throw std::logic_error("padded chord multigraph is not (ell-1)-regular");

  // Order the multiset into one closed walk: split the padded multigraph into
  // one-factors, then stitch: at each cycle vertex in order, traverse the
  // not-yet-used factor cycles through it, then take the C-edge onward.
  auto fz = one_factorization(skeleton);
  std::vector<WalkEdge> walk;
  std::vector<std::vector<int>> cycle_id;  // per factor: vertex -> cycle index
  std::vector<std::vector<char>> used;     // per factor: cycle index -> traversed
  for (const auto& f : fz.factors) {
    auto cyc = cycle_structure(f);
    std::vector<int> id((size_t)r.n(), -1);
    for (size_t ci = 0; ci < cyc.cycles.size(); ++ci)
      for (int v : cyc.cycles[ci]) id[(size_t)v] = (int)ci;
    cycle_id.push_back(std::move(id));
    used.emplace_back(cyc.cycles.size(), 0);
  }
  for (int i = 0; i < k; ++i) {
    int x = c.at(i);
    for (size_t f = 0; f < fz.factors.size(); ++f) {
      int ci = cycle_id[f][(size_t)x];
      if (used[f][(size_t)ci]) continue;
      used[f][(size_t)ci] = 1;
      int w = x;
      do {
        int nxt = fz.factors[f].succ(w);
        walk.push_back({{w, nxt}, false, -1});
        w = nxt;
      } while (w != x);
    }
    walk.push_back({{x, c.at((i + 1) % k)}, false, -1});  // spine copy of C
  }

  // Tag chord occurrences: each ECS edge claims the first untagged occurrence
  // of its pair.  (Chords are never C-edges, so spine/padding copies are
  // never claimed.)
  std::map<Edge, std::vector<int>> pending;
  for (size_t j = 0; j < ecs.size(); ++j)
    for (auto e : ecs[j].edges) pending[e].push_back((int)j);
  for (auto& we : walk) {
    auto it = pending.find(we.e);
    if (it != pending.end() && !it->second.empty()) {
      we.chord = true;
      we.ecs = it->second.front();
      it->second.erase(it->second.begin());
    }
  }

  UniversalWalk u;
  u.ell = ell;
  u.edges = std::move(walk);
  u.ecs = std::move(ecs);
  std::string why;
  if (!verify_universal_walk(r, c, u, &why))
    throw std::logic_error("universal walk failed verification: " + why);
  res.walk = std::move(u);
  return res;
}

bool verify_universal_walk(const Digraph& r, const CycleOrder& c, const UniversalWalk& u,
                           std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  int n = r.n();
  if (u.edges.empty()) return fail("empty walk");
  if ((int)u.ecs.size() != c.k()) return fail("wrong number of chord sequences");

  // closed walk
  for (size_t i = 0; i < u.edges.size(); ++i) {
    auto [a, b] = u.edges[i].e;
    if (a < 0 || a >= n || b < 0 || b >= n) return fail("edge endpoint out of range");
    if (!r.has_edge(a, b)) return fail("walk edge not in the host digraph");
    if (u.edges[(i + 1) % u.edges.size()].e.first != b) return fail("walk is not connected");
  }

  // (U3): every vertex entered and left exactly ell times
  std::vector<int> in((size_t)n, 0), out((size_t)n, 0);
  for (const auto& we : u.edges) {
    ++out[(size_t)we.e.first];
    ++in[(size_t)we.e.second];
  }
  for (int v = 0; v < n; ++v)
    if (in[(size_t)v] != u.ell || out[(size_t)v] != u.ell)
      return fail("vertex " + std::to_string(v) + " not visited exactly ell times");

  // (U2) and per-sequence validity
  for (int j = 0; j < (int)u.ecs.size(); ++j) {
    const auto& s = u.ecs[(size_t)j];
    if (s.src != c.at(j) || s.dst != c.at((j + 1) % c.k()))
      return fail("chord sequence endpoints disagree with the cycle order");
    std::string law;
    if (!verify_chain_law(c, s, &law)) return fail("chord sequence " + std::to_string(j) + ": " + law);
    if (4 * (long long)s.edges.size() * (long long)s.edges.size() > (long long)u.ell)
      return fail("chord sequence " + std::to_string(j) + " violates the length bound");
  }

  // (U1): tagged edges match the chord sequences exactly; the rest lie on C
  std::map<std::pair<int, Edge>, int> want, have;
  for (int j = 0; j < (int)u.ecs.size(); ++j)
    for (auto e : u.ecs[(size_t)j].edges) ++want[{j, e}];
  for (const auto& we : u.edges) {
    if (we.chord) {
      if (we.ecs < 0 || we.ecs >= (int)u.ecs.size()) return fail("chord with bad sequence tag");
      ++have[{we.ecs, we.e}];
    } else {
      if (c.succ(we.e.first) != we.e.second) return fail("untagged walk edge off the cycle");
    }
  }
  if (want != have) return fail("chord multiset does not match the chord sequences");
  return true;
}

int default_walk_parameter(const Rational& nu) {
  if (nu <= Rational(0) || nu >= Rational(1))
    throw std::invalid_argument("nu must lie strictly between 0 and 1");
  Rational v = Rational(36) / (nu * nu);
  long long c = v.ceil();
  return (int)std::max(4ll, c);
}

std::string chord_sequence_to_json(const ChordSequence& cs) {
  nlohmann::ordered_json j;
  j["src"] = cs.src;
  j["dst"] = cs.dst;
  auto edges = nlohmann::ordered_json::array();
  for (auto [u, v] : cs.edges) edges.push_back({u, v});
  j["edges"] = edges;
  j["interior"] = cs.interior;
  if (cs.forbidden_budget_exceeded) j["forbidden_budget_exceeded"] = true;
  return j.dump();
}

std::string universal_walk_to_json(const UniversalWalk& u) {
  nlohmann::ordered_json j;
  j["ell"] = u.ell;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& we : u.edges) {
    nlohmann::ordered_json e;
    e["from"] = we.e.first;
    e["to"] = we.e.second;
    e["role"] = we.chord ? "chord" : "cyclic";
    if (we.chord) e["ecs"] = we.ecs;
    edges.push_back(e);
  }
  j["edges"] = edges;
  return j.dump();
}

}  // namespace hamdec
