#include "hamdec/matching_flow.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "hamdec/rng.hpp"

namespace hamdec {

std::vector<int> max_bipartite_matching(const BipartiteGraph& b) {
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> match_l((size_t)b.left, -1), match_r((size_t)b.right, -1);
  std::vector<int> dist((size_t)b.left, 0);

  auto bfs = [&]() -> bool {
    std::queue<int> q;
    bool reachable_free = false;
    for (int l = 0; l < b.left; ++l) {
      if (match_l[(size_t)l] < 0) {
        dist[(size_t)l] = 0;
        q.push(l);
      } else {
        dist[(size_t)l] = inf;
      }
    }
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : b.adj[(size_t)l]) {
        int l2 = match_r[(size_t)r];
        if (l2 < 0) {
          reachable_free = true;
        } else if (dist[(size_t)l2] == inf) {
          dist[(size_t)l2] = dist[(size_t)l] + 1;
          q.push(l2);
        }
      }
    }
    return reachable_free;
  };

  std::function<bool(int)> dfs = [&](int l) -> bool {
    for (int r : b.adj[(size_t)l]) {
      int l2 = match_r[(size_t)r];
      if (l2 < 0 || (dist[(size_t)l2] == dist[(size_t)l] + 1 && dfs(l2))) {
        match_l[(size_t)l] = r;
        match_r[(size_t)r] = l;
        return true;
      }
    }
    dist[(size_t)l] = inf;
    return false;
  };

  while (bfs())
    for (int l = 0; l < b.left; ++l)
      if (match_l[(size_t)l] < 0) dfs(l);
  return match_l;
}

Factorization one_factorization(const Digraph& g) {
  auto rep = validate(g);
  if (!rep.regular) {
    std::ostringstream msg;
    msg << "one-factorization needs a regular digraph; degrees (out,in):";
    for (int v = 0; v < g.n(); ++v)
      msg << " " << v << ":(" << rep.degrees[(size_t)v].out << "," << rep.degrees[(size_t)v].in
          << ")";
    throw std::invalid_argument(msg.str());
  }
  int r = *rep.regular;
  int n = g.n();

  // Bipartite multigraph: left = tails, right = heads, one edge per copy.
  std::vector<std::vector<int>> remaining((size_t)n);  // remaining[u] = multiset of heads
  for (int u = 0; u < n; ++u) remaining[(size_t)u] = g.out_neighbours(u);

  Factorization fz{g, {}};
  for (int round = 0; round < r; ++round) {
    BipartiteGraph b;
    b.left = b.right = n;
    b.adj.assign((size_t)n, {});
    for (int u = 0; u < n; ++u) {
      auto& a = b.adj[(size_t)u];
      a = remaining[(size_t)u];
      a.erase(std::unique(a.begin(), a.end()), a.end());  // collapse multiplicities
    }
    auto match = max_bipartite_matching(b);
    for (int u = 0; u < n; ++u)
      if (match[(size_t)u] < 0)
        throw std::logic_error("perfect matching round failed on a regular digraph");
    for (int u = 0; u < n; ++u) {
      auto& rem = remaining[(size_t)u];
      auto it = std::find(rem.begin(), rem.end(), match[(size_t)u]);
      rem.erase(it);  // consume one copy
    }
    fz.factors.emplace_back(match);
  }
  return fz;
}

DegreePrescription parse_degree_prescription(const std::string& text, int n) {
  DegreePrescription p;
  p.out_target.assign((size_t)n, 0);
  p.in_target.assign((size_t)n, 0);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long v, out, in;
    if (!(ls >> v)) continue;
    if (!(ls >> out >> in)) throw std::invalid_argument("prescription line needs 'v out in'");
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("trailing tokens on prescription line");
    if (v < 0 || v >= n) throw std::invalid_argument("prescription vertex out of range");
    if (out < 0 || in < 0) throw std::invalid_argument("negative degree target");
    p.out_target[(size_t)v] = (int)out;
    p.in_target[(size_t)v] = (int)in;
  }
  return p;
}

long long cut_capacity(const Digraph& g, const DegreePrescription& p, const CutWitness& w) {
  int n = g.n();
  std::vector<char> a((size_t)n, 0), b((size_t)n, 0);
  for (int v : w.a_side) a[(size_t)v] = 1;
  for (int v : w.b_side) b[(size_t)v] = 1;
  long long cap = 0;
  for (int v = 0; v < n; ++v)
    if (!a[(size_t)v]) cap += p.out_target[(size_t)v];  // source -> out-copy arcs cut
  for (auto [u, v] : g.edges())
    if (a[(size_t)u] && !b[(size_t)v]) cap += 1;  // out-copy -> in-copy arcs cut
  for (int v = 0; v < n; ++v)
    if (b[(size_t)v]) cap += p.in_target[(size_t)v];  // in-copy -> sink arcs cut
  return cap;
}

namespace {

// Dinic on a small integral network.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : head_((size_t)nodes, -1) {}

  int add_arc(int from, int to, long long cap) {
    arcs_.push_back({to, head_[(size_t)from], cap});
    head_[(size_t)from] = (int)arcs_.size() - 1;
    arcs_.push_back({from, head_[(size_t)to], 0});
    head_[(size_t)to] = (int)arcs_.size() - 1;
    return (int)arcs_.size() - 2;
  }

  long long run(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      long long f;
      while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0) flow += f;
    }
    return flow;
  }

  long long flow_on(int arc) const { return arcs_[(size_t)arc + 1].cap; }

  // Source side of the min cut after run(): nodes reachable in the residual.
  std::vector<char> source_side(int s, int nodes) const {
    std::vector<char> seen((size_t)nodes, 0);
    std::queue<int> q;
    seen[(size_t)s] = 1;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[(size_t)u]; e >= 0; e = arcs_[(size_t)e].next)
        if (arcs_[(size_t)e].cap > 0 && !seen[(size_t)arcs_[(size_t)e].to]) {
          seen[(size_t)arcs_[(size_t)e].to] = 1;
          q.push(arcs_[(size_t)e].to);
        }
    }
    return seen;
  }

 private:
  struct Arc {
    int to, next;
    long long cap;
  };

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    level_[(size_t)s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[(size_t)u]; e >= 0; e = arcs_[(size_t)e].next)
        if (arcs_[(size_t)e].cap > 0 && level_[(size_t)arcs_[(size_t)e].to] < 0) {
          level_[(size_t)arcs_[(size_t)e].to] = level_[(size_t)u] + 1;
          q.push(arcs_[(size_t)e].to);
        }
    }
    return level_[(size_t)t] >= 0;
  }

  long long dfs(int u, int t, long long lim) {
    if (u == t) return lim;
    for (int& e = iter_[(size_t)u]; e >= 0; e = arcs_[(size_t)e].next) {
      auto& a = arcs_[(size_t)e];
      if (a.cap > 0 && level_[(size_t)a.to] == level_[(size_t)u] + 1) {
        long long f = dfs(a.to, t, std::min(lim, a.cap));
        if (f > 0) {
          a.cap -= f;
          arcs_[(size_t)(e ^ 1)].cap += f;
          return f;
        }
      }
    }
    level_[(size_t)u] = -1;
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_, iter_, level_;
};

}  // namespace

SubdigraphResult degree_prescribed_subdigraph(const Digraph& g, const DegreePrescription& p) {
  int n = g.n();
  if ((int)p.out_target.size() != n || (int)p.in_target.size() != n)
    throw std::invalid_argument("prescription size does not match the graph");
  long long total_out = 0, total_in = 0;
  for (int v = 0; v < n; ++v) {
    if (p.out_target[(size_t)v] < 0 || p.in_target[(size_t)v] < 0)
      throw std::invalid_argument("negative degree target");
    total_out += p.out_target[(size_t)v];
    total_in += p.in_target[(size_t)v];
  }
  if (total_out != total_in)
    throw std::invalid_argument("prescription out-sum " + std::to_string(total_out) +
                                " != in-sum " + std::to_string(total_in));

  // Nodes: 0 = source, 1+v = out-copy of v, 1+n+v = in-copy of v, last = sink.
  int source = 0, sink = 1 + 2 * n;
  MaxFlow mf(2 * n + 2);
  for (int v = 0; v < n; ++v) {
    mf.add_arc(source, 1 + v, p.out_target[(size_t)v]);
    mf.add_arc(1 + n + v, sink, p.in_target[(size_t)v]);
  }
  auto edge_list = g.edges();
  std::vector<int> edge_arc;
  edge_arc.reserve(edge_list.size());
  {
    // one arc per distinct pair, capacity = multiplicity
    size_t i = 0;
    while (i < edge_list.size()) {
      size_t j = i;
      while (j < edge_list.size() && edge_list[j] == edge_list[i]) ++j;
      int arc = mf.add_arc(1 + edge_list[i].first, 1 + n + edge_list[i].second,
                           (long long)(j - i));
      edge_arc.push_back(arc);
      i = j;
    }
  }

  long long flow = mf.run(source, sink);
  SubdigraphResult res;
  if (flow == total_out) {
    Digraph q(n, g.multi());
    size_t arc_i = 0, i = 0;
    while (i < edge_list.size()) {
      size_t j = i;
      while (j < edge_list.size() && edge_list[j] == edge_list[i]) ++j;
      long long used = mf.flow_on(edge_arc[arc_i++]);
      for (long long c = 0; c < used; ++c) q.add_edge(edge_list[i].first, edge_list[i].second);
      i = j;
    }
    res.subgraph = std::move(q);
    return res;
  }

  auto side = mf.source_side(source, 2 * n + 2);
  CutWitness w;
  for (int v = 0; v < n; ++v) {
    if (side[(size_t)(1 + v)]) w.a_side.push_back(v);
    if (side[(size_t)(1 + n + v)]) w.b_side.push_back(v);
  }
  w.capacity = cut_capacity(g, p, w);
  if (w.capacity >= total_out)
    throw std::logic_error("cut fails to certify infeasibility");  // never on a correct solver
  res.cut = std::move(w);
  return res;
}

SubdigraphResult regular_spanning_subdigraph(const Digraph& g, int r) {
  if (r < 0) throw std::invalid_argument("negative regularity target");
  int n = g.n();
  // A vertex with too few out- or in-edges yields an immediate one-vertex cut
  // of capacity (n-1)*r + deficit < n*r.
  for (int v = 0; v < n; ++v) {
    if (g.out_degree(v) < r) {
      // cut {source, out-copy of v}: capacity (n-1)*r + outdeg(v) < n*r
      CutWitness w;
      w.a_side = {v};
      DegreePrescription p{std::vector<int>((size_t)n, r), std::vector<int>((size_t)n, r)};
      w.capacity = cut_capacity(g, p, w);
      SubdigraphResult res;
      res.cut = std::move(w);
      return res;
    }
    if (g.in_degree(v) < r) {
      // cut leaving only {in-copy of v, sink}: capacity (n-1)*r + indeg(v) < n*r
      CutWitness w;
      for (int u = 0; u < n; ++u) w.a_side.push_back(u);
      for (int u = 0; u < n; ++u)
        if (u != v) w.b_side.push_back(u);
      DegreePrescription p{std::vector<int>((size_t)n, r), std::vector<int>((size_t)n, r)};
      w.capacity = cut_capacity(g, p, w);
      SubdigraphResult res;
      res.cut = std::move(w);
      return res;
    }
  }
  DegreePrescription p{std::vector<int>((size_t)n, r), std::vector<int>((size_t)n, r)};
  return degree_prescribed_subdigraph(g, p);
}

namespace {

struct PathContraction {
  std::vector<int> chain_of;            // vertex -> contracted id
  std::vector<std::vector<int>> chain;  // contracted id -> path head..tail
};

// m is a union of vertex-disjoint paths (validated by the caller); each
// maximal path collapses to one vertex keeping the head's in-neighbours and
// the tail's out-neighbours.
PathContraction contract_paths(int n, const std::vector<Edge>& m) {
  std::vector<int> succ((size_t)n, -1), pred((size_t)n, -1);
  for (auto [u, v] : m) {
    succ[(size_t)u] = v;
    pred[(size_t)v] = u;
  }
  PathContraction pc;
  pc.chain_of.assign((size_t)n, -1);
  for (int v = 0; v < n; ++v) {
    if (pred[(size_t)v] >= 0) continue;  // not a path head
    std::vector<int> path{v};
    for (int w = succ[(size_t)v]; w >= 0; w = succ[(size_t)w]) path.push_back(w);
    int id = (int)pc.chain.size();
    for (int w : path) pc.chain_of[(size_t)w] = id;
    pc.chain.push_back(std::move(path));
  }
  return pc;
}

}  // namespace

HamiltonSearch hamilton_through_matching(const Digraph& g, const std::vector<Edge>& m,
                                         long long budget, uint64_t seed) {
  int n = g.n();
  std::vector<int> out_deg((size_t)n, 0), in_deg((size_t)n, 0);
  for (auto [u, v] : m) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("matching vertex out of range");
    if (!g.has_edge(u, v))
      throw std::invalid_argument("matching edge " + std::to_string(u) + "->" + std::to_string(v) +
                                  " is not in the graph");
    if (++out_deg[(size_t)u] > 1 || ++in_deg[(size_t)v] > 1)
      throw std::invalid_argument("matching edges must be vertex-disjoint paths");
  }
  for (auto [u, v] : m)
    for (auto [x, y] : m)
      if (u == y && v == x && u < v)
        throw std::invalid_argument("matching contains a 2-cycle");
  // Directed cycles make the contraction ill-defined; walk each path start.
  {
    std::vector<int> succ((size_t)n, -1);
    for (auto [u, v] : m) succ[(size_t)u] = v;
    std::vector<char> on_path((size_t)n, 0);
    for (auto [u, v] : m) {
      (void)v;
      if (in_deg[(size_t)u] == 0) {  // path head
        for (int w = u; w >= 0; w = succ[(size_t)w]) on_path[(size_t)w] = 1;
      }
    }
    for (auto [u, v] : m) {
      (void)v;
      if (!on_path[(size_t)u]) throw std::invalid_argument("matching contains a directed cycle");
    }
  }

  auto pc = contract_paths(n, m);
  int k = (int)pc.chain.size();
  HamiltonSearch result;

  if (k == 1) {
    // The matching is a spanning path; a Hamilton cycle through it exists iff
    // the closing edge is present.
    int head = pc.chain[0].front(), tail = pc.chain[0].back();
    if (g.has_edge(tail, head)) {
      std::vector<int> succ((size_t)n, -1);
      for (size_t i = 0; i + 1 < pc.chain[0].size(); ++i)
        succ[(size_t)pc.chain[0][i]] = pc.chain[0][i + 1];
      succ[(size_t)tail] = head;
      result.outcome = HamiltonSearch::Outcome::found;
      result.cycle = OneFactor(succ);
    } else {
      result.outcome = HamiltonSearch::Outcome::none_exists;
    }
    return result;
  }

  Digraph h(k);
  for (auto [u, v] : g.edges()) {
    int cu = pc.chain_of[(size_t)u], cv = pc.chain_of[(size_t)v];
    if (cu == cv) continue;
    if (u != pc.chain[(size_t)cu].back()) continue;   // only the tail keeps out-edges
    if (v != pc.chain[(size_t)cv].front()) continue;  // only the head keeps in-edges
    if (!h.has_edge(cu, cv)) h.add_edge(cu, cv);
  }

  auto hs = find_hamilton(h, budget, seed);
  result.outcome = hs.outcome;
  result.nodes = hs.nodes;
  if (hs.outcome != HamiltonSearch::Outcome::found) return result;

  std::vector<int> succ((size_t)n, -1);
  for (int c = 0; c < k; ++c) {
    const auto& path = pc.chain[(size_t)c];
    for (size_t i = 0; i + 1 < path.size(); ++i) succ[(size_t)path[i]] = path[i + 1];
    int next_chain = hs.cycle->succ(c);
    succ[(size_t)path.back()] = pc.chain[(size_t)next_chain].front();
  }
  result.cycle = OneFactor(succ);
  return result;
}

CoverReport cover_exceptional_edges(const Digraph& g, const std::vector<int>& v0,
                                    long long budget, uint64_t seed) {
  int n = g.n();
  std::vector<char> inside((size_t)n, 0);
  for (int v : v0) {
    if (v < 0 || v >= n) throw std::invalid_argument("cover set vertex out of range");
    inside[(size_t)v] = 1;
  }
  std::vector<Edge> induced;
  for (auto [u, v] : g.edges())
    if (inside[(size_t)u] && inside[(size_t)v]) induced.emplace_back(u, v);

  // Greedy partition: each edge takes the first class where both endpoints
  // are still unused.  Classes are matchings in the undirected sense, which
  // is exactly what hamilton_through_matching accepts.
  CoverReport rep;
  std::vector<std::vector<char>> busy;  // busy[c][v]: vertex v used by class c
  for (auto [u, v] : induced) {
    size_t c = 0;
    for (; c < rep.matchings.size(); ++c)
      if (!busy[c][(size_t)u] && !busy[c][(size_t)v]) break;
    if (c == rep.matchings.size()) {
      rep.matchings.emplace_back();
      busy.emplace_back((size_t)n, 0);
    }
    rep.matchings[c].emplace_back(u, v);
    busy[c][(size_t)u] = busy[c][(size_t)v] = 1;
  }

  Digraph current = g;
  for (size_t i = 0; i < rep.matchings.size(); ++i) {
    // later classes must survive this round, so the cycle may not use them
    std::vector<Edge> reserved;
    for (size_t j = i + 1; j < rep.matchings.size(); ++j)
      reserved.insert(reserved.end(), rep.matchings[j].begin(), rep.matchings[j].end());
    auto hs = hamilton_through_matching(current.without(reserved), rep.matchings[i], budget,
                                        derive_seed(seed, (uint64_t)i));
    if (hs.outcome != HamiltonSearch::Outcome::found) {
      rep.complete = false;
      rep.failed_matching = (int)i;
      return rep;
    }
    rep.cycles.push_back(*hs.cycle);
    current = current.without(hs.cycle->edges());
  }
  return rep;
}

}  // namespace hamdec
