#include "hamdec/switching.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "hamdec/rng.hpp"
#include "json.hpp"

namespace hamdec {

namespace {

std::vector<int> cycle_ids(const OneFactor& f) {
  auto cs = cycle_structure(f);
  std::vector<int> id((size_t)f.n(), -1);
  for (size_t ci = 0; ci < cs.cycles.size(); ++ci)
    for (int v : cs.cycles[ci]) id[(size_t)v] = (int)ci;
  return id;
}

}  // namespace

std::optional<SwitchC4> find_c4_switch(const OneFactor& f, const OneFactor& fp, SwitchWant want) {
  if (f.n() != fp.n()) throw std::invalid_argument("factors live on different vertex sets");
  int n = f.n();
  auto ids = cycle_ids(f);
  for (int x = 0; x < n; ++x) {
    int xs = f.succ(x);
    for (int y = x + 1; y < n; ++y) {
      int ys = f.succ(y);
      if (fp.succ(x) != ys || fp.succ(y) != xs) continue;
      bool same = ids[(size_t)x] == ids[(size_t)y];
      if (want == SwitchWant::merge && same) continue;
      if (want == SwitchWant::split && !same) continue;
      return SwitchC4{x, xs, y, ys};
    }
  }
  return std::nullopt;
}

C4Effect apply_c4_exchange(OneFactor& f, OneFactor& fp, const SwitchC4& s) {
  if (s.x == s.y) throw std::invalid_argument("four-cycle exchange needs two distinct sources");
  if (f.succ(s.x) != s.x_succ || f.succ(s.y) != s.y_succ || fp.succ(s.x) != s.y_succ ||
      fp.succ(s.y) != s.x_succ)
    throw std::invalid_argument("stale four-cycle exchange: listed edges are not present");
  int before_f = cycle_count(f), before_fp = cycle_count(fp);
  auto sf = f.succ_map();
  auto sfp = fp.succ_map();
  sf[(size_t)s.x] = s.y_succ;
  sf[(size_t)s.y] = s.x_succ;
  sfp[(size_t)s.x] = s.x_succ;
  sfp[(size_t)s.y] = s.y_succ;
  f = OneFactor(std::move(sf));
  fp = OneFactor(std::move(sfp));
  C4Effect eff;
  eff.delta_f = cycle_count(f) - before_f;
  eff.delta_fp = cycle_count(fp) - before_fp;
  // swapping two successors always merges two cycles or splits one
  if (std::abs(eff.delta_f) != 1 || std::abs(eff.delta_fp) != 1)
    throw std::logic_error("four-cycle exchange moved a cycle count by more than one");
  return eff;
}

namespace {

bool k23_candidate(const OneFactor& f0, const OneFactor& f1, const OneFactor& f2, int x, int y,
                   SwitchK23& out) {
  std::array<int, 3> a{f0.succ(x), f1.succ(x), f2.succ(x)};
  std::array<int, 3> b{f0.succ(y), f1.succ(y), f2.succ(y)};
  std::array<int, 3> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa[0] == sa[1] || sa[1] == sa[2]) return false;  // factors share an edge at x
  if (sa != sb) return false;
  for (int t : sa)
    if (t == x || t == y) return false;  // rewiring would create a loop
  out = SwitchK23{x, y, sa, a, b};
  return true;
}

}  // namespace

std::optional<SwitchK23> find_k23_switch(const OneFactor& f0, const OneFactor& f1,
                                         const OneFactor& f2, bool require_all_merge) {
  int n = f0.n();
  if (f1.n() != n || f2.n() != n)
    throw std::invalid_argument("factors live on different vertex sets");
  auto id0 = cycle_ids(f0), id1 = cycle_ids(f1), id2 = cycle_ids(f2);
  SwitchK23 s;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (!k23_candidate(f0, f1, f2, x, y, s)) continue;
      if (require_all_merge &&
          (id0[(size_t)x] == id0[(size_t)y] || id1[(size_t)x] == id1[(size_t)y] ||
           id2[(size_t)x] == id2[(size_t)y]))
        continue;
      return s;
    }
  return std::nullopt;
}

std::array<int, 3> apply_k23_exchange(OneFactor& f0, OneFactor& f1, OneFactor& f2,
                                      const SwitchK23& s) {
  SwitchK23 check;
  if (s.x == s.y || !k23_candidate(f0, f1, f2, s.x, s.y, check) || check.a != s.a ||
      check.b != s.b)
    throw std::invalid_argument("stale three-factor exchange: listed edges are not present");
  std::array<OneFactor*, 3> fs{&f0, &f1, &f2};
  std::array<int, 3> deltas{};
  for (int i = 0; i < 3; ++i) {
    int before = cycle_count(*fs[(size_t)i]);
    auto m = fs[(size_t)i]->succ_map();
    m[(size_t)s.x] = s.b[(size_t)i];
    m[(size_t)s.y] = s.a[(size_t)i];
    *fs[(size_t)i] = OneFactor(std::move(m));
    deltas[(size_t)i] = cycle_count(*fs[(size_t)i]) - before;
  }
  if ((deltas[0] + deltas[1] + deltas[2]) % 2 == 0)
    throw std::logic_error("three-factor exchange produced an even total delta");
  return deltas;
}

namespace {

struct ExactHamilton {
  const Digraph& g;
  int n;
  long long cap;
  long long nodes = 0;
  bool aborted = false;
  std::vector<int> path;
  std::vector<char> visited;

  explicit ExactHamilton(const Digraph& gg, long long c)
      : g(gg), n(gg.n()), cap(c), visited((size_t)gg.n(), 0) {}

  bool extend(int cur) {
    if (++nodes > cap) {
      aborted = true;
      return false;
    }
    if ((int)path.size() == n) return g.has_edge(cur, path[0]);
    int prev = -1;
    for (int nxt : g.out_neighbours(cur)) {
      if (nxt == prev) continue;  // parallel copies add nothing
      prev = nxt;
      if (visited[(size_t)nxt]) continue;
      visited[(size_t)nxt] = 1;
      path.push_back(nxt);
      if (extend(nxt)) return true;
      path.pop_back();
      visited[(size_t)nxt] = 0;
      if (aborted) return false;
    }
    return false;
  }
};

OneFactor factor_from_path(int n, const std::vector<int>& path) {
  std::vector<int> succ((size_t)n, -1);
  for (size_t i = 0; i < path.size(); ++i)
    succ[(size_t)path[i]] = path[(i + 1) % path.size()];
  return OneFactor(std::move(succ));
}

HamiltonSearch heuristic_hamilton(const Digraph& g, long long budget, uint64_t seed) {
  int n = g.n();
  Rng rng(derive_seed(seed, 0x68616d70617468ULL));
  HamiltonSearch out;
  std::vector<char> visited((size_t)n, 0);
  std::vector<int> path;
  path.reserve((size_t)n);
  while (out.nodes < budget) {
    std::fill(visited.begin(), visited.end(), 0);
    path.clear();
    int start = rng.below(n);
    visited[(size_t)start] = 1;
    path.push_back(start);
    int cur = start;
    bool dead = false;
    while ((int)path.size() < n) {
      if (++out.nodes > budget) {
        dead = true;
        break;
      }
      // extend to the unvisited out-neighbour with fewest onward options,
      // breaking ties uniformly; dead ends just trigger a restart
      int best = -1, best_score = INT_MAX, ties = 0;
      int prev = -1;
      for (int nxt : g.out_neighbours(cur)) {
        if (nxt == prev) continue;
        prev = nxt;
        if (visited[(size_t)nxt]) continue;
        int score = 0;
        for (int w : g.out_neighbours(nxt))
          if (!visited[(size_t)w]) ++score;
        if (score < best_score) {
          best_score = score;
          best = nxt;
          ties = 1;
        } else if (score == best_score) {
          ++ties;
          if (rng.below(ties) == 0) best = nxt;
        }
      }
      if (best < 0) {
        dead = true;
        break;
      }
      visited[(size_t)best] = 1;
      path.push_back(best);
      cur = best;
    }
    if (!dead && g.has_edge(cur, start)) {
      out.outcome = HamiltonSearch::Outcome::found;
      out.cycle = factor_from_path(n, path);
      return out;
    }
  }
  return out;
}

}  // namespace

HamiltonSearch find_hamilton(const Digraph& g, long long budget, uint64_t seed) {
  int n = g.n();
  HamiltonSearch out;
  if (n < 2) {  // loop-free, so no closed spanning walk exists
    out.outcome = HamiltonSearch::Outcome::none_exists;
    return out;
  }
  if (n <= 12) {
    ExactHamilton ex(g, budget > 0 ? budget : LLONG_MAX);
    ex.path.push_back(0);
    ex.visited[0] = 1;
    bool ok = ex.extend(0);
    out.nodes = ex.nodes;
    if (ok) {
      out.outcome = HamiltonSearch::Outcome::found;
      out.cycle = factor_from_path(n, ex.path);
    } else {
      out.outcome = ex.aborted ? HamiltonSearch::Outcome::not_found
                               : HamiltonSearch::Outcome::none_exists;
    }
    return out;
  }
  if (budget <= 0) budget = std::max(20000ll, 500ll * n);
  return heuristic_hamilton(g, budget, seed);
}

MergeResult merge_cycles_via_auxiliary(const OneFactor& f, const std::vector<int>& u1,
                                       const std::vector<int>& u2, const std::vector<Edge>& pool,
                                       long long budget) {
  int n = f.n();
  MergeResult res;
  if (u1.empty() || u1.size() != u2.size())
    throw std::invalid_argument("merge needs two nonempty sets of equal size");
  std::vector<char> in1((size_t)n, 0), in2((size_t)n, 0);
  for (int v : u1) {
    if (v < 0 || v >= n || in1[(size_t)v]) throw std::invalid_argument("first set is not a set");
    in1[(size_t)v] = 1;
  }
  for (int v : u2) {
    if (v < 0 || v >= n || in2[(size_t)v]) throw std::invalid_argument("second set is not a set");
    if (in1[(size_t)v]) throw std::invalid_argument("merge sets must be disjoint");
    in2[(size_t)v] = 1;
  }
  for (int v : u1)
    if (!in2[(size_t)f.succ(v)])
      throw std::invalid_argument("factor edges leaving the first set must enter the second");
  std::set<Edge> pool_set;
  for (auto e : pool) {
    if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n ||
        !in1[(size_t)e.first] || !in2[(size_t)e.second])
      throw std::invalid_argument("pool edge does not go from the first set to the second");
    pool_set.insert(e);
  }

  std::vector<int> u2s = u2;
  std::sort(u2s.begin(), u2s.end());
  int k = (int)u2s.size();

  // first set-1 vertex reached along the factor from each set-2 vertex; the
  // walk stops before any other set-2 vertex because those are entered from
  // set 1, so the map is a bijection
  std::vector<int> fmap((size_t)k, -1);
  for (int i = 0; i < k; ++i) {
    int w = f.succ(u2s[(size_t)i]);
    int guard = 0;
    while (!in1[(size_t)w]) {
      w = f.succ(w);
      if (++guard > n) throw std::invalid_argument("a factor cycle avoids the first set");
    }
    fmap[(size_t)i] = w;
  }

  auto rebuild = [&](const std::vector<int>& aux_succ) {
    auto succ = f.succ_map();
    for (int i = 0; i < k; ++i) succ[(size_t)fmap[(size_t)i]] = u2s[(size_t)aux_succ[(size_t)i]];
    OneFactor nf(std::move(succ));
    auto ids = cycle_ids(nf);
    int home = ids[(size_t)u2s[0]];
    for (int v : u1)
      if (ids[(size_t)v] != home) throw std::logic_error("merge left the sets on several cycles");
    for (int v : u2)
      if (ids[(size_t)v] != home) throw std::logic_error("merge left the sets on several cycles");
    // vertices that shared a cycle before must still share one
    auto old_cycles = cycle_structure(f);
    for (const auto& cyc : old_cycles.cycles)
      for (int v : cyc)
        if (ids[(size_t)v] != ids[(size_t)cyc[0]])
          throw std::logic_error("merge separated vertices that shared a cycle");
    res.factor = std::move(nf);
  };

  if (k == 1) {
    // nothing to reorder; the factor qualifies as-is when its matching edge
    // is available as a replacement
    if (pool_set.count({fmap[0], u2s[0]})) rebuild({0});
    return res;
  }

  Digraph aux(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && pool_set.count({fmap[(size_t)i], u2s[(size_t)j]})) aux.add_edge(i, j);
  auto hs = find_hamilton(aux, budget, 0x6d65726765ULL);
  res.search_nodes = hs.nodes;
  if (hs.outcome != HamiltonSearch::Outcome::found) return res;
  rebuild(hs.cycle->succ_map());
  return res;
}

std::vector<OneFactor> replay_switch_log(const std::vector<OneFactor>& start,
                                         const SwitchLog& log) {
  auto fs = start;
  int r = (int)fs.size();
  for (size_t t = 0; t < log.entries.size(); ++t) {
    const auto& e = log.entries[t];
    int touched = e.kind == SwitchLogEntry::Kind::c4 ? 2 : 3;
    for (int i = 0; i < touched; ++i) {
      int fi = e.factors[(size_t)i];
      if (fi < 0 || fi >= r)
        throw std::invalid_argument("log entry " + std::to_string(t) + ": bad factor index");
      if (cycle_count(fs[(size_t)fi]) != e.counts_before[(size_t)i])
        throw std::invalid_argument("log entry " + std::to_string(t) +
                                    ": cycle count before does not match");
    }
    if (e.kind == SwitchLogEntry::Kind::c4) {
      if (e.factors[0] == e.factors[1])
        throw std::invalid_argument("log entry " + std::to_string(t) + ": repeated factor");
      apply_c4_exchange(fs[(size_t)e.factors[0]], fs[(size_t)e.factors[1]], e.c4);
    } else {
      if (e.factors[0] == e.factors[1] || e.factors[0] == e.factors[2] ||
          e.factors[1] == e.factors[2])
        throw std::invalid_argument("log entry " + std::to_string(t) + ": repeated factor");
      apply_k23_exchange(fs[(size_t)e.factors[0]], fs[(size_t)e.factors[1]],
                         fs[(size_t)e.factors[2]], e.k23);
    }
    for (int i = 0; i < touched; ++i)
      if (cycle_count(fs[(size_t)e.factors[(size_t)i]]) != e.counts_after[(size_t)i])
        throw std::invalid_argument("log entry " + std::to_string(t) +
                                    ": cycle count after does not match");
  }
  return fs;
}

std::string switch_log_to_json_lines(const SwitchLog& log) {
  std::string out;
  for (const auto& e : log.entries) {
    nlohmann::ordered_json j;
    if (e.kind == SwitchLogEntry::Kind::c4) {
      j["kind"] = "c4";
      j["factors"] = {e.factors[0], e.factors[1]};
      j["x"] = e.c4.x;
      j["x_succ"] = e.c4.x_succ;
      j["y"] = e.c4.y;
      j["y_succ"] = e.c4.y_succ;
      j["counts_before"] = {e.counts_before[0], e.counts_before[1]};
      j["counts_after"] = {e.counts_after[0], e.counts_after[1]};
    } else {
      j["kind"] = "k23";
      j["factors"] = {e.factors[0], e.factors[1], e.factors[2]};
      j["x"] = e.k23.x;
      j["y"] = e.k23.y;
      j["z"] = {e.k23.z[0], e.k23.z[1], e.k23.z[2]};
      j["a"] = {e.k23.a[0], e.k23.a[1], e.k23.a[2]};
      j["b"] = {e.k23.b[0], e.k23.b[1], e.k23.b[2]};
      j["counts_before"] = {e.counts_before[0], e.counts_before[1], e.counts_before[2]};
      j["counts_after"] = {e.counts_after[0], e.counts_after[1], e.counts_after[2]};
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

ReduceResult reduce_to_hamilton(const Factorization& f, long long budget, uint64_t seed) {
  std::string err = check_factorization(f);
  if (!err.empty()) throw std::invalid_argument("reduce_to_hamilton: " + err);
  int n = f.host.n();
  int r = (int)f.factors.size();
  ReduceResult res;
  if (r == 0) {
    res.factors = std::vector<OneFactor>{};
    return res;
  }
  if (budget <= 0) budget = std::max(64ll, 4ll * n * n);

  auto fs = f.factors;
  std::vector<std::vector<int>> ids((size_t)r);
  std::vector<int> counts((size_t)r, 0);
  auto refresh = [&](int i) {
    ids[(size_t)i] = cycle_ids(fs[(size_t)i]);
    counts[(size_t)i] =
        ids[(size_t)i].empty()
            ? 0
            : 1 + *std::max_element(ids[(size_t)i].begin(), ids[(size_t)i].end());
  };
  for (int i = 0; i < r; ++i) refresh(i);
  auto total_of = [&]() {
    int t = 0;
    for (int c : counts) t += c;
    return t;
  };
  int total = total_of();

  Rng rng(derive_seed(seed, 0x726564756365ULL));
  long long last_progress = 0;
  int last_zero_i = -1, last_zero_j = -1, last_zero_x = -1, last_zero_y = -1;

  auto log_c4 = [&](int i, int j, const SwitchC4& s, int bi, int bj) {
    SwitchLogEntry e;
    e.kind = SwitchLogEntry::Kind::c4;
    e.factors = {i, j, -1};
    e.c4 = s;
    e.counts_before = {bi, bj, 0};
    e.counts_after = {counts[(size_t)i], counts[(size_t)j], 0};
    res.log.entries.push_back(e);
  };

  while (total > r && res.steps < budget) {
    if (res.steps - last_progress > 2ll * n + 8) break;  // shuffling without gain
    bool acted = false;

    // Merge switches, most fragmented factor first.  A switch is productive
    // when the partner merges too (total falls by 2) or when the partner is a
    // single cycle splitting into a bicycle (total unchanged, opens new
    // exchanges).  Scans are lexicographic from a seeded offset.
    {
      std::vector<int> order((size_t)r);
      for (int i = 0; i < r; ++i) order[(size_t)i] = i;
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (counts[(size_t)a] != counts[(size_t)b]) return counts[(size_t)a] > counts[(size_t)b];
        return a < b;
      });
      for (int oi = 0; oi < r && !acted; ++oi) {
        int i = order[(size_t)oi];
        if (counts[(size_t)i] < 2) break;  // nothing below needs merging
        int j0 = rng.below(r), x0 = rng.below(n), y0 = rng.below(n);
        for (int dj = 0; dj < r && !acted; ++dj) {
          int j = (j0 + dj) % r;
          if (j == i) continue;
          bool partner_splits = counts[(size_t)j] == 1;
          for (int dx = 0; dx < n && !acted; ++dx) {
            int x = (x0 + dx) % n;
            int xs = fs[(size_t)i].succ(x);
            for (int dy = 0; dy < n; ++dy) {
              int y = (y0 + dy) % n;
              if (y == x) continue;
              if (ids[(size_t)i][(size_t)x] == ids[(size_t)i][(size_t)y]) continue;
              if (!partner_splits && ids[(size_t)j][(size_t)x] == ids[(size_t)j][(size_t)y])
                continue;  // partner above 2 cycles must merge as well
              int ys = fs[(size_t)i].succ(y);
              if (fs[(size_t)j].succ(x) != ys || fs[(size_t)j].succ(y) != xs) continue;
              if (partner_splits && std::min(i, j) == last_zero_i &&
                  std::max(i, j) == last_zero_j && std::min(x, y) == last_zero_x &&
                  std::max(x, y) == last_zero_y)
                continue;  // would undo the previous count-preserving switch
              SwitchC4 s{x, xs, y, ys};
              int bi = counts[(size_t)i], bj = counts[(size_t)j];
              apply_c4_exchange(fs[(size_t)i], fs[(size_t)j], s);
              refresh(i);
              refresh(j);
              log_c4(i, j, s, bi, bj);
              if (partner_splits) {
                last_zero_i = std::min(i, j);
                last_zero_j = std::max(i, j);
                last_zero_x = std::min(x, y);
                last_zero_y = std::max(x, y);
              }
              acted = true;
              break;
            }
          }
        }
      }
    }

    // Parity repair: the total moves by 2 or 0 above, so a gap of the wrong
    // parity needs one three-factor exchange across a triple in which every
    // factor merges (each must hold the removed pair on different cycles).
    if (!acted && (total - r) % 2 != 0 && r >= 3 && n >= 5) {
      std::vector<std::array<int, 3>> triples;
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
          for (int l = j + 1; l < r; ++l)
            if (counts[(size_t)i] > 1 && counts[(size_t)j] > 1 && counts[(size_t)l] > 1)
              triples.push_back({i, j, l});
      rng.shuffle(triples);
      for (auto [i, j, l] : triples) {
        SwitchK23 s;
        bool found = false;
        for (int x = 0; x < n && !found; ++x)
          for (int y = x + 1; y < n; ++y) {
            if (!k23_candidate(fs[(size_t)i], fs[(size_t)j], fs[(size_t)l], x, y, s)) continue;
            bool all_merge = true;
            for (int m : {i, j, l})
              if (ids[(size_t)m][(size_t)x] == ids[(size_t)m][(size_t)y]) all_merge = false;
            if (!all_merge) continue;
            found = true;
            break;
          }
        if (!found) continue;
        std::array<int, 3> before{counts[(size_t)i], counts[(size_t)j], counts[(size_t)l]};
        apply_k23_exchange(fs[(size_t)i], fs[(size_t)j], fs[(size_t)l], s);
        refresh(i);
        refresh(j);
        refresh(l);
        SwitchLogEntry e;
        e.kind = SwitchLogEntry::Kind::k23;
        e.factors = {i, j, l};
        e.k23 = s;
        e.counts_before = before;
        e.counts_after = {counts[(size_t)i], counts[(size_t)j], counts[(size_t)l]};
        res.log.entries.push_back(e);
        acted = true;
        break;
      }
    }

    if (!acted) break;
    ++res.steps;
    int new_total = total_of();
    if (new_total < total) last_progress = res.steps;
    total = new_total;
  }

  if (total == r) {
    std::string post = check_factorization({f.host, fs});
    if (!post.empty()) throw std::logic_error("switching corrupted the factorization: " + post);
    res.factors = std::move(fs);
  } else {
    StuckReport sr;
    sr.cycle_counts = counts;
    sr.total = total;
    sr.target = r;
    sr.parity_mismatch = (total - r) % 2 != 0;
    sr.steps_used = res.steps;
    res.stuck = sr;
  }
  return res;
}

}  // namespace hamdec
