#include "hamdec/digraph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hamdec {

Digraph::Digraph(int n, bool multi) : n_(n), multi_(multi) {
  // validate before sizing the adjacency vectors: vector(-1) dies on its own
  if (n < 0) throw std::invalid_argument("digraph with negative vertex count");
  out_.resize((size_t)n);
  in_.resize((size_t)n);
}

Digraph Digraph::from_edges(int n, const std::vector<Edge>& edges, bool multi) {
  Digraph g(n, multi);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

int Digraph::check(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  return v;
}

void Digraph::add_edge(int u, int v) {
  check(u);
  check(v);
  if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
  if (!multi_ && has_edge(u, v))
    throw std::invalid_argument("duplicate edge " + std::to_string(u) + "->" + std::to_string(v) +
                                " in simple digraph");
  auto& o = out_[(size_t)u];
  o.insert(std::upper_bound(o.begin(), o.end(), v), v);
  auto& i = in_[(size_t)v];
  i.insert(std::upper_bound(i.begin(), i.end(), u), u);
  ++m_;
}

int Digraph::edge_multiplicity(int u, int v) const {
  const auto& o = out_[check(u)];
  check(v);
  auto [lo, hi] = std::equal_range(o.begin(), o.end(), v);
  return (int)(hi - lo);
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> e;
  e.reserve((size_t)m_);
  for (int u = 0; u < n_; ++u)
    for (int v : out_[(size_t)u]) e.emplace_back(u, v);
  return e;  // sorted: u ascending, adjacency sorted
}

Digraph Digraph::without(const std::vector<Edge>& remove) const {
  std::map<Edge, int> drop;
  for (const auto& e : remove) ++drop[e];
  Digraph g(n_, multi_);
  for (int u = 0; u < n_; ++u)
    for (int v : out_[(size_t)u]) {
      auto it = drop.find({u, v});
      if (it != drop.end() && it->second > 0) {
        --it->second;
      } else {
        g.add_edge(u, v);
      }
    }
  for (const auto& [e, c] : drop)
    if (c > 0)
      throw std::invalid_argument("edge " + std::to_string(e.first) + "->" +
                                  std::to_string(e.second) + " not present to remove");
  return g;
}

bool Digraph::same_edge_multiset(const Digraph& other) const {
  return n_ == other.n_ && m_ == other.m_ && out_ == other.out_;
}

ValidationReport validate(const Digraph& g) {
  ValidationReport r;
  r.n = g.n();
  r.m = g.m();
  r.multi = g.multi();
  r.degrees.resize((size_t)g.n());
  bool regular = g.n() > 0;
  int reg = g.n() > 0 ? g.out_degree(0) : 0;
  r.min_out = r.min_in = r.min_total = g.n() > 0 ? g.n() * 2 : 0;
  for (int v = 0; v < g.n(); ++v) {
    int dout = g.out_degree(v), din = g.in_degree(v);
    r.degrees[(size_t)v] = {dout, din};
    if (dout != reg || din != reg) regular = false;
    r.min_out = std::min(r.min_out, dout);
    r.min_in = std::min(r.min_in, din);
    r.min_total = std::min(r.min_total, dout + din);
  }
  if (regular) r.regular = reg;

  r.oriented = true;
  for (int u = 0; u < g.n() && r.oriented; ++u) {
    const auto& adj = g.out_neighbours(u);
    for (size_t i = 0; i < adj.size(); ++i) {
      if (i + 1 < adj.size() && adj[i] == adj[i + 1]) { r.oriented = false; break; }
      if (g.has_edge(adj[i], u)) { r.oriented = false; break; }
    }
  }
  r.tournament = r.oriented && g.m() == (long long)g.n() * (g.n() - 1) / 2;
  return r;
}

int min_semidegree(const Digraph& g) {
  auto r = validate(g);
  return std::min(r.min_out, r.min_in);
}

OneFactor::OneFactor(std::vector<int> succ) : succ_(std::move(succ)) {
  int n = (int)succ_.size();
  std::vector<char> hit((size_t)n, 0);
  for (int v = 0; v < n; ++v) {
    int s = succ_[(size_t)v];
    if (s < 0 || s >= n) throw std::invalid_argument("one-factor successor out of range");
    if (s == v) throw std::invalid_argument("one-factor with fixed point at " + std::to_string(v));
    if (hit[(size_t)s]) throw std::invalid_argument("one-factor successor map not a bijection");
    hit[(size_t)s] = 1;
  }
}

std::vector<Edge> OneFactor::edges() const {
  std::vector<Edge> e;
  e.reserve(succ_.size());
  for (int v = 0; v < n(); ++v) e.emplace_back(v, succ_[(size_t)v]);
  return e;
}

CycleStructure cycle_structure(const OneFactor& f) {
  CycleStructure cs;
  int n = f.n();
  std::vector<char> seen((size_t)n, 0);
  for (int v = 0; v < n; ++v) {
    if (seen[(size_t)v]) continue;
    std::vector<int> cycle;
    int w = v;
    do {
      cycle.push_back(w);
      seen[(size_t)w] = 1;
      w = f.succ(w);
    } while (w != v);
    cs.cycles.push_back(std::move(cycle));  // starts at its min vertex: v is unseen-minimal
  }
  return cs;
}

int cycle_count(const OneFactor& f) {
  int n = f.n(), count = 0;
  std::vector<char> seen((size_t)n, 0);
  for (int v = 0; v < n; ++v) {
    if (seen[(size_t)v]) continue;
    ++count;
    for (int w = v; !seen[(size_t)w]; w = f.succ(w)) seen[(size_t)w] = 1;
  }
  return count;
}

bool is_hamilton_cycle(const OneFactor& f) { return cycle_count(f) == 1; }

std::string check_factorization(const Factorization& f) {
  long long total = 0;
  for (size_t i = 0; i < f.factors.size(); ++i) {
    if (f.factors[i].n() != f.host.n())
      return "factor " + std::to_string(i) + " has wrong vertex count";
    total += f.factors[i].n();
  }
  if (total != f.host.m()) return "factor edges do not match host edge count";
  // multiset union must equal the host's edges
  std::map<Edge, int> need;
  for (auto e : f.host.edges()) ++need[e];
  for (size_t i = 0; i < f.factors.size(); ++i)
    for (auto e : f.factors[i].edges()) {
      auto it = need.find(e);
      if (it == need.end() || it->second == 0)
        return "factor " + std::to_string(i) + " uses unavailable edge " +
               std::to_string(e.first) + "->" + std::to_string(e.second);
      --it->second;
    }
  return "";
}

std::vector<int> factor_to_cycle(const OneFactor& f) {
  if (!is_hamilton_cycle(f)) throw std::invalid_argument("factor is not a single cycle");
  std::vector<int> cycle;
  cycle.reserve((size_t)f.n());
  int v = 0;
  do {
    cycle.push_back(v);
    v = f.succ(v);
  } while (v != 0);
  return cycle;
}

VerifyReport verify_hamilton_decomposition(const Digraph& g, const HamiltonDecomposition& d) {
  VerifyReport r;
  int n = g.n();
  for (size_t i = 0; i < d.cycles.size(); ++i) {
    const auto& c = d.cycles[i];
    if ((int)c.size() != n) {
      r.reason = "member is not a spanning cycle";
      r.member = (int)i;
      return r;
    }
    std::vector<char> seen((size_t)n, 0);
    for (int v : c) {
      if (v < 0 || v >= n || seen[(size_t)v]) {
        r.reason = "member repeats or misses a vertex";
        r.member = (int)i;
        return r;
      }
      seen[(size_t)v] = 1;
    }
  }
  std::map<Edge, int> avail;
  for (auto e : g.edges()) ++avail[e];
  for (size_t i = 0; i < d.cycles.size(); ++i) {
    const auto& c = d.cycles[i];
    for (size_t j = 0; j < c.size(); ++j) {
      Edge e{c[j], c[(j + 1) % c.size()]};
      auto it = avail.find(e);
      if (it == avail.end() || it->second == 0) {
        r.reason = "edge not available (missing from host or already used)";
        r.member = (int)i;
        r.witness = e;
        return r;
      }
      --it->second;
    }
  }
  for (const auto& [e, c] : avail)
    if (c > 0) {
      r.reason = "host edge not covered";
      r.witness = e;
      return r;
    }
  r.ok = true;
  return r;
}

namespace {

// Strips '#' comments and splits into whitespace tokens.
std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> toks;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) toks.push_back(t);
  }
  return toks;
}

int parse_int(const std::string& t, const char* what) {
  try {
    size_t used = 0;
    int v = std::stoi(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::logic_error&) {
    throw std::invalid_argument(std::string("malformed ") + what + ": '" + t + "'");
  }
}

}  // namespace

Digraph parse_digraph(const std::string& text) {
  auto toks = tokenize(text);
  if (toks.size() < 2) throw std::invalid_argument("edge list needs a 'n m' header");
  size_t at = 0;
  int n = parse_int(toks[at++], "vertex count");
  int m = parse_int(toks[at++], "edge count");
  bool multi = false;
  if (at < toks.size() && toks[at] == "multi") {
    multi = true;
    ++at;
  }
  if (n < 0 || m < 0) throw std::invalid_argument("negative counts in header");
  if (toks.size() - at != (size_t)(2 * m))
    throw std::invalid_argument("expected " + std::to_string(2 * m) + " endpoint tokens, found " +
                                std::to_string(toks.size() - at));
  Digraph g(n, multi);
  for (int i = 0; i < m; ++i) {
    int u = parse_int(toks[at + 2 * (size_t)i], "edge endpoint");
    int v = parse_int(toks[at + 2 * (size_t)i + 1], "edge endpoint");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge " + std::to_string(u) + "->" + std::to_string(v) +
                                  " outside the declared vertex range");
    g.add_edge(u, v);
  }
  return g;
}

Digraph read_digraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_digraph(buf.str());
}

std::string serialize_digraph(const Digraph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.m();
  if (g.multi()) out << " multi";
  out << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace hamdec
