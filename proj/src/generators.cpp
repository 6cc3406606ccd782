#include "hamdec/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "hamdec/matching_flow.hpp"
#include "hamdec/rng.hpp"

namespace hamdec {

Digraph complete_digraph(int n) {
  if (n < 1) throw std::invalid_argument("complete digraph needs at least one vertex");
  Digraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) g.add_edge(u, v);
  return g;
}

Digraph rotational_tournament(int n, const std::vector<int>& offsets) {
  if (n < 2) throw std::invalid_argument("rotational tournament needs at least two vertices");
  std::set<int> seen;
  for (int d : offsets) {
    if (d <= 0 || d >= n)
      throw std::invalid_argument("offset " + std::to_string(d) + " outside 1.." +
                                  std::to_string(n - 1));
    if (!seen.insert(d).second)
      throw std::invalid_argument("repeated offset " + std::to_string(d));
  }
  Digraph g(n);
  for (int d : offsets)
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + d) % n);
  return g;
}

Digraph random_tournament(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("tournament needs at least one vertex");
  Rng rng(derive_seed(seed, 0x746f75726eULL));  // "tourn"
  Digraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (rng.coin())
        g.add_edge(u, v);
      else
        g.add_edge(v, u);
    }
  return g;
}

Digraph random_regular_digraph(int n, int r, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("regular digraph needs at least one vertex");
  if (r < 0 || r > n - 1)
    throw std::invalid_argument("no " + std::to_string(r) + "-regular digraph on " +
                                std::to_string(n) + " vertices");
  if (r == 0) return Digraph(n);

  // Dense enough that an r-regular subdigraph almost surely exists; the flow
  // solver settles each draw exactly and infeasible draws are retried.
  double p = std::min(1.0, std::max(0.55, 1.3 * r / (double)(n - 1)));
  const int attempts = 64;
  for (int a = 0; a < attempts; ++a) {
    Rng rng(derive_seed(seed, 0x7265670000ULL + (uint64_t)a));
    Digraph host(n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && rng.unit() < p) host.add_edge(u, v);
    auto res = regular_spanning_subdigraph(host, r);
    if (res.feasible()) return std::move(*res.subgraph);
  }
  throw std::runtime_error("no feasible r-regular subdigraph after " + std::to_string(attempts) +
                           " supergraph draws (n=" + std::to_string(n) +
                           ", r=" + std::to_string(r) + ")");
}

}  // namespace hamdec
