#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "hamdec/chords.hpp"
#include "hamdec/expander.hpp"
#include "hamdec/generators.hpp"
#include "hamdec/rng.hpp"

using namespace hamdec;

namespace {

Digraph directed_cycle(int n) {
  Digraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

std::vector<Edge> chords_of(const ShiftedWalk& w) {
  std::vector<Edge> out;
  for (const auto& we : w.edges)
    if (we.chord) out.push_back(we.e);
  return out;
}

std::vector<Edge> with_closing_edge(const CycleOrder& c, const ChordSequence& cs) {
  auto edges = cs.edges;
  edges.emplace_back(c.pred(cs.dst), cs.src);
  return edges;
}

}  // namespace

TEST_CASE("cycle orders") {
  auto k5 = complete_digraph(5);
  auto c = CycleOrder::natural(k5);
  CHECK(c.k() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(c.at(i) == i);
    CHECK(c.pos(i) == i);
    CHECK(c.succ(i) == (i + 1) % 5);
    CHECK(c.pred(i) == (i + 4) % 5);
  }
  CHECK(c.is_cycle_edge(2, 3));
  CHECK(!c.is_cycle_edge(3, 2));

  // non-natural order, valid in the +1/+2 rotational tournament
  auto z5 = rotational_tournament(5, {1, 2});
  CycleOrder skip(z5, {0, 2, 4, 1, 3});
  CHECK(skip.succ(0) == 2);
  CHECK(skip.succ(4) == 1);
  CHECK(skip.pred(0) == 3);
  CHECK(skip.pos(4) == 2);

  CHECK_THROWS_AS(CycleOrder(z5, {0, 3, 1, 4, 2}), std::invalid_argument);  // 0->3 missing
  CHECK_THROWS_AS(CycleOrder(k5, {0, 1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(CycleOrder(k5, {0, 1, 2, 3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(CycleOrder(Digraph(1), {0}), std::invalid_argument);
}

TEST_CASE("chord sequences on the complete digraph") {
  auto k5 = complete_digraph(5);
  auto c = CycleOrder::natural(k5);
  Rational nu(1, 4);

  auto res = chord_sequence(k5, c, 0, 0, {}, nu);
  REQUIRE(res.found());
  CHECK(res.sequence->edges.empty());
  CHECK(res.sequence->interior.empty());

  // one traversal suffices: the single chord pred(A) -> B
  res = chord_sequence(k5, c, 0, 2, {}, nu);
  REQUIRE(res.found());
  CHECK(res.sequence->edges == std::vector<Edge>{{4, 2}});
  CHECK(res.sequence->interior.empty());
  CHECK(!res.sequence->forbidden_budget_exceeded);
  CHECK(verify_chain_law(c, *res.sequence));

  // dst equal to pred(src) forces a second traversal
  res = chord_sequence(k5, c, 0, 4, {}, nu);
  REQUIRE(res.found());
  CHECK(res.sequence->edges == std::vector<Edge>{{4, 1}, {0, 4}});
  auto interior = res.sequence->interior;
  std::sort(interior.begin(), interior.end());
  CHECK(interior == std::vector<int>{0, 1});
  CHECK(verify_chain_law(c, *res.sequence));

  CHECK_THROWS_AS(chord_sequence(k5, c, 0, 5, {}, nu), std::invalid_argument);
  CHECK_THROWS_AS(chord_sequence(k5, c, -1, 2, {}, nu), std::invalid_argument);
  CHECK_THROWS_AS(chord_sequence(k5, c, 0, 2, {9}, nu), std::invalid_argument);
  CHECK_THROWS_AS(chord_sequence(k5, c, 0, 2, {}, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(chord_sequence(k5, c, 0, 2, {}, Rational(1)), std::invalid_argument);
}

TEST_CASE("forbidden sets are avoided and over-budget ones flagged") {
  auto z11 = rotational_tournament(11, {1, 2, 3, 4, 5});
  auto c = CycleOrder::natural(z11);
  Rational nu(1, 11);

  // certified expander, so the length bound is in force
  auto cert = certify(z11, ExpanderParams(nu, Rational(1, 5)), CertMode::exhaustive);
  REQUIRE(cert.pass);

  std::vector<int> forbidden{3, 7};
  for (int a = 0; a < 11; ++a)
    for (int b = 0; b < 11; ++b) {
      if (a == 3 || a == 7 || b == 3 || b == 7) continue;
      auto res = chord_sequence(z11, c, a, b, forbidden, nu);
      REQUIRE(res.found());
      CHECK((long long)res.sequence->edges.size() <= (Rational(3) / nu).ceil());
      for (int v : res.sequence->interior) {
        CHECK(v != 3);
        CHECK(v != 7);
      }
      CHECK(verify_chain_law(c, *res.sequence));
    }

  // 4 * |forbidden| > nu * n, so the hypothesis warning fires on success
  auto k5 = complete_digraph(5);
  auto c5 = CycleOrder::natural(k5);
  auto res = chord_sequence(k5, c5, 0, 2, {3}, Rational(1, 5));
  REQUIRE(res.found());
  CHECK(res.sequence->forbidden_budget_exceeded);
}

TEST_CASE("stalls report the reachable set") {
  // a bare cycle has no chords at all: not even a first hop
  auto c6 = directed_cycle(6);
  auto c = CycleOrder::natural(c6);
  auto res = chord_sequence(c6, c, 0, 3, {}, Rational(1, 6));
  CHECK(!res.found());
  CHECK(res.stalled_frontier.empty());

  // one chord gives a first hop but the expansion dies on the spot
  Digraph g = directed_cycle(6);
  g.add_edge(5, 2);
  auto co = CycleOrder::natural(g);
  res = chord_sequence(g, co, 0, 4, {}, Rational(1, 6));
  CHECK(!res.found());
  CHECK(res.stalled_frontier == std::vector<int>{2});
}

TEST_CASE("chain law verification rejects tampered sequences") {
  auto k5 = complete_digraph(5);
  auto c = CycleOrder::natural(k5);

  ChordSequence cs;
  cs.src = 0;
  cs.dst = 4;
  cs.edges = {{4, 1}, {0, 4}};
  CHECK(verify_chain_law(c, cs));

  std::string why;
  auto broken = cs;
  broken.edges[1] = {1, 4};  // consecutive chords must pivot at pred
  CHECK(!verify_chain_law(c, broken, &why));
  CHECK(why == "consecutive chords break the chain law");

  broken = cs;
  broken.edges[0] = {3, 1};
  CHECK(!verify_chain_law(c, broken, &why));
  CHECK(why == "first chord does not leave pred(src)");

  broken = cs;
  broken.edges[1] = {0, 3};
  CHECK(!verify_chain_law(c, broken, &why));
  CHECK(why == "last chord does not enter dst");

  ChordSequence cyc;
  cyc.src = 3;
  cyc.dst = 4;
  cyc.edges = {{2, 3}, {2, 4}};
  CHECK(!verify_chain_law(c, cyc, &why));
  CHECK(why == "chord is a cycle edge");

  ChordSequence trivial;
  trivial.src = trivial.dst = 1;
  CHECK(verify_chain_law(c, trivial));
  trivial.edges = {{0, 1}};
  CHECK(!verify_chain_law(c, trivial, &why));

  ChordSequence empty;
  empty.src = 0;
  empty.dst = 2;
  CHECK(!verify_chain_law(c, empty, &why));
}

TEST_CASE("shifted walks expand and round-trip") {
  auto k5 = complete_digraph(5);
  auto c = CycleOrder::natural(k5);

  ChordSequence trivial;
  trivial.src = trivial.dst = 2;
  auto w = shifted_walk(c, trivial);
  CHECK(w.vertices == std::vector<int>{2});
  CHECK(w.edges.empty());

  // A rides C all the way to pred(A), then one chord lands on B
  auto res = chord_sequence(k5, c, 0, 2, {}, Rational(1, 4));
  REQUIRE(res.found());
  w = shifted_walk(c, *res.sequence);
  CHECK(w.vertices == std::vector<int>{0, 1, 2, 3, 4, 2});
  REQUIRE(w.edges.size() == 5);
  for (int i = 0; i < 4; ++i) CHECK(!w.edges[(size_t)i].chord);
  CHECK(w.edges[4].chord);
  CHECK(w.edges[4].e == Edge{4, 2});
  CHECK(chords_of(w) == res.sequence->edges);

  // consecutive walk edges share their meeting vertex
  Rng rng(4711);
  for (int it = 0; it < 200; ++it) {
    int n = 4 + rng.below(9);
    auto g = complete_digraph(n);
    auto co = CycleOrder::natural(g);
    int a = rng.below(n), b = rng.below(n);
    auto r2 = chord_sequence(g, co, a, b, {}, Rational(1, n));
    REQUIRE(r2.found());
    auto walk = shifted_walk(co, *r2.sequence);
    CHECK(walk.vertices.front() == a);
    CHECK(walk.vertices.back() == b);
    REQUIRE(walk.vertices.size() == walk.edges.size() + 1);
    for (size_t i = 0; i < walk.edges.size(); ++i) {
      CHECK(walk.edges[i].e.first == walk.vertices[i]);
      CHECK(walk.edges[i].e.second == walk.vertices[i + 1]);
      if (!walk.edges[i].chord) CHECK(co.succ(walk.edges[i].e.first) == walk.edges[i].e.second);
    }
    CHECK(chords_of(walk) == r2.sequence->edges);
  }
}

TEST_CASE("local balance recount") {
  auto k12 = complete_digraph(12);
  auto c = CycleOrder::natural(k12);
  CHECK(verify_local_balance(c, {}));

  // twelve-vertex instance: a six-chord sequence from 2 to 6 plus its closing
  // edge 5 -> 2 balances out
  std::vector<Edge> edges{{1, 9}, {8, 3}, {2, 11}, {10, 8}, {7, 4}, {3, 6}, {5, 2}};
  CHECK(verify_local_balance(c, edges));
  for (size_t drop = 0; drop < edges.size(); ++drop) {
    auto fewer = edges;
    fewer.erase(fewer.begin() + (long)drop);
    CHECK(!verify_local_balance(c, fewer));
  }

  CHECK(!verify_local_balance(c, {{0, 12}}));  // out-of-range never balances

  // every successful search balances once its closing edge is added
  Rng rng(99);
  auto z11 = rotational_tournament(11, {1, 2, 3, 4, 5});
  auto c11 = CycleOrder::natural(z11);
  for (int it = 0; it < 300; ++it) {
    int a = rng.below(11), b = rng.below(11);
    auto res = chord_sequence(z11, c11, a, b, {}, Rational(1, 11));
    REQUIRE(res.found());
    CHECK(verify_local_balance(c11, with_closing_edge(c11, *res.sequence)));
    if (a != b) CHECK(!verify_local_balance(c11, res.sequence->edges));
  }
}

TEST_CASE("universal walks on small complete digraphs") {
  auto k5 = complete_digraph(5);
  auto c5 = CycleOrder::natural(k5);
  auto res = universal_walk(k5, c5, 4);
  REQUIRE(res.found());
  CHECK(res.walk->ell == 4);
  CHECK(res.walk->edges.size() == 20);  // 5 vertices, 4 exits each
  std::vector<int> in(5, 0), out(5, 0);
  for (const auto& we : res.walk->edges) {
    ++out[(size_t)we.e.first];
    ++in[(size_t)we.e.second];
  }
  for (int v = 0; v < 5; ++v) {
    CHECK(in[(size_t)v] == 4);
    CHECK(out[(size_t)v] == 4);
  }
  CHECK(verify_universal_walk(k5, c5, *res.walk));

  auto k3 = complete_digraph(3);
  auto c3 = CycleOrder::natural(k3);
  res = universal_walk(k3, c3, 4);
  REQUIRE(res.found());
  CHECK(res.walk->edges.size() == 12);
  CHECK(verify_universal_walk(k3, c3, *res.walk));

  CHECK_THROWS_AS(universal_walk(k5, c5, 3), std::invalid_argument);
  Digraph two(2);
  two.add_edge(0, 1);
  two.add_edge(1, 0);
  CHECK_THROWS_AS(universal_walk(two, CycleOrder::natural(two), 4), std::invalid_argument);

  // greedy stall on a chordless cycle is a NotFound, not a throw
  auto c6 = directed_cycle(6);
  res = universal_walk(c6, CycleOrder::natural(c6), 4);
  CHECK(!res.found());
  CHECK(!res.failure.empty());
}

TEST_CASE("universal walk verification catches tampering") {
  auto k5 = complete_digraph(5);
  auto c = CycleOrder::natural(k5);
  auto res = universal_walk(k5, c, 9);
  REQUIRE(res.found());
  REQUIRE(verify_universal_walk(k5, c, *res.walk));

  auto tampered = *res.walk;
  for (auto& we : tampered.edges)
    if (we.chord) {
      we.chord = false;  // chord multiset no longer matches the sequences
      break;
    }
  CHECK(!verify_universal_walk(k5, c, tampered));

  // adjacent edges (a,b),(b,c) can never swap cleanly: b != a and b != c
  tampered = *res.walk;
  std::swap(tampered.edges[0], tampered.edges[1]);
  CHECK(!verify_universal_walk(k5, c, tampered));

  tampered = *res.walk;
  tampered.ell = 10;
  CHECK(!verify_universal_walk(k5, c, tampered));
}

TEST_CASE("default walk parameter") {
  CHECK(default_walk_parameter(Rational(1, 2)) == 144);
  CHECK(default_walk_parameter(Rational(1, 3)) == 324);
  CHECK(default_walk_parameter(Rational(1, 11)) == 4356);
  CHECK_THROWS_AS(default_walk_parameter(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(default_walk_parameter(Rational(5, 4)), std::invalid_argument);
}

TEST_CASE("json emitters expose the role tags") {
  auto k5 = complete_digraph(5);
  auto c = CycleOrder::natural(k5);
  auto res = chord_sequence(k5, c, 0, 2, {}, Rational(1, 4));
  REQUIRE(res.found());
  auto j = nlohmann::json::parse(chord_sequence_to_json(*res.sequence));
  CHECK(j["src"] == 0);
  CHECK(j["dst"] == 2);
  CHECK(j["edges"].size() == 1);
  CHECK(j["edges"][0][0] == 4);
  CHECK(j["edges"][0][1] == 2);

  auto wres = universal_walk(k5, c, 4);
  REQUIRE(wres.found());
  auto wj = nlohmann::json::parse(universal_walk_to_json(*wres.walk));
  CHECK(wj["ell"] == 4);
  REQUIRE(wj["edges"].size() == wres.walk->edges.size());
  int chords = 0;
  for (const auto& e : wj["edges"]) {
    CHECK((e["role"] == "chord" || e["role"] == "cyclic"));
    if (e["role"] == "chord") {
      ++chords;
      CHECK(e.contains("ecs"));
    }
  }
  CHECK(chords == 5);
}
