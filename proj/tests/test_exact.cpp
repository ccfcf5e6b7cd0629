#include <random>

#include "cayleycast/error.hpp"
#include "cayleycast/exact.hpp"
#include "cayleycast/families.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cayleycast;

namespace {

Graph star(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges, "star");
}

Graph path(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Graph(n, edges, "path");
}

// connected: a random spanning tree plus extra random edges
Graph random_connected(std::size_t n, double extra, std::mt19937_64& rng) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(static_cast<Vertex>(rng() % v), v);
  std::bernoulli_distribution coin(extra);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges, "random");
}

std::vector<Graph> small_graphs() {
  std::vector<Graph> out;
  for (int n = 3; n <= 10; ++n) out.push_back(named_graph("cycle(" + std::to_string(n) + ")"));
  for (int n = 1; n <= 7; ++n) out.push_back(named_graph("complete(" + std::to_string(n) + ")"));
  out.push_back(named_graph("petersen"));
  out.push_back(hypercube(3).graph());
  out.push_back(star(3));
  out.push_back(star(6));
  out.push_back(path(7));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 12; ++i) out.push_back(random_connected(4 + i % 6, 0.15, rng));
  return out;
}

}  // namespace

TEST_CASE("exact examples") {
  const Graph p = named_graph("petersen");
  for (Vertex v = 0; v < 10; ++v) CHECK(exact_broadcast_time_from(p, v).rounds == 4);
  CHECK(exact_broadcast_time(p) == 4);
  CHECK(exact_broadcast_time_from(hypercube(1).graph(), 0).rounds == 1);
  CHECK(exact_broadcast_time(named_graph("cycle(5)")) == 3);
  CHECK(exact_broadcast_time(hypercube(3)) == 3);
  CHECK(exact_broadcast_time(hypercube(3).graph()) == 3);
  CHECK(exact_broadcast_time(named_graph("complete(4)")) == 2);
  CHECK(exact_broadcast_time(named_graph("complete(1)")) == 0);
}

TEST_CASE("exact solver errors") {
  CHECK_THROWS_AS(exact_broadcast_time(named_graph("cycle(21)")), Error);
  try {
    exact_broadcast_time(named_graph("cycle(50)"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("exceeds exact-solver cap") != std::string::npos);
  }
  ExactOptions wide;
  wide.vertex_cap = 22;
  CHECK(exact_broadcast_time_from(named_graph("cycle(21)"), 0, wide).rounds == 11);

  const std::vector<std::pair<Vertex, Vertex>> edges{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(exact_broadcast_time(Graph(4, edges)), InvalidGraph);
  CHECK_THROWS_AS(greedy_upper_bound(Graph(4, edges), 0), InvalidGraph);
}

TEST_CASE("branch and bound agrees with the unpruned oracle for n <= 10") {
  for (const Graph& g : small_graphs()) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (g.vertex_count() > 8 && v > 2) break;
      const ExactResult r = exact_broadcast_time_from(g, v);
      REQUIRE(r.rounds == oracle::exhaustive_broadcast_time(g, v));
    }
  }
}

TEST_CASE("witness schedules replay") {
  std::vector<Graph> graphs = small_graphs();
  graphs.push_back(product_with_k2(named_graph("petersen")));
  graphs.push_back(hypercube(4).graph());
  for (const Graph& g : graphs) {
    const ExactResult r = exact_broadcast_time_from(g, 0);
    const auto report = validate_trace(g, r.witness);
    REQUIRE_MESSAGE(report.valid, report.message);
    REQUIRE(r.witness.completion_round == r.rounds);
    REQUIRE(r.witness.rounds.size() == r.rounds);
  }
}

TEST_CASE("cycle law: b(C_n) = ceil(n / 2)") {
  for (int n = 3; n <= 12; ++n) {
    const Graph c = named_graph("cycle(" + std::to_string(n) + ")");
    CHECK(exact_broadcast_time(c) == static_cast<unsigned>((n + 1) / 2));
    if (n <= 10) CHECK(oracle::exhaustive_broadcast_time(c, 0) == static_cast<unsigned>((n + 1) / 2));
  }
}

TEST_CASE("log2 lower bound") {
  CHECK(log2_lower_bound(named_graph("petersen")) == 4);
  CHECK(log2_lower_bound(hypercube(1).graph()) == 1);
  const std::vector<std::pair<Vertex, Vertex>> none;
  CHECK(log2_lower_bound(Graph(156, none)) == 8);
}

TEST_CASE("greedy upper bound") {
  CHECK(greedy_upper_bound(hypercube(1).graph(), 0) == 1);
  CHECK(greedy_upper_bound(star(3), 0) == 3);
  const unsigned pet = greedy_upper_bound(named_graph("petersen"), 0);
  CHECK(pet >= 4);
  CHECK(pet <= default_max_rounds(10, 3));
  const SimulationTrace t = greedy_schedule(named_graph("petersen"), 0);
  CHECK(validate_trace(named_graph("petersen"), t).valid);
  CHECK(t.completion_round == pet);
}

TEST_CASE("sandwich: log2 <= exact <= greedy") {
  std::vector<Graph> graphs = small_graphs();
  graphs.push_back(product_with_k2(named_graph("petersen")));
  for (int n = 11; n <= 20; ++n) graphs.push_back(named_graph("cycle(" + std::to_string(n) + ")"));
  for (const Graph& g : graphs) {
    const unsigned lo = log2_lower_bound(g);
    const unsigned ex = exact_broadcast_time_from(g, 0).rounds;
    const unsigned gr = greedy_upper_bound(g, 0);
    CHECK(lo <= ex);
    CHECK(ex <= gr);
  }
}

TEST_CASE("sandwich on Cayley graphs: exact <= greedy <= scheme") {
  std::vector<std::pair<CayleyGraph, BroadcastScheme>> cases;
  for (unsigned d = 1; d <= 4; ++d) cases.emplace_back(hypercube(d), BroadcastScheme::fixed());
  for (unsigned t = 2; t <= 10; ++t) {
    const auto w = cycle_family(t);
    cases.emplace_back(build_cayley(w.group, w.generators), w.scheme);
  }
  for (unsigned d = 2; d <= 3; ++d) {
    const auto w = dihedral_family(d);
    cases.emplace_back(build_cayley(w.group, w.generators), w.scheme);
  }
  const GroupSpec q = parse_group_spec("product(cyclic(8),cyclic(2))");
  cases.emplace_back(build_cayley(q, parse_generators(q, "(1,0),(7,0),(0,1)")),
                     parse_scheme(q, "perm: 3,1,2; 1,2,3"));
  for (const auto& [cg, scheme] : cases) {
    const unsigned ex = exact_broadcast_time(cg);
    const unsigned gr = greedy_upper_bound(cg.graph(), 0);
    const auto sc = broadcast_time_under_scheme(cg, scheme);
    REQUIRE(sc);
    CHECK(log2_lower_bound(cg.graph()) <= ex);
    CHECK(ex <= gr);
    CHECK(gr <= *sc);
  }
}
