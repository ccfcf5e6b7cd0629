#include "cayleycast/cayley.hpp"
#include "cayleycast/error.hpp"
#include "doctest.h"

using namespace cayleycast;

namespace {

CayleyGraph cayley(std::string_view group, std::string_view gens) {
  const GroupSpec g = parse_group_spec(group);
  return build_cayley(g, parse_generators(g, gens));
}

bool is_cycle_graph(const Graph& g) {
  if (!g.is_connected()) return false;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != 2) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("build_cayley examples") {
  const CayleyGraph q3 = cayley("z2pow(3)", "100,010,001");
  CHECK(q3.vertex_count() == 8);
  CHECK(q3.graph().edge_count() == 12);
  CHECK(q3.graph().max_degree() == 3);

  const CayleyGraph k2 = cayley("cyclic(2)", "1");
  CHECK(k2.vertex_count() == 2);
  CHECK(k2.graph().edge_count() == 1);

  const CayleyGraph ex = cayley("semidirect(12,13,2)", "(7,1),(5,7),(6,0)");
  CHECK(ex.vertex_count() == 156);
  CHECK(ex.connected());
  for (Vertex v = 0; v < ex.vertex_count(); ++v) CHECK(ex.graph().degree(v) == 3);
}

TEST_CASE("build_cayley errors and warnings") {
  CHECK_THROWS_AS(cayley("cyclic(5)", "1"), InvalidGenerators);
  CHECK_THROWS_AS(cayley("cyclic(5)", "0,1,4"), InvalidGenerators);
  CHECK_THROWS_AS(cayley("z2pow(21)", "1" + std::string(20, '0')), GroupTooLarge);

  const CayleyGraph c4 = cayley("cyclic(4)", "2");
  CHECK_FALSE(c4.connected());
  CHECK_FALSE(c4.warning().empty());
  CHECK_FALSE(c4.graph().is_connected());
}

TEST_CASE("adjacency follows the a*s = b rule exactly") {
  for (const auto& [group, gens] : std::vector<std::pair<const char*, const char*>>{
           {"dihedral(7)", "(1,0),(1,1),(1,3)"},
           {"semidirect(12,13,2)", "(7,1),(5,7),(6,0)"},
           {"product(cyclic(5),z2pow(2))", "(1,00),(4,00),(0,10),(0,01)"},
           {"cyclic(6)", "1,5,3"}}) {
    const CayleyGraph cg = cayley(group, gens);
    const GroupSpec& g = cg.group();
    const auto all = enumerate_elements(g);
    for (Vertex u = 0; u < all.size(); ++u) {
      for (Vertex v = 0; v < all.size(); ++v) {
        bool rule = false;
        for (const auto& s : cg.generators()) rule = rule || multiply(g, all[u], s) == all[v];
        REQUIRE(cg.graph().has_edge(u, v) == rule);
      }
      for (std::size_t j = 0; j < cg.degree(); ++j) {
        CHECK(cg.neighbor(u, j) == cg.vertex(multiply(g, all[u], cg.generators()[j])));
        CHECK(cg.neighbor(cg.neighbor(u, j), cg.inverse_index(j)) == u);
      }
      CHECK(cg.graph().degree(u) == cg.degree());
    }
  }
}

TEST_CASE("connectivity matches generation") {
  for (const auto& [group, gens] : std::vector<std::pair<const char*, const char*>>{
           {"cyclic(12)", "4,8"},
           {"cyclic(12)", "3,9,4,8"},
           {"dihedral(6)", "(1,0),(1,2)"},
           {"dihedral(6)", "(1,0),(1,1)"},
           {"z2pow(3)", "100,010"},
           {"semidirect(12,13,2)", "(6,0),(0,1),(0,12)"}}) {
    const CayleyGraph cg = cayley(group, gens);
    const auto report = validate_generators(cg.group(), cg.generators());
    CHECK(cg.connected() == report.generates);
    CHECK(cg.graph().is_connected() == report.generates);
  }
}

TEST_CASE("hypercube") {
  CHECK(hypercube(1).graph().edge_count() == 1);
  const CayleyGraph q3 = hypercube(3);
  CHECK(q3.vertex_count() == 8);
  CHECK(q3.graph().edge_count() == 12);
  CHECK(format_generators(q3.group(), q3.generators()) == "100,010,001");
  CHECK(hypercube(10).vertex_count() == 1024);
  CHECK_THROWS_AS(hypercube(0), Error);
  for (unsigned r = 1; r <= 10; ++r) CHECK(diameter(hypercube(r).graph()) == r);
}

TEST_CASE("product_with_k2") {
  const Graph c4 = product_with_k2(hypercube(1).graph());
  CHECK(c4.vertex_count() == 4);
  CHECK(is_cycle_graph(c4));

  const Graph q4 = product_with_k2(hypercube(3).graph());
  CHECK(q4.vertex_count() == 16);
  CHECK(q4.edge_count() == hypercube(4).graph().edge_count());
  CHECK(diameter(q4) == 4);
  for (Vertex v = 0; v < 16; ++v) CHECK(q4.degree(v) == 4);

  const Graph pk = product_with_k2(named_graph("petersen"));
  CHECK(pk.vertex_count() == 20);
  CHECK(pk.max_degree() == 4);
  CHECK(pk.is_connected());

  const Graph two = product_with_k2(product_with_k2(named_graph("cycle(5)")));
  CHECK(two.vertex_count() == 20);
  CHECK(two.max_degree() == 4);
}

TEST_CASE("named graphs") {
  const Graph p = named_graph("petersen");
  CHECK(p.vertex_count() == 10);
  CHECK(p.edge_count() == 15);
  for (Vertex v = 0; v < 10; ++v) CHECK(p.degree(v) == 3);
  // inner pentagram 5-7-9-6-8-5
  CHECK(p.has_edge(5, 7));
  CHECK(p.has_edge(7, 9));
  CHECK(p.has_edge(9, 6));
  CHECK(p.has_edge(6, 8));
  CHECK(p.has_edge(8, 5));
  CHECK(p.has_edge(0, 5));
  CHECK(p.has_edge(4, 0));

  CHECK(is_cycle_graph(named_graph("cycle(4)")));
  CHECK(named_graph("cycle(4)").vertex_count() == 4);
  CHECK(named_graph("complete(3)").edge_count() == 3);
  CHECK_THROWS_AS(named_graph("heawood"), Error);
  CHECK_THROWS_AS(named_graph("cycle(2)"), Error);
}

TEST_CASE("diameter") {
  CHECK(diameter(named_graph("petersen")) == 2);
  CHECK(diameter(named_graph("complete(3)")) == 1);
  CHECK(diameter(named_graph("cycle(10)")) == 5);
  CHECK_THROWS_AS(diameter(cayley("cyclic(4)", "2").graph()), InvalidGraph);
}

TEST_CASE("export and re-import") {
  CHECK(export_graph(hypercube(1).graph(), GraphFormat::edge_list) == "0 1");
  CHECK(export_graph(named_graph("complete(3)"), GraphFormat::edge_list) == "0 1\n0 2\n1 2");

  const std::string dot = export_graph(named_graph("cycle(4)"), GraphFormat::dot);
  CHECK(dot.rfind("graph ", 0) == 0);
  std::size_t edges = 0, pos = 0;
  while ((pos = dot.find(" -- ", pos)) != std::string::npos) {
    ++edges;
    ++pos;
  }
  CHECK(edges == 4);
  for (const char* node : {"  0;", "  1;", "  2;", "  3;"}) CHECK(dot.find(node) != std::string::npos);

  const Graph p = named_graph("petersen");
  const Graph back = parse_edge_list(export_graph(p, GraphFormat::edge_list));
  CHECK(back.edges() == p.edges());
  CHECK(parse_edge_list("# comment\n0 1\n\n1 2\n", 5).vertex_count() == 5);
  CHECK_THROWS_AS(parse_edge_list("0 0"), Error);
  CHECK_THROWS_AS(parse_edge_list("0 x"), Error);
}
