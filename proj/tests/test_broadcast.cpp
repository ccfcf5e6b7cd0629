#include <random>

#include "cayleycast/broadcast.hpp"
#include "cayleycast/error.hpp"
#include "cayleycast/families.hpp"
#include "doctest.h"

using namespace cayleycast;

namespace {

CayleyGraph cayley(const char* group, const char* gens) {
  const GroupSpec g = parse_group_spec(group);
  return build_cayley(g, parse_generators(g, gens));
}

std::vector<CayleyGraph> property_graphs() {
  std::vector<CayleyGraph> out;
  for (const auto& [group, gens] : std::vector<std::pair<const char*, const char*>>{
           {"cyclic(2)", "1"},
           {"cyclic(10)", "1,9"},
           {"cyclic(13)", "1,12,5,8"},
           {"dihedral(7)", "(1,0),(1,1),(1,3)"},
           {"dihedral(15)", "(1,0),(1,1),(1,3),(1,7)"},
           {"dihedral(50)", "(1,0),(1,1),(0,1),(0,49)"},
           {"z2pow(5)", "10000,01000,00100,00010,00001"},
           {"semidirect(12,13,2)", "(7,1),(5,7),(6,0)"},
           {"semidirect(6,7,3)", "(1,0),(5,0),(3,1)"},
           {"product(cyclic(8),cyclic(2))", "(1,0),(7,0),(0,1)"},
           {"cyclic(12)", "4,8"}}) {
    out.push_back(cayley(group, gens));
  }
  return out;
}

BroadcastScheme random_scheme(const CayleyGraph& cg, std::mt19937_64& rng) {
  const std::size_t k = cg.degree();
  switch (rng() % 3) {
    case 0:
      return BroadcastScheme::fixed();
    case 1: {
      std::vector<std::vector<std::size_t>> perms(1 + rng() % 6, std::vector<std::size_t>(k));
      for (auto& p : perms) {
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
      }
      return BroadcastScheme::receipt(std::move(perms));
    }
    default: {
      std::vector<Element> rounds(1 + rng() % 12);
      for (auto& g : rounds) g = cg.generators()[rng() % k];
      return BroadcastScheme::rounds(std::move(rounds));
    }
  }
}

}  // namespace

TEST_CASE("scheme text round-trips") {
  const GroupSpec d7 = GroupSpec::dihedral(7);
  const BroadcastScheme r = parse_scheme(d7, "rounds: (1,0),(1,1),(1,3),(1,0)");
  CHECK(r.kind == BroadcastScheme::Kind::round_generators);
  CHECK(r.round_generators.size() == 4);
  CHECK(format_scheme(d7, r) == "rounds: (1,0),(1,1),(1,3),(1,0)");

  const BroadcastScheme p = parse_scheme(d7, "perm: 2,1,3; 1,3,2");
  REQUIRE(p.permutations.size() == 2);
  CHECK(p.permutations[0] == std::vector<std::size_t>{1, 0, 2});
  CHECK(format_scheme(d7, p) == "perm: 2,1,3; 1,3,2");

  CHECK(parse_scheme(d7, " fixed ") == BroadcastScheme::fixed());
  CHECK_THROWS_AS(parse_scheme(d7, "spiral"), ParseError);
  CHECK_THROWS_AS(parse_scheme(d7, "perm: 0,1,2"), ParseError);
  CHECK_THROWS_AS(parse_scheme(d7, "rounds: (2,0)"), NotAMember);
}

TEST_CASE("scheme and generator set must agree") {
  const CayleyGraph cg = cayley("dihedral(7)", "(1,0),(1,1),(1,3)");
  const GroupSpec& g = cg.group();
  CHECK_THROWS_AS(simulate(cg, parse_scheme(g, "perm: 1,2"), 0), SchemeMismatch);
  CHECK_THROWS_AS(simulate(cg, parse_scheme(g, "perm: 1,1,2"), 0), SchemeMismatch);
  CHECK_THROWS_AS(simulate(cg, parse_scheme(g, "perm: 1,2,4"), 0), SchemeMismatch);
  CHECK_THROWS_AS(simulate(cg, parse_scheme(g, "rounds: (1,2)"), 0), SchemeMismatch);
  CHECK_THROWS_AS(simulate(cg, BroadcastScheme::fixed(), 14), InvalidGraph);
}

TEST_CASE("simulate examples") {
  const SimulationTrace q3 = simulate(hypercube(3), BroadcastScheme::fixed(), 0);
  REQUIRE(q3.completion_round);
  CHECK(*q3.completion_round == 3);

  const SimulationTrace k2 = simulate(cayley("cyclic(2)", "1"), BroadcastScheme::fixed(), 0);
  CHECK(k2.completion_round == 1U);

  // hand trace: the origin calls +1 then -1; every later vertex keeps walking away from 0
  const CayleyGraph c10 = cayley("cyclic(10)", "1,9");
  const SimulationTrace t = simulate(c10, BroadcastScheme::fixed(), 0);
  CHECK(t.completion_round == 5U);
  CHECK(format_trace(t) ==
        "round 1: 0->1\nround 2: 0->9, 1->2\nround 3: 2->3, 9->8\nround 4: 3->4, 8->7\n"
        "round 5: 4->5, 7->6\n");
  CHECK(t.informed_time[5] == 5);
  CHECK(t.informed_time[6] == 5);
  CHECK(t.informed_time[7] == 4);
}

TEST_CASE("broadcast_time_under_scheme examples") {
  const auto w3 = dihedral_family(3);
  const CayleyGraph d7 = build_cayley(w3.group, w3.generators);
  CHECK(broadcast_time_under_scheme(d7, theorem1_scheme(3)) == 4U);
  CHECK(broadcast_time_under_scheme(hypercube(4), BroadcastScheme::fixed()) == 4U);

  const CayleyGraph ex = cayley("semidirect(12,13,2)", "(7,1),(5,7),(6,0)");
  const BroadcastScheme found = parse_scheme(
      ex.group(), "perm: 3,1,2; 3,1,2; 1,3,2; 3,1,2; 1,2,3; 3,2,1; 3,1,2; 3,1,2; 2,1,3; 2,1,3");
  const auto done = broadcast_time_under_scheme(ex, found);
  REQUIRE(done);
  CHECK(*done <= 10);

  SimulationOptions tight;
  tight.max_rounds = 3;
  CHECK_FALSE(broadcast_time_under_scheme(d7, theorem1_scheme(3), tight));
  CHECK_FALSE(broadcast_time_under_scheme(cayley("cyclic(12)", "4,8"), BroadcastScheme::fixed()));
}

TEST_CASE("keep-receipt-generator restores the naive reading") {
  const CayleyGraph c10 = cayley("cyclic(10)", "1,9");
  SimulationOptions naive;
  naive.keep_receipt_generator = true;
  const auto t = simulate(c10, BroadcastScheme::fixed(), 0, naive);
  // 9 was reached through -1 and wastes its first call on +1, back to 0
  CHECK_FALSE(t.completion_round == 5U);
  CHECK(simulate(hypercube(3), BroadcastScheme::fixed(), 0, naive).completion_round != 3U);
}

TEST_CASE("theorem1_scheme") {
  const GroupSpec d3 = GroupSpec::dihedral(3);
  CHECK(format_scheme(d3, theorem1_scheme(2)) == "rounds: (1,0),(1,1),(1,0)");
  CHECK(format_scheme(GroupSpec::dihedral(7), theorem1_scheme(3)) ==
        "rounds: (1,0),(1,1),(1,3),(1,0)");
  CHECK(format_scheme(GroupSpec::dihedral(15), theorem1_scheme(4)) ==
        "rounds: (1,0),(1,1),(1,3),(1,7),(1,0)");
  CHECK_THROWS_AS(theorem1_scheme(1), Error);
}

TEST_CASE("validate_trace catches violations") {
  const Graph p = named_graph("petersen");
  SimulationTrace t;
  t.origin = 0;
  t.informed_time.assign(10, -1);
  t.informed_time[0] = 0;

  SUBCASE("two calls share a callee") {
    t.rounds = {{{0, 1}}, {{0, 4}, {1, 2}}, {{2, 3}, {4, 3}}};
    const auto r = validate_trace(p, t);
    CHECK_FALSE(r.valid);
    CHECK(r.message.find("matching") != std::string::npos);
    CHECK(r.round == 3U);
  }
  SUBCASE("caller not yet informed") {
    t.rounds = {{{1, 2}}};
    const auto r = validate_trace(p, t);
    CHECK_FALSE(r.valid);
    CHECK(r.message == "caller uninformed");
    CHECK(r.round == 1U);
  }
  SUBCASE("call off the edge set") {
    t.rounds = {{{0, 2}}};
    t.informed_time[2] = 1;
    const auto r = validate_trace(p, t);
    CHECK_FALSE(r.valid);
    CHECK(r.message == "call 0->2 is not along an edge");
  }
  SUBCASE("wrong informed time") {
    t.rounds = {{{0, 1}}};
    t.informed_time[1] = 2;
    CHECK(validate_trace(p, t).message == "informed_time mismatch at vertex 1");
  }
  SUBCASE("bad completion marker") {
    t.rounds = {{{0, 1}}};
    t.informed_time[1] = 1;
    t.completion_round = 1;
    CHECK(validate_trace(p, t).message == "marked complete but not every vertex informed");
  }
}

TEST_CASE("round generators inform T_{k-1} * g_k for involutions") {
  for (unsigned delta = 2; delta <= 10; ++delta) {
    const FamilyWitness w = dihedral_family(delta);
    const CayleyGraph cg = build_cayley(w.group, w.generators);
    const SimulationTrace t = simulate(cg, w.scheme, 0);
    std::vector<bool> known(cg.vertex_count(), false);
    known[0] = true;
    for (std::size_t k = 0; k < w.scheme.round_generators.size(); ++k) {
      const std::size_t j = cg.generator_index(w.scheme.round_generators[k]);
      std::vector<bool> next = known;
      for (Vertex v = 0; v < cg.vertex_count(); ++v) {
        if (known[v]) next[cg.neighbor(v, j)] = true;
      }
      known = std::move(next);
      for (Vertex v = 0; v < cg.vertex_count(); ++v) {
        const bool in_trace = t.informed_time[v] >= 0 && t.informed_time[v] <= int(k + 1);
        REQUIRE(in_trace == known[v]);
      }
    }
  }
}

TEST_CASE("simulated traces are valid and respect the doubling cap") {
  std::mt19937_64 rng(2024);
  std::size_t traces = 0;
  for (const CayleyGraph& cg : property_graphs()) {
    for (int i = 0; i < 60; ++i) {
      const BroadcastScheme s = random_scheme(cg, rng);
      const Vertex origin = static_cast<Vertex>(rng() % cg.vertex_count());
      SimulationOptions opts;
      opts.keep_receipt_generator = (i % 5 == 4);
      const SimulationTrace t = simulate(cg, s, origin, opts);
      const auto report = validate_trace(cg.graph(), t);
      REQUIRE_MESSAGE(report.valid, report.message);
      REQUIRE(doubling_cap_holds(t));
      const auto counts = t.informed_counts();
      for (std::size_t r = 0; r < counts.size(); ++r) REQUIRE(counts[r] <= (std::size_t{1} << r));
      ++traces;
    }
  }
  CHECK(traces == 660);
}

TEST_CASE("simulation is deterministic") {
  std::mt19937_64 rng(5);
  for (const CayleyGraph& cg : property_graphs()) {
    const BroadcastScheme s = random_scheme(cg, rng);
    const SimulationTrace a = simulate(cg, s, 0);
    const SimulationTrace b = simulate(cg, s, 0);
    CHECK(a.rounds == b.rounds);
    CHECK(a.informed_time == b.informed_time);
    CHECK(a.completion_round == b.completion_round);
  }
}

TEST_CASE("vertex transitivity: every origin finishes in the same round") {
  for (const CayleyGraph& cg : property_graphs()) {
    if (!cg.connected()) continue;
    for (const BroadcastScheme& s : {BroadcastScheme::fixed()}) {
      const auto at_identity = simulate(cg, s, 0).completion_round;
      for (Vertex v = 1; v < cg.vertex_count(); v += 7) {
        CHECK(simulate(cg, s, v).completion_round == at_identity);
      }
    }
  }
}

TEST_CASE("log and round limits") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(10) == 4);
  CHECK(ceil_log2(156) == 8);
  CHECK(ceil_log2(1024) == 10);
  CHECK(default_max_rounds(156, 3) == 19);
}
