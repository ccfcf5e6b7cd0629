#include "cayleycast/bounds.hpp"
#include "cayleycast/error.hpp"
#include "cayleycast/exact.hpp"
#include "cayleycast/families.hpp"
#include "doctest.h"

using namespace cayleycast;

TEST_CASE("dihedral family examples") {
  const FamilyWitness w3 = dihedral_family(3);
  CHECK(w3.group == GroupSpec::dihedral(7));
  CHECK(format_generators(w3.group, w3.generators) == "(1,0),(1,1),(1,3)");
  CHECK(w3.expected_order == 14);
  CHECK(w3.expected_round == 4);

  const FamilyWitness w2 = dihedral_family(2);
  CHECK(w2.group == GroupSpec::dihedral(3));
  CHECK(format_generators(w2.group, w2.generators) == "(1,0),(1,1)");
  CHECK(verify_family_witness(w2).passed());

  const FamilyWitness w4 = dihedral_family(4);
  CHECK(w4.expected_order == 30);
  CHECK(verify_family_witness(w4).passed());

  CHECK_THROWS_AS(dihedral_family(1), Error);
  CHECK_THROWS_AS(dihedral_family(30), GroupTooLarge);
}

TEST_CASE("verify_family_witness") {
  const auto r3 = verify_family_witness(dihedral_family(3));
  CHECK(r3.passed());
  CHECK(moore_bound(3, 4) == 14);

  const FamilyWitness w10 = dihedral_family(10);
  const auto r10 = verify_family_witness(w10);
  CHECK(r10.passed());
  CHECK(w10.expected_order == 2046);
  REQUIRE(r10.trace);
  CHECK(r10.trace->completion_round == 11U);

  FamilyWitness tampered = dihedral_family(4);
  tampered.generators.pop_back();
  tampered.scheme = BroadcastScheme::fixed();
  const auto bad = verify_family_witness(tampered);
  CHECK_FALSE(bad.passed());
  REQUIRE(bad.first_failure());
  CHECK(bad.first_failure()->name == "degree");
  CHECK(summarize(tampered, bad).find("FAILED degree") != std::string::npos);

  FamilyWitness slow = hypercube_family(3);
  slow.expected_round = 2;
  slow.time = 2;
  CHECK_FALSE(verify_family_witness(slow).passed());

  FamilyWitness wrong_order = cycle_family(4);
  wrong_order.expected_order = 10;
  CHECK(verify_family_witness(wrong_order).first_failure()->name == "order");
}

TEST_CASE("summary line") {
  const FamilyWitness w = dihedral_family(5);
  CHECK(summarize(w, verify_family_witness(w)) ==
        "dihedral(31): order 62 = M(5,6), completes in 6 \xE2\x80\x94 OPTIMAL");
}

TEST_CASE("dihedral family informed sets follow the T_k formula") {
  for (unsigned d = 2; d <= 10; ++d) {
    const FamilyWitness w = dihedral_family(d);
    const auto report = verify_family_witness(w);
    REQUIRE(report.passed());
    CHECK(w.expected_order == (std::uint64_t{1} << (d + 1)) - 2);
    CHECK(moore_bound(d, d + 1) == w.expected_order);
    const CayleyGraph cg = build_cayley(w.group, w.generators);
    CHECK(dihedral_growth_matches(cg, *report.trace, d));
    for (const auto& s : w.generators) CHECK(is_involution(w.group, s));

    // hand check of the set formula against informed_time
    for (Vertex v = 0; v < cg.vertex_count(); ++v) {
      const Element e = cg.element(v);
      const int t = report.trace->informed_time[v];
      for (unsigned k = 1; k <= d; ++k) {
        const bool in_formula = e.coords[1] <= (std::uint64_t{1} << (k - 1)) - 1;
        CHECK((t >= 0 && t <= static_cast<int>(k)) == in_formula);
      }
    }
  }
}

TEST_CASE("growth check notices a different schedule") {
  const FamilyWitness w = dihedral_family(4);
  const CayleyGraph cg = build_cayley(w.group, w.generators);
  std::vector<Element> reversed(w.generators.rbegin(), w.generators.rend());
  reversed.push_back(w.generators.back());
  const auto other = simulate(cg, BroadcastScheme::rounds(reversed), 0);
  CHECK(other.completion_round);
  CHECK_FALSE(dihedral_growth_matches(cg, other, 4));
}

TEST_CASE("hypercube family") {
  const FamilyWitness w3 = hypercube_family(3);
  CHECK(w3.expected_order == 8);
  CHECK(w3.expected_round == 3);
  CHECK(verify_family_witness(w3).passed());
  CHECK(verify_family_witness(hypercube_family(1)).passed());
  const FamilyWitness w9 = hypercube_family(9);
  CHECK(w9.expected_order == 512);
  CHECK(verify_family_witness(w9).passed());
  for (unsigned d = 1; d <= 12; ++d) CHECK(moore_bound(d, d) == hypercube_family(d).expected_order);
}

TEST_CASE("cycle family reproduces the delta = 2 row") {
  for (unsigned t = 2; t <= 10; ++t) {
    const FamilyWitness w = cycle_family(t);
    CHECK(w.expected_order == 2 * t);
    CHECK(verify_family_witness(w).passed());
  }
}

TEST_CASE("K2 product witnesses") {
  const auto from_cube = lift_through_k2(hypercube_family(3));
  REQUIRE(from_cube);
  CHECK(from_cube->expected_order == 16);
  CHECK(from_cube->delta == 4);
  CHECK(from_cube->scheme.kind == BroadcastScheme::Kind::fixed_order);

  const auto from_dihedral = lift_through_k2(dihedral_family(3));
  REQUIRE(from_dihedral);
  CHECK(from_dihedral->expected_order == 28);
  CHECK(verify_family_witness(*from_dihedral).trace->completion_round == 5U);

  // the natural fixed-order lift does not work on cycles; permutations do
  const FamilyWitness natural = k2_product_witness(cycle_family(5));
  CHECK_FALSE(verify_family_witness(natural).passed());
  const auto from_cycle = lift_through_k2(cycle_family(5));
  REQUIRE(from_cycle);
  CHECK(from_cycle->scheme.kind == BroadcastScheme::Kind::receipt_permutations);
  CHECK(from_cycle->expected_order == 20);

  // twice lifted, as used when seeding
  const auto twice = lift_through_k2(*from_cycle);
  REQUIRE(twice);
  CHECK(twice->expected_order == 40);
  CHECK(twice->time == 7);
}

TEST_CASE("K2 product adds at most one round") {
  std::vector<Graph> graphs{hypercube(1).graph(), named_graph("cycle(4)"), hypercube(3).graph(),
                            named_graph("petersen")};
  for (const Graph& g : graphs) {
    const unsigned b = exact_broadcast_time(g);
    CHECK(exact_broadcast_time(product_with_k2(g)) <= b + 1);
  }
}
