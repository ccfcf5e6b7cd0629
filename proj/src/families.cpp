#include "cayleycast/families.hpp"

#include <algorithm>

#include "cayleycast/bounds.hpp"
#include "cayleycast/error.hpp"

namespace cayleycast {

FamilyWitness dihedral_family(unsigned delta, std::uint64_t limit) {
  if (delta < 2) throw InvalidGroup("the dihedral family starts at delta = 2");
  if (delta >= 62 || (std::uint64_t{1} << (delta + 1)) - 2 > limit) {
    throw GroupTooLarge("dihedral family at delta " + std::to_string(delta) +
                        " exceeds the order limit " + std::to_string(limit));
  }
  const std::uint64_t n = (std::uint64_t{1} << delta) - 1;
  FamilyWitness w;
  w.family = "dihedral";
  w.delta = delta;
  w.time = delta + 1;
  w.group = GroupSpec::dihedral(n);
  for (unsigned j = 0; j < delta; ++j) {
    w.generators.push_back(Element{{1, (std::uint64_t{1} << j) - 1}});
  }
  w.scheme = theorem1_scheme(delta);
  w.expected_order = 2 * n;
  w.expected_round = delta + 1;
  w.claims_optimal = true;
  return w;
}

FamilyWitness hypercube_family(unsigned delta, std::uint64_t limit) {
  if (delta < 1) throw InvalidGroup("the hypercube family starts at delta = 1");
  if (delta > 62 || (std::uint64_t{1} << delta) > limit) {
    throw GroupTooLarge("hypercube family at delta " + std::to_string(delta) +
                        " exceeds the order limit " + std::to_string(limit));
  }
  FamilyWitness w;
  w.family = "hypercube";
  w.delta = delta;
  w.time = delta;
  w.group = GroupSpec::z2pow(delta);
  for (unsigned j = 0; j < delta; ++j) {
    w.generators.push_back(Element{{std::uint64_t{1} << (delta - 1 - j)}});
  }
  w.scheme = BroadcastScheme::fixed();
  w.expected_order = std::uint64_t{1} << delta;
  w.expected_round = delta;
  w.claims_optimal = true;
  return w;
}

FamilyWitness cycle_family(unsigned time) {
  if (time < 2) throw InvalidGroup("the cycle family starts at t = 2");
  const std::uint64_t n = 2 * static_cast<std::uint64_t>(time);
  FamilyWitness w;
  w.family = "cycle";
  w.delta = 2;
  w.time = time;
  w.group = GroupSpec::cyclic(n);
  w.generators = {Element{{1}}, Element{{n - 1}}};
  w.scheme = BroadcastScheme::fixed();
  w.expected_order = n;
  w.expected_round = time;
  w.claims_optimal = true;
  return w;
}

FamilyWitness k2_product_witness(const FamilyWitness& base, K2Lift lift) {
  FamilyWitness w;
  w.family = base.family + "+k2";
  w.delta = base.delta + 1;
  w.time = base.time + 1;
  w.group = GroupSpec::product(base.group, GroupSpec::cyclic(2));
  Element swap = identity(base.group);
  swap.coords.push_back(1);
  std::vector<Element> lifted;
  for (const auto& s : base.generators) {
    Element e = s;
    e.coords.push_back(0);
    lifted.push_back(std::move(e));
  }
  const std::size_t k = base.generators.size();

  if (base.scheme.kind == BroadcastScheme::Kind::round_generators) {
    w.generators = lifted;
    w.generators.push_back(swap);
    std::vector<Element> rounds{swap};
    for (const auto& g : base.scheme.round_generators) {
      Element e = g;
      e.coords.push_back(0);
      rounds.push_back(std::move(e));
    }
    w.scheme = BroadcastScheme::rounds(std::move(rounds));
  } else if (base.scheme.kind == BroadcastScheme::Kind::fixed_order &&
             lift == K2Lift::natural) {
    // swap first: the twin of the origin then resumes at s_1 exactly like the
    // origin of the base graph, and every other vertex reaches the swap only
    // after its base calls
    w.generators.push_back(swap);
    w.generators.insert(w.generators.end(), lifted.begin(), lifted.end());
    w.scheme = BroadcastScheme::fixed();
  } else {
    w.generators = lifted;
    w.generators.push_back(swap);
    std::vector<std::vector<std::size_t>> perms = base.scheme.permutations;
    if (base.scheme.kind == BroadcastScheme::Kind::fixed_order) {
      perms.assign(1, std::vector<std::size_t>(k));
      for (std::size_t j = 0; j < k; ++j) perms[0][j] = j;
    }
    // origin: swap first; a vertex informed at time i + 1 behaves like one
    // informed at time i in the base graph, calling its twin last
    std::vector<std::vector<std::size_t>> shifted;
    shifted.push_back({k});
    shifted[0].insert(shifted[0].end(), perms[0].begin(), perms[0].end());
    for (const auto& p : perms) {
      auto q = p;
      q.push_back(k);
      shifted.push_back(std::move(q));
    }
    w.scheme = BroadcastScheme::receipt(std::move(shifted));
  }
  w.expected_order = 2 * base.expected_order;
  w.expected_round = base.expected_round + 1;
  w.claims_optimal = Count(w.expected_order) == moore_bound(w.delta, w.time);
  return w;
}

std::optional<FamilyWitness> lift_through_k2(const FamilyWitness& base, std::uint64_t limit) {
  for (K2Lift lift : {K2Lift::natural, K2Lift::permutations}) {
    FamilyWitness w = k2_product_witness(base, lift);
    if (w.group.order() > limit) return std::nullopt;
    if (verify_family_witness(w, limit).passed()) return w;
  }
  return std::nullopt;
}

bool VerificationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerificationReport::first_failure() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

VerificationReport verify_family_witness(const FamilyWitness& w, std::uint64_t limit) {
  VerificationReport report;
  auto check = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  };

  if (w.group.order() > limit) {
    check("size", false, w.group.to_string() + " exceeds the order limit");
    return report;
  }
  const GeneratorReport gens = validate_generators(w.group, w.generators, limit);
  std::string problems;
  for (const auto& p : gens.problems) problems += (problems.empty() ? "" : "; ") + p;
  if (!check("generators", gens.ok(), gens.ok() ? "inverse-closed, generates the group" : problems)) {
    return report;
  }

  const CayleyGraph cg = build_cayley(w.group, w.generators, limit);
  check("order", cg.vertex_count() == w.expected_order,
        "order " + std::to_string(cg.vertex_count()) + ", expected " +
            std::to_string(w.expected_order));
  check("degree", cg.degree() == w.delta && cg.graph().max_degree() == w.delta,
        "degree " + std::to_string(cg.graph().max_degree()) + ", expected " +
            std::to_string(w.delta));

  try {
    SimulationOptions opts;
    opts.max_rounds = std::max(w.expected_round, default_max_rounds(cg.vertex_count(), cg.degree()));
    SimulationTrace trace = simulate(cg, w.scheme, cg.identity_vertex(), opts);
    if (trace.completion_round) {
      check("completion", *trace.completion_round == w.expected_round && *trace.completion_round <= w.time,
            "completes in " + std::to_string(*trace.completion_round) + ", expected " +
                std::to_string(w.expected_round));
    } else {
      check("completion", false, "incomplete after " + std::to_string(*opts.max_rounds) + " rounds");
    }
    report.trace = std::move(trace);
  } catch (const SchemeMismatch& e) {
    check("completion", false, std::string("scheme mismatch: ") + e.what());
  }

  const Count bound = moore_bound(w.delta, w.time);
  const Count order(cg.vertex_count());
  check("bound", order <= bound,
        "order " + order.str() + " vs M(" + std::to_string(w.delta) + "," + std::to_string(w.time) +
            ")=" + bound.str());
  if (w.claims_optimal) {
    check("optimal", order == bound,
          "order " + order.str() + (order == bound ? " = " : " != ") + "M(" +
              std::to_string(w.delta) + "," + std::to_string(w.time) + ")");
  }
  return report;
}

bool dihedral_growth_matches(const CayleyGraph& cg, const SimulationTrace& trace, unsigned delta) {
  if (cg.group().kind() != GroupSpec::Kind::dihedral) return false;
  for (unsigned k = 0; k <= delta; ++k) {
    const std::uint64_t top = k == 0 ? 0 : (std::uint64_t{1} << (k - 1)) - 1;
    for (Vertex v = 0; v < cg.vertex_count(); ++v) {
      const Element e = cg.element(v);
      const bool expected = k == 0 ? v == cg.identity_vertex() : e.coords[1] <= top;
      const int t = trace.informed_time.at(v);
      const bool informed = t >= 0 && static_cast<unsigned>(t) <= k;
      if (expected != informed) return false;
    }
  }
  return true;
}

std::string summarize(const FamilyWitness& w, const VerificationReport& report) {
  const std::string m = "M(" + std::to_string(w.delta) + "," + std::to_string(w.time) + ")";
  const Count bound = moore_bound(w.delta, w.time);
  std::string out = w.group.to_string() + ": order " + std::to_string(w.expected_order);
  if (!report.passed()) {
    const Check* bad = report.first_failure();
    return out + " FAILED " + bad->name + ": " + bad->detail;
  }
  const Count order(w.expected_order);
  if (order == bound) {
    out += " = " + m;
  } else {
    out += " < " + m + " = " + bound.str();
  }
  const unsigned rounds = report.trace && report.trace->completion_round ? *report.trace->completion_round : 0;
  out += ", completes in " + std::to_string(rounds);
  if (order == bound) out += " \xE2\x80\x94 OPTIMAL";
  return out;
}

}  // namespace cayleycast
