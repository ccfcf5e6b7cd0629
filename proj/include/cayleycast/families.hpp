#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cayleycast/broadcast.hpp"
#include "cayleycast/cayley.hpp"
#include "cayleycast/group.hpp"

namespace cayleycast {

/// A self-contained (group, generators, scheme) triple claimed to be a
/// (delta, time)-broadcast network of a given order.
struct FamilyWitness {
  std::string family;
  unsigned delta = 0;
  unsigned time = 0;
  GroupSpec group = GroupSpec::cyclic(1);
  GeneratorSet generators;
  BroadcastScheme scheme;
  std::uint64_t expected_order = 0;
  unsigned expected_round = 0;
  bool claims_optimal = false;
};

/// dihedral(2^delta - 1) with the reflections w x^(2^j - 1), j = 0..delta-1,
/// scheduled by theorem1_scheme; order 2^(delta+1) - 2 in delta + 1 rounds.
FamilyWitness dihedral_family(unsigned delta, std::uint64_t limit = kDefaultOrderLimit);

/// Q_delta with fixed generator order; order 2^delta in delta rounds.
FamilyWitness hypercube_family(unsigned delta, std::uint64_t limit = kDefaultOrderLimit);

/// C_{2t} as cyclic(2t) with generators +1, -1; order 2t in t rounds.
FamilyWitness cycle_family(unsigned time);

enum class K2Lift {
  /// Keep the scheme kind: round schedules gain a leading swap round, fixed
  /// orders gain the swap generator in front.
  natural,
  /// Express the lifted scheme as receipt permutations.
  permutations,
};

/// Lifts a witness through the Cartesian product with K2: group becomes
/// product(G, cyclic(2)) with the extra generator (e, 1) called first by the
/// origin, after which both copies replay the original scheme in lockstep.
/// The result is a claim; verify it before use.
FamilyWitness k2_product_witness(const FamilyWitness& base, K2Lift lift = K2Lift::natural);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;
  std::optional<SimulationTrace> trace;

  bool passed() const noexcept;
  const Check* first_failure() const noexcept;
};

/// Rebuilds the graph, validates the generators, replays the scheme from the
/// identity, and checks order, degree, completion round, and (when claimed)
/// that the order meets the Moore-type bound.
VerificationReport verify_family_witness(const FamilyWitness& w,
                                         std::uint64_t limit = kDefaultOrderLimit);

/// First lift (natural, then permutations) that replays in time + 1 rounds.
std::optional<FamilyWitness> lift_through_k2(const FamilyWitness& base,
                                             std::uint64_t limit = kDefaultOrderLimit);

/// True when, for k = 0..delta, the vertices informed by round k are exactly
/// { w^a x^i : a in {0,1}, 0 <= i <= 2^(k-1) - 1 } (just the identity at k = 0).
bool dihedral_growth_matches(const CayleyGraph& cg, const SimulationTrace& trace, unsigned delta);

/// One-line summary, e.g. "dihedral(31): order 62 = M(5,6), completes in 6 — OPTIMAL".
std::string summarize(const FamilyWitness& w, const VerificationReport& report);

}  // namespace cayleycast
