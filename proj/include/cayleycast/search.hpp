#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cayleycast/catalog.hpp"
#include "cayleycast/group.hpp"

namespace cayleycast {

enum class GroupFamily { dihedral, cyclic, z2pow, semidirect, fixed };

GroupFamily parse_group_family(std::string_view name);
std::string to_string(GroupFamily family);

enum class SchemePolicy {
  /// FixedOrder over every ordering of the generator set (random orderings
  /// once k! exceeds 720).
  fixed_orderings,
  /// Uniformly random ReceiptPermutations, one permutation per receipt time.
  receipt_permutations,
  /// RoundGenerators schedules of length time: all of them while there are at
  /// most 4096, uniformly random ones otherwise.
  round_generators,
};

SchemePolicy parse_scheme_policy(std::string_view name);
std::string to_string(SchemePolicy policy);

struct SearchSpace {
  GroupFamily family = GroupFamily::dihedral;
  unsigned delta = 3;
  unsigned time = 4;
  /// Groups above this order are skipped; 0 means M(delta, time).
  std::uint64_t max_order = 0;
  std::uint64_t min_order = 2;
  /// Used with GroupFamily::fixed.
  std::optional<GroupSpec> group;
  /// Restricts the search to one generator set (in that order).
  std::optional<GeneratorSet> generators;
  SchemePolicy scheme_policy = SchemePolicy::fixed_orderings;
  /// Random schemes tried per generator set (when not enumerated exhaustively).
  std::uint64_t schemes_per_set = 64;
  /// Maximum number of (group, generators, scheme) candidates evaluated.
  std::uint64_t budget = 10'000;
  /// Wall-clock limit in seconds; 0 disables it. A finite limit makes the
  /// result depend on machine speed.
  double wall_seconds = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  /// Stop after the first batch containing a successful candidate.
  bool stop_at_first = false;
  /// Number of candidates returned.
  std::size_t keep = 20;
};

struct SearchProgress {
  std::uint64_t evaluated = 0;
  std::uint64_t found = 0;
  std::uint64_t best_order = 0;
};

struct SearchResult {
  /// One record per distinct (group, generator set), best order first, then
  /// discovery order.
  std::vector<CatalogRecord> candidates;
  std::uint64_t evaluated = 0;
  /// Candidate index of the first success, if any.
  std::optional<std::uint64_t> first_hit;
  bool budget_exhausted = false;
};

/// Enumerates (group, generators, scheme) triples in a fixed order: groups by
/// decreasing order, inverse-closed generator sets of size delta down to 1 as
/// unions of involutions and inverse pairs (canonical rank order), then the
/// schemes of the policy. Each candidate whose replay from the identity
/// completes within `time` rounds becomes a record. Random choices are seeded
/// per candidate index, so results do not depend on `jobs`.
SearchResult run_search(const SearchSpace& space,
                        const std::function<void(const SearchProgress&)>& progress = {});

/// Records that follow from existing ones by the K2 product, for cells within
/// the given ranges that the catalog does not already beat.
std::vector<CatalogRecord> product_proposals(const Catalog& catalog, unsigned max_delta,
                                             unsigned max_time);

}  // namespace cayleycast
