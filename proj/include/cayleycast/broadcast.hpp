#pragma once

// Telephone-model broadcasting on Cayley graphs. In each round every vertex
// takes part in at most one call, and a call informs the callee only if the
// caller already knew the message before the round started.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cayleycast/cayley.hpp"
#include "cayleycast/group.hpp"

namespace cayleycast {

/// How informed vertices choose whom to call, expressed in generators so the
/// same rule applies at every vertex of a Cayley graph.
///
///  - fixed_order: the origin walks the generator list in index order; a
///    vertex reached through s_j walks s_{j+1}, ..., s_k, s_1, ..., s_j.
///  - receipt_permutations: a vertex informed at time i walks permutations[i]
///    (the last permutation is reused for later receipt times).
///  - round_generators: in round k every informed vertex calls v * g_k.
///
/// For the two list-walking kinds a vertex skips the generator that leads back
/// to its informer, and makes one attempt per round until its list runs out.
/// A call to an informed or already-claimed vertex still uses up the round.
struct BroadcastScheme {
  enum class Kind { fixed_order, receipt_permutations, round_generators };

  Kind kind = Kind::fixed_order;
  std::vector<std::vector<std::size_t>> permutations;  ///< 0-based generator indices
  std::vector<Element> round_generators;

  static BroadcastScheme fixed() { return {}; }
  static BroadcastScheme receipt(std::vector<std::vector<std::size_t>> perms) {
    return {Kind::receipt_permutations, std::move(perms), {}};
  }
  static BroadcastScheme rounds(std::vector<Element> gens) {
    return {Kind::round_generators, {}, std::move(gens)};
  }

  friend bool operator==(const BroadcastScheme&, const BroadcastScheme&) = default;
};

/// "fixed" | "perm: 2,1,3; 1,3,2" (1-based) | "rounds: (1,0),(1,1),(1,0)".
BroadcastScheme parse_scheme(const GroupSpec& group, std::string_view text);
std::string format_scheme(const GroupSpec& group, const BroadcastScheme& scheme);

struct Call {
  Vertex caller;
  Vertex callee;
  friend bool operator==(const Call&, const Call&) = default;
};

struct SimulationTrace {
  Vertex origin = 0;
  /// rounds[r] holds the informing calls of round r + 1.
  std::vector<std::vector<Call>> rounds;
  /// Round in which each vertex learned the message; 0 for the origin, -1 if never.
  std::vector<int> informed_time;
  std::optional<unsigned> completion_round;

  /// |T_i| for i = 0..rounds.size().
  std::vector<std::size_t> informed_counts() const;
};

struct SimulationOptions {
  /// Defaults to default_max_rounds(n, |S|).
  std::optional<unsigned> max_rounds;
  /// Naive reading: every vertex walks its full list from the first entry,
  /// including the generator leading back to its informer.
  bool keep_receipt_generator = false;
};

unsigned ceil_log2(std::uint64_t n) noexcept;

/// 2 * ceil(log2 n) + degree.
unsigned default_max_rounds(std::size_t vertex_count, std::size_t degree) noexcept;

/// Throws SchemeMismatch if the scheme does not fit the graph's generators.
void check_scheme(const CayleyGraph& cg, const BroadcastScheme& scheme);

SimulationTrace simulate(const CayleyGraph& cg, const BroadcastScheme& scheme, Vertex origin,
                         const SimulationOptions& options = {});

/// Completion round from the identity, or nullopt when the scheme does not
/// finish within the round limit. By vertex-transitivity the value bounds the
/// broadcast time of every vertex.
std::optional<unsigned> broadcast_time_under_scheme(const CayleyGraph& cg,
                                                    const BroadcastScheme& scheme,
                                                    const SimulationOptions& options = {});

/// Round schedule for the dihedral family of degree delta: round k uses
/// w x^(2^(k-1) - 1) for k = 1..delta, and round delta + 1 uses w.
BroadcastScheme theorem1_scheme(unsigned delta);

struct TraceReport {
  bool valid = true;
  std::optional<unsigned> round;  ///< first offending round, 1-based
  std::string message;
};

/// Checks the matching condition, edges, informed callers, informed_time
/// consistency and the completion marker.
TraceReport validate_trace(const Graph& g, const SimulationTrace& trace);

/// |T_i| <= 2 |T_{i-1}| for every round.
bool doubling_cap_holds(const SimulationTrace& trace);

/// One line per round, calls as "caller->callee" joined by ", ".
std::string format_trace(const SimulationTrace& trace);

}  // namespace cayleycast
