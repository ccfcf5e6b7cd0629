#pragma once

#include <cstdint>

#include "cayleycast/broadcast.hpp"
#include "cayleycast/cayley.hpp"

namespace cayleycast {

inline constexpr std::size_t kDefaultExactVertexCap = 20;

struct ExactResult {
  Vertex origin = 0;
  unsigned rounds = 0;
  SimulationTrace witness;
  std::uint64_t nodes_expanded = 0;
};

struct ExactOptions {
  /// Memory use grows like 2^n in the worst case; raise with care. Hard limit 40.
  std::size_t vertex_cap = kDefaultExactVertexCap;
};

/// Minimum broadcast time from `origin`, with an optimal call schedule.
/// Iterative deepening over informed-vertex bitsets, branching only on maximal
/// informed-to-uninformed matchings, with failed states memoized.
ExactResult exact_broadcast_time_from(const Graph& g, Vertex origin, const ExactOptions& options = {});

/// max over all origins of exact_broadcast_time_from.
unsigned exact_broadcast_time(const Graph& g, const ExactOptions& options = {});

/// Cayley graphs are vertex-transitive, so the identity alone suffices.
unsigned exact_broadcast_time(const CayleyGraph& cg, const ExactOptions& options = {});

/// ceil(log2 n): at most 2^t vertices can know the message after t rounds.
unsigned log2_lower_bound(const Graph& g) noexcept;

/// Rounds used by a deterministic greedy schedule: each round takes a maximal
/// informed-to-uninformed matching, serving uninformed vertices with the most
/// uninformed neighbors first (ties by id) and pairing each with the free
/// informed neighbor that has the fewest uninformed options (ties by id).
unsigned greedy_upper_bound(const Graph& g, Vertex origin);

/// The greedy schedule itself.
SimulationTrace greedy_schedule(const Graph& g, Vertex origin);

}  // namespace cayleycast
