#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cayleycast/group.hpp"

namespace cayleycast {

using Vertex = std::uint32_t;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  /// Builds from an edge list. Rejects loops and out-of-range endpoints;
  /// repeated edges collapse to one.
  Graph(std::size_t vertex_count, std::span<const std::pair<Vertex, Vertex>> edges,
        std::string name = {});

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  std::size_t max_degree() const noexcept;
  bool has_edge(Vertex u, Vertex v) const;
  bool is_connected() const;
  const std::string& name() const noexcept { return name_; }

  std::vector<std::pair<Vertex, Vertex>> edges() const;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
  std::string name_;
};

/// Cayley graph (A, S): vertex v is the element of canonical rank v, with an
/// edge {a, a*s} for every s in S. The generator-indexed neighbor table is kept
/// alongside the simple graph because broadcast schemes address neighbors by
/// generator.
class CayleyGraph {
 public:
  const Graph& graph() const noexcept { return graph_; }
  const GroupSpec& group() const noexcept { return group_; }
  const GeneratorSet& generators() const noexcept { return generators_; }
  std::size_t degree() const noexcept { return generators_.size(); }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  Vertex identity_vertex() const noexcept { return 0; }
  bool connected() const noexcept { return connected_; }
  /// Empty unless the generators fail to generate the group.
  const std::string& warning() const noexcept { return warning_; }

  /// v * s_j, where j indexes the generator list.
  Vertex neighbor(Vertex v, std::size_t generator_index) const {
    return neighbor_table_[static_cast<std::size_t>(v) * generators_.size() + generator_index];
  }
  /// Index of s_j^-1 in the generator list.
  std::size_t inverse_index(std::size_t generator_index) const {
    return inverse_index_.at(generator_index);
  }
  /// Index of a generator element, or npos.
  std::size_t generator_index(const Element& s) const noexcept;

  Element element(Vertex v) const { return unrank(group_, v); }
  Vertex vertex(const Element& e) const { return static_cast<Vertex>(rank(group_, e)); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  friend CayleyGraph build_cayley(const GroupSpec&, const GeneratorSet&, std::uint64_t);

  Graph graph_;
  GroupSpec group_ = GroupSpec::cyclic(1);
  GeneratorSet generators_;
  std::vector<Vertex> neighbor_table_;
  std::vector<std::size_t> inverse_index_;
  bool connected_ = true;
  std::string warning_;
};

/// Throws InvalidGenerators when S is not an inverse-closed, identity-free set
/// of distinct members, and GroupTooLarge beyond `limit` elements. A set that
/// does not generate yields a disconnected graph and a warning.
CayleyGraph build_cayley(const GroupSpec& group, const GeneratorSet& gens,
                         std::uint64_t limit = kDefaultOrderLimit);

/// Q_r as the Cayley graph of z2pow(r) with generators 100..0, 010..0, ...
CayleyGraph hypercube(unsigned r, std::uint64_t limit = kDefaultOrderLimit);

/// Cartesian product with K2: two copies plus the matching v <-> v + n.
Graph product_with_k2(const Graph& g);

/// "petersen", "cycle(n)" (n >= 3) or "complete(n)" (n >= 1).
Graph named_graph(std::string_view name);

/// Longest shortest path; throws InvalidGraph when disconnected.
std::size_t diameter(const Graph& g);

enum class GraphFormat { edge_list, dot };

/// edge-list: "u v" per line with u < v, sorted, no trailing newline.
std::string export_graph(const Graph& g, GraphFormat format);

/// Reads the edge-list format. Blank lines and '#' comments are skipped; the
/// vertex count is one more than the largest id unless `vertex_count` is given.
Graph parse_edge_list(std::string_view text, std::size_t vertex_count = 0);

}  // namespace cayleycast
