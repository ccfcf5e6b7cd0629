#include "cayleycast/cayley.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>

#include "cayleycast/error.hpp"
#include "text_cursor.hpp"

namespace cayleycast {

Graph::Graph(std::size_t vertex_count, std::span<const std::pair<Vertex, Vertex>> edges,
             std::string name)
    : adjacency_(vertex_count), name_(std::move(name)) {
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw InvalidGraph("edge " + std::to_string(u) + "-" + std::to_string(v) +
                         " outside vertex range 0.." + std::to_string(vertex_count - 1));
    }
    if (u == v) throw InvalidGraph("loop at vertex " + std::to_string(u));
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    edge_count_ += adj.size();
  }
  edge_count_ /= 2;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& adj : adjacency_) best = std::max(best, adj.size());
  return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

bool Graph::is_connected() const {
  if (adjacency_.empty()) return true;
  std::vector<bool> seen(vertex_count(), false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == vertex_count();
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t CayleyGraph::generator_index(const Element& s) const noexcept {
  const auto it = std::find(generators_.begin(), generators_.end(), s);
  return it == generators_.end() ? npos : static_cast<std::size_t>(it - generators_.begin());
}

CayleyGraph build_cayley(const GroupSpec& group, const GeneratorSet& gens, std::uint64_t limit) {
  require_order_within(group, limit);
  if (group.order() > std::numeric_limits<Vertex>::max()) {
    throw GroupTooLarge(group.to_string() + " does not fit 32-bit vertex ids");
  }
  const GeneratorReport report = validate_generators(group, gens, limit);
  if (!report.connection_set_ok()) {
    std::string why = "invalid generator set for " + group.to_string() + ":";
    for (const auto& p : report.problems) why += " " + p + ";";
    throw InvalidGenerators(why);
  }

  CayleyGraph cg;
  cg.group_ = group;
  cg.generators_ = gens;
  const std::size_t k = gens.size();
  const auto n = static_cast<std::size_t>(group.order());
  const auto radix = group.radices();

  cg.inverse_index_.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    cg.inverse_index_[j] = cg.generator_index(inverse(group, gens[j]));
  }

  cg.neighbor_table_.resize(n * k);
  std::vector<std::uint64_t> cur(radix.size(), 0);
  std::vector<std::uint64_t> prod(radix.size(), 0);
  std::vector<std::pair<Vertex, Vertex>> edge_list;
  edge_list.reserve(n * k / 2 + 1);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < k; ++j) {
      multiply_into(group, cur, gens[j].coords, prod);
      std::uint64_t r = 0;
      for (std::size_t i = 0; i < radix.size(); ++i) r = r * radix[i] + prod[i];
      cg.neighbor_table_[v * k + j] = static_cast<Vertex>(r);
      if (v < r) edge_list.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(r));
    }
    for (std::size_t i = radix.size(); i-- > 0;) {
      if (++cur[i] < radix[i]) break;
      cur[i] = 0;
    }
  }
  cg.graph_ = Graph(n, edge_list, group.to_string());
  cg.connected_ = report.generates;
  if (!report.generates) {
    cg.warning_ = "disconnected: generators reach " + std::to_string(report.reached) + " of " +
                  std::to_string(report.group_order) + " elements";
  }
  return cg;
}

CayleyGraph hypercube(unsigned r, std::uint64_t limit) {
  if (r == 0) throw InvalidGroup("hypercube dimension must be at least 1");
  if (r > 63 || (std::uint64_t{1} << r) > limit) {
    throw GroupTooLarge("hypercube dimension " + std::to_string(r) + " exceeds the order limit " +
                        std::to_string(limit));
  }
  const GroupSpec group = GroupSpec::z2pow(r);
  GeneratorSet basis;
  for (unsigned j = 0; j < r; ++j) basis.push_back(Element{{std::uint64_t{1} << (r - 1 - j)}});
  return build_cayley(group, basis, limit);
}

Graph product_with_k2(const Graph& g) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (auto [u, v] : g.edges()) {
    edges.emplace_back(u, v);
    edges.emplace_back(u + n, v + n);
  }
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, v + n);
  return Graph(2 * static_cast<std::size_t>(n), edges,
               g.name().empty() ? std::string{} : g.name() + " x K2");
}

Graph named_graph(std::string_view name) {
  detail::TextCursor cur(name);
  const std::string word = cur.identifier();
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (word == "petersen") {
    cur.expect_end();
    for (Vertex i = 0; i < 5; ++i) {
      edges.emplace_back(i, (i + 1) % 5);
      edges.emplace_back(i, i + 5);
      edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return Graph(10, edges, "petersen");
  }
  cur.expect('(');
  const std::uint64_t n = cur.unsigned_integer();
  cur.expect(')');
  cur.expect_end();
  if (n > 1'000'000) throw InvalidGraph(std::string(name) + " is too large");
  const auto nv = static_cast<Vertex>(n);
  if (word == "cycle") {
    if (n < 3) throw InvalidGraph("cycle(n) needs n >= 3");
    for (Vertex i = 0; i < nv; ++i) edges.emplace_back(i, (i + 1) % nv);
    return Graph(n, edges, "cycle(" + std::to_string(n) + ")");
  }
  if (word == "complete") {
    if (n < 1) throw InvalidGraph("complete(n) needs n >= 1");
    for (Vertex i = 0; i < nv; ++i) {
      for (Vertex j = i + 1; j < nv; ++j) edges.emplace_back(i, j);
    }
    return Graph(n, edges, "complete(" + std::to_string(n) + ")");
  }
  throw InvalidGraph("unknown named graph '" + std::string(name) + "'");
}

std::size_t diameter(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = 0;
  std::vector<std::size_t> dist(n);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), static_cast<std::size_t>(-1));
    dist[s] = 0;
    queue.assign(1, s);
    std::size_t reached = 1;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] == static_cast<std::size_t>(-1)) {
          dist[w] = dist[v] + 1;
          best = std::max(best, dist[w]);
          ++reached;
          queue.push_back(w);
        }
      }
    }
    if (reached != n) throw InvalidGraph("diameter of a disconnected graph");
  }
  return best;
}

std::string export_graph(const Graph& g, GraphFormat format) {
  std::ostringstream out;
  const auto edges = g.edges();
  if (format == GraphFormat::edge_list) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i) out << '\n';
      out << edges[i].first << ' ' << edges[i].second;
    }
    return out.str();
  }
  out << "graph \"" << (g.name().empty() ? "G" : g.name()) << "\" {\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
  for (auto [u, v] : edges) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

Graph parse_edge_list(std::string_view text, std::size_t vertex_count) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t max_id = 0;
  bool any = false;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    const std::size_t offset = line_start;
    line_start = line_end + 1;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::uint64_t ids[2];
    std::size_t found = 0;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      if (found == 2) throw ParseError("more than two ids on an edge line", offset + i);
      const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), ids[found]);
      if (ec != std::errc{}) throw ParseError("expected a vertex id", offset + i);
      i = static_cast<std::size_t>(ptr - line.data());
      ++found;
    }
    if (found == 0) continue;
    if (found == 1) throw ParseError("edge line needs two vertex ids", offset);
    if (ids[0] > std::numeric_limits<Vertex>::max() ||
        ids[1] > std::numeric_limits<Vertex>::max()) {
      throw ParseError("vertex id too large", offset);
    }
    edges.emplace_back(static_cast<Vertex>(ids[0]), static_cast<Vertex>(ids[1]));
    max_id = std::max<std::size_t>({max_id, ids[0], ids[1]});
    any = true;
  }
  const std::size_t n = vertex_count ? vertex_count : (any ? max_id + 1 : 0);
  return Graph(n, edges);
}

}  // namespace cayleycast
