#include "cayleycast/broadcast.hpp"

#include <algorithm>
#include <sstream>

#include "cayleycast/error.hpp"
#include "text_cursor.hpp"

namespace cayleycast {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

template <bool Record>
SimulationTrace run(const CayleyGraph& cg, const BroadcastScheme& scheme, Vertex origin,
                    const SimulationOptions& options) {
  const std::size_t n = cg.vertex_count();
  const std::size_t k = cg.degree();
  if (origin >= n) {
    throw InvalidGraph("origin " + std::to_string(origin) + " outside vertex range 0.." +
                       std::to_string(n - 1));
  }
  check_scheme(cg, scheme);
  const unsigned max_rounds = options.max_rounds.value_or(default_max_rounds(n, k));

  SimulationTrace trace;
  trace.origin = origin;
  trace.informed_time.assign(n, -1);
  trace.informed_time[origin] = 0;
  if (n == 1) {
    trace.completion_round = 0;
    return trace;
  }

  // Vertices in call priority order: informed time, then vertex id.
  std::vector<Vertex> order{origin};
  order.reserve(n);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::size_t> callback(n, kNone);
  std::vector<std::size_t> start(n, 0);
  std::vector<Vertex> claimed;
  std::vector<std::size_t> claimed_via;
  std::vector<Call> calls;

  std::vector<std::size_t> round_index;
  if (scheme.kind == BroadcastScheme::Kind::round_generators) {
    for (const auto& g : scheme.round_generators) round_index.push_back(cg.generator_index(g));
  }
  std::vector<std::size_t> identity_order(k);
  for (std::size_t j = 0; j < k; ++j) identity_order[j] = j;

  std::size_t informed = 1;
  for (unsigned round = 1; round <= max_rounds; ++round) {
    claimed.clear();
    claimed_via.clear();
    calls.clear();
    bool anyone_active = false;

    if (scheme.kind == BroadcastScheme::Kind::round_generators) {
      if (round > round_index.size()) break;
      anyone_active = true;
      const std::size_t j = round_index[round - 1];
      for (Vertex v : order) {
        const Vertex w = cg.neighbor(v, j);
        if (trace.informed_time[w] < 0) {
          // distinct callers have distinct v * g, so no conflicts arise
          trace.informed_time[w] = static_cast<int>(round);
          claimed.push_back(w);
          claimed_via.push_back(j);
          if constexpr (Record) calls.push_back({v, w});
        }
      }
    } else {
      const bool fixed = scheme.kind == BroadcastScheme::Kind::fixed_order;
      for (Vertex v : order) {
        const int t = trace.informed_time[v];
        const auto& list =
            fixed ? identity_order
                  : scheme.permutations[std::min<std::size_t>(static_cast<std::size_t>(t),
                                                              scheme.permutations.size() - 1)];
        // fixed order resumes just after the generator that reached v
        const std::size_t offset = fixed ? start[v] : 0;
        std::size_t& pos = cursor[v];
        if (pos < k && list[(offset + pos) % k] == callback[v]) ++pos;
        if (pos >= k) continue;
        anyone_active = true;
        const std::size_t j = list[(offset + pos++) % k];
        const Vertex w = cg.neighbor(v, j);
        // an informed or already-claimed target wastes this caller's round
        if (trace.informed_time[w] >= 0) continue;
        trace.informed_time[w] = static_cast<int>(round);
        claimed.push_back(w);
        claimed_via.push_back(j);
        if constexpr (Record) calls.push_back({v, w});
      }
    }

    if (!anyone_active) break;
    if (!options.keep_receipt_generator) {
      for (std::size_t i = 0; i < claimed.size(); ++i) {
        callback[claimed[i]] = cg.inverse_index(claimed_via[i]);
        start[claimed[i]] = (claimed_via[i] + 1) % k;
      }
    }
    std::sort(claimed.begin(), claimed.end());
    order.insert(order.end(), claimed.begin(), claimed.end());
    informed += claimed.size();
    if constexpr (Record) {
      std::sort(calls.begin(), calls.end(),
                [](const Call& a, const Call& b) { return a.caller < b.caller; });
      trace.rounds.push_back(calls);
    } else {
      trace.rounds.emplace_back();
    }
    if (informed == n) {
      trace.completion_round = round;
      break;
    }
  }
  return trace;
}

}  // namespace

unsigned ceil_log2(std::uint64_t n) noexcept {
  unsigned bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < n) ++bits;
  return bits;
}

unsigned default_max_rounds(std::size_t vertex_count, std::size_t degree) noexcept {
  return 2 * ceil_log2(vertex_count) + static_cast<unsigned>(degree);
}

void check_scheme(const CayleyGraph& cg, const BroadcastScheme& scheme) {
  const std::size_t k = cg.degree();
  switch (scheme.kind) {
    case BroadcastScheme::Kind::fixed_order:
      return;
    case BroadcastScheme::Kind::receipt_permutations:
      if (scheme.permutations.empty()) throw SchemeMismatch("permutation scheme with no permutations");
      for (std::size_t i = 0; i < scheme.permutations.size(); ++i) {
        const auto& p = scheme.permutations[i];
        std::vector<bool> seen(k, false);
        bool ok = p.size() == k;
        for (std::size_t j : p) {
          if (!ok) break;
          ok = j < k && !seen[j];
          if (ok) seen[j] = true;
        }
        if (!ok) {
          throw SchemeMismatch("permutation " + std::to_string(i + 1) +
                               " is not a permutation of the " + std::to_string(k) +
                               " generators");
        }
      }
      return;
    case BroadcastScheme::Kind::round_generators:
      for (std::size_t i = 0; i < scheme.round_generators.size(); ++i) {
        if (cg.generator_index(scheme.round_generators[i]) == CayleyGraph::npos) {
          throw SchemeMismatch("round " + std::to_string(i + 1) +
                               " generator is not in the generator set");
        }
      }
      return;
  }
}

SimulationTrace simulate(const CayleyGraph& cg, const BroadcastScheme& scheme, Vertex origin,
                         const SimulationOptions& options) {
  return run<true>(cg, scheme, origin, options);
}

std::optional<unsigned> broadcast_time_under_scheme(const CayleyGraph& cg,
                                                    const BroadcastScheme& scheme,
                                                    const SimulationOptions& options) {
  return run<false>(cg, scheme, cg.identity_vertex(), options).completion_round;
}

BroadcastScheme theorem1_scheme(unsigned delta) {
  if (delta < 2) throw InvalidGroup("the dihedral schedule needs delta >= 2");
  if (delta > 40) throw GroupTooLarge("delta " + std::to_string(delta) + " is too large");
  const std::uint64_t n = (std::uint64_t{1} << delta) - 1;
  std::vector<Element> gens;
  for (unsigned k = 1; k <= delta; ++k) {
    gens.push_back(Element{{1, ((std::uint64_t{1} << (k - 1)) - 1) % n}});
  }
  gens.push_back(Element{{1, 0}});
  return BroadcastScheme::rounds(std::move(gens));
}

BroadcastScheme parse_scheme(const GroupSpec& group, std::string_view text) {
  detail::TextCursor cur(text);
  const std::size_t at = cur.position();
  const std::string word = cur.identifier();
  if (word == "fixed") {
    cur.expect_end();
    return BroadcastScheme::fixed();
  }
  if (word == "perm") {
    cur.expect(':');
    std::vector<std::vector<std::size_t>> perms(1);
    while (true) {
      const std::size_t pos = cur.position();
      const std::uint64_t idx = cur.unsigned_integer();
      if (idx == 0) throw ParseError("generator indices are 1-based", pos);
      perms.back().push_back(static_cast<std::size_t>(idx - 1));
      if (cur.at_end()) break;
      if (cur.consume(';')) {
        if (cur.at_end()) break;
        perms.emplace_back();
        continue;
      }
      cur.expect(',');
    }
    return BroadcastScheme::receipt(std::move(perms));
  }
  if (word == "rounds") {
    cur.expect(':');
    const std::string_view rest = text.substr(cur.position());
    return BroadcastScheme::rounds(parse_generators(group, rest));
  }
  throw ParseError("unknown scheme kind '" + word + "'", at);
}

std::string format_scheme(const GroupSpec& group, const BroadcastScheme& scheme) {
  switch (scheme.kind) {
    case BroadcastScheme::Kind::fixed_order:
      return "fixed";
    case BroadcastScheme::Kind::receipt_permutations: {
      std::string out = "perm: ";
      for (std::size_t i = 0; i < scheme.permutations.size(); ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < scheme.permutations[i].size(); ++j) {
          if (j) out += ',';
          out += std::to_string(scheme.permutations[i][j] + 1);
        }
      }
      return out;
    }
    case BroadcastScheme::Kind::round_generators:
      return "rounds: " + format_generators(group, scheme.round_generators);
  }
  return {};
}

std::vector<std::size_t> SimulationTrace::informed_counts() const {
  std::vector<std::size_t> counts(rounds.size() + 1, 0);
  for (int t : informed_time) {
    if (t >= 0 && static_cast<std::size_t>(t) < counts.size()) ++counts[static_cast<std::size_t>(t)];
  }
  for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
  return counts;
}

TraceReport validate_trace(const Graph& g, const SimulationTrace& trace) {
  const std::size_t n = g.vertex_count();
  auto fail = [](std::optional<unsigned> round, std::string msg) {
    return TraceReport{false, round, std::move(msg)};
  };
  if (trace.origin >= n) return fail(std::nullopt, "origin out of range");
  if (trace.informed_time.size() != n) return fail(std::nullopt, "informed_time size mismatch");

  std::vector<int> known(n, -1);
  known[trace.origin] = 0;
  std::size_t count = 1;
  std::vector<unsigned> busy(n, 0);
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    const auto round = static_cast<unsigned>(r + 1);
    for (const Call& c : trace.rounds[r]) {
      if (c.caller >= n || c.callee >= n) return fail(round, "vertex out of range");
      if (!g.has_edge(c.caller, c.callee)) {
        return fail(round, "call " + std::to_string(c.caller) + "->" + std::to_string(c.callee) +
                               " is not along an edge");
      }
      if (busy[c.caller] == round || busy[c.callee] == round) {
        return fail(round, "matching violated");
      }
      busy[c.caller] = busy[c.callee] = round;
      if (known[c.caller] < 0 || known[c.caller] >= static_cast<int>(round)) {
        return fail(round, "caller uninformed");
      }
    }
    for (const Call& c : trace.rounds[r]) {
      if (known[c.callee] < 0) {
        known[c.callee] = static_cast<int>(round);
        ++count;
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (known[v] != trace.informed_time[v]) {
      return fail(std::nullopt, "informed_time mismatch at vertex " + std::to_string(v));
    }
  }
  if (trace.completion_round) {
    if (count != n) return fail(std::nullopt, "marked complete but not every vertex informed");
    const int last = *std::max_element(known.begin(), known.end());
    if (static_cast<unsigned>(last) != *trace.completion_round) {
      return fail(std::nullopt, "completion round mismatch");
    }
  } else if (count == n && n > 0) {
    return fail(std::nullopt, "every vertex informed but no completion round");
  }
  return {};
}

bool doubling_cap_holds(const SimulationTrace& trace) {
  const auto counts = trace.informed_counts();
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > 2 * counts[i - 1]) return false;
  }
  return true;
}

std::string format_trace(const SimulationTrace& trace) {
  std::ostringstream out;
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    out << "round " << (r + 1) << ": ";
    for (std::size_t i = 0; i < trace.rounds[r].size(); ++i) {
      if (i) out << ", ";
      out << trace.rounds[r][i].caller << "->" << trace.rounds[r][i].callee;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cayleycast
