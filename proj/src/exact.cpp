#include "cayleycast/exact.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>

#include "cayleycast/error.hpp"

namespace cayleycast {

namespace {

using Mask = std::uint64_t;

struct Matching {
  Mask callees = 0;
  std::vector<Call> calls;
};

class Solver {
 public:
  Solver(const Graph& g, std::size_t cap) : n_(g.vertex_count()) {
    if (n_ > cap) {
      throw InvalidGraph("graph with " + std::to_string(n_) +
                         " vertices exceeds exact-solver cap " + std::to_string(cap));
    }
    if (n_ > 40) throw InvalidGraph("exact solver supports at most 40 vertices");
    if (n_ == 0) throw InvalidGraph("empty graph");
    if (!g.is_connected()) throw InvalidGraph("exact solver needs a connected graph");
    full_ = n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
    adj_.resize(n_, 0);
    for (Vertex v = 0; v < n_; ++v) {
      for (Vertex w : g.neighbors(v)) adj_[v] |= Mask{1} << w;
    }
  }

  ExactResult solve(Vertex origin) {
    ExactResult result;
    result.origin = origin;
    const Mask start = Mask{1} << origin;
    unsigned bound = std::max(ceil_log2(n_), eccentricity(start));
    path_.clear();
    while (!search(start, bound)) {
      ++bound;
      path_.clear();
    }
    result.rounds = bound;
    result.nodes_expanded = expanded_;

    SimulationTrace& trace = result.witness;
    trace.origin = origin;
    trace.informed_time.assign(n_, -1);
    trace.informed_time[origin] = 0;
    // path_ is filled while unwinding, so it is in reverse round order
    std::reverse(path_.begin(), path_.end());
    for (std::size_t r = 0; r < path_.size(); ++r) {
      auto calls = path_[r];
      std::sort(calls.begin(), calls.end(),
                [](const Call& a, const Call& b) { return a.caller < b.caller; });
      for (const Call& c : calls) trace.informed_time[c.callee] = static_cast<int>(r + 1);
      trace.rounds.push_back(std::move(calls));
    }
    trace.completion_round = bound;
    return result;
  }

 private:
  /// Rounds needed if every informed vertex could shout to all neighbors.
  unsigned eccentricity(Mask informed) const {
    unsigned r = 0;
    while (informed != full_) {
      Mask next = informed;
      for (Mask m = informed; m; m &= m - 1) next |= adj_[std::countr_zero(m)];
      informed = next;
      ++r;
    }
    return r;
  }

  bool hopeless(Mask informed, unsigned remaining) const {
    const unsigned have = static_cast<unsigned>(std::popcount(informed));
    if (remaining < 64 && (static_cast<std::uint64_t>(have) << remaining) < n_) return true;
    Mask reach = informed;
    for (unsigned r = 0; r < remaining && reach != full_; ++r) {
      Mask next = reach;
      for (Mask m = reach; m; m &= m - 1) next |= adj_[std::countr_zero(m)];
      if (next == reach) break;
      reach = next;
    }
    return reach != full_;
  }

  bool search(Mask informed, unsigned remaining) {
    if (informed == full_) return true;
    if (remaining == 0 || hopeless(informed, remaining)) return false;
    if (auto it = failed_.find(informed); it != failed_.end() && it->second >= remaining) {
      return false;
    }
    ++expanded_;

    for (const Matching& m : maximal_matchings(informed)) {
      if (search(informed | m.callees, remaining - 1)) {
        path_.push_back(m.calls);
        return true;
      }
    }
    auto& slot = failed_[informed];
    slot = std::max(slot, remaining);
    return false;
  }

  std::vector<Matching> maximal_matchings(Mask informed) const {
    const Mask uninformed = full_ & ~informed;
    std::vector<Vertex> callers;
    for (Mask m = informed; m; m &= m - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(m));
      if (adj_[v] & uninformed) callers.push_back(v);
    }
    std::vector<Matching> out;
    std::unordered_set<Mask> seen;
    std::vector<Call> calls;
    std::vector<Vertex> skipped;

    auto rec = [&](auto&& self, std::size_t i, Mask taken) -> void {
      if (i == callers.size()) {
        for (Vertex s : skipped) {
          if (adj_[s] & uninformed & ~taken) return;  // not maximal
        }
        if (seen.insert(taken).second) out.push_back({taken, calls});
        return;
      }
      const Vertex v = callers[i];
      for (Mask m = adj_[v] & uninformed & ~taken; m; m &= m - 1) {
        const auto w = static_cast<Vertex>(std::countr_zero(m));
        calls.push_back({v, w});
        self(self, i + 1, taken | (Mask{1} << w));
        calls.pop_back();
      }
      skipped.push_back(v);
      self(self, i + 1, taken);
      skipped.pop_back();
    };
    rec(rec, 0, 0);

    std::stable_sort(out.begin(), out.end(), [](const Matching& a, const Matching& b) {
      return std::popcount(a.callees) > std::popcount(b.callees);
    });
    return out;
  }

  std::size_t n_;
  Mask full_ = 0;
  std::vector<Mask> adj_;
  std::unordered_map<Mask, unsigned> failed_;
  std::vector<std::vector<Call>> path_;
  std::uint64_t expanded_ = 0;
};

}  // namespace

ExactResult exact_broadcast_time_from(const Graph& g, Vertex origin, const ExactOptions& options) {
  if (origin >= g.vertex_count()) {
    throw InvalidGraph("origin " + std::to_string(origin) + " out of range");
  }
  Solver solver(g, options.vertex_cap);
  return solver.solve(origin);
}

unsigned exact_broadcast_time(const Graph& g, const ExactOptions& options) {
  unsigned best = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    best = std::max(best, exact_broadcast_time_from(g, v, options).rounds);
  }
  return best;
}

unsigned exact_broadcast_time(const CayleyGraph& cg, const ExactOptions& options) {
  return exact_broadcast_time_from(cg.graph(), cg.identity_vertex(), options).rounds;
}

unsigned log2_lower_bound(const Graph& g) noexcept { return ceil_log2(g.vertex_count()); }

SimulationTrace greedy_schedule(const Graph& g, Vertex origin) {
  const std::size_t n = g.vertex_count();
  if (origin >= n) throw InvalidGraph("origin " + std::to_string(origin) + " out of range");
  if (!g.is_connected()) throw InvalidGraph("greedy broadcast needs a connected graph");

  SimulationTrace trace;
  trace.origin = origin;
  trace.informed_time.assign(n, -1);
  trace.informed_time[origin] = 0;
  std::size_t informed = 1;
  std::vector<std::size_t> open(n);  // uninformed neighbors per vertex
  std::vector<bool> used(n);
  unsigned round = 0;
  while (informed < n) {
    ++round;
    for (Vertex v = 0; v < n; ++v) {
      open[v] = 0;
      for (Vertex w : g.neighbors(v)) open[v] += trace.informed_time[w] < 0;
    }
    std::vector<Vertex> candidates;
    for (Vertex u = 0; u < n; ++u) {
      if (trace.informed_time[u] >= 0) continue;
      for (Vertex w : g.neighbors(u)) {
        if (trace.informed_time[w] >= 0) {
          candidates.push_back(u);
          break;
        }
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](Vertex a, Vertex b) { return open[a] > open[b]; });
    std::fill(used.begin(), used.end(), false);
    std::vector<Call> calls;
    for (Vertex u : candidates) {
      Vertex best = static_cast<Vertex>(n);
      for (Vertex w : g.neighbors(u)) {
        if (trace.informed_time[w] < 0 || used[w]) continue;
        if (best == n || open[w] < open[best]) best = w;
      }
      if (best == n) continue;
      used[best] = true;
      calls.push_back({best, u});
    }
    for (const Call& c : calls) trace.informed_time[c.callee] = static_cast<int>(round);
    informed += calls.size();
    std::sort(calls.begin(), calls.end(),
              [](const Call& a, const Call& b) { return a.caller < b.caller; });
    trace.rounds.push_back(std::move(calls));
  }
  trace.completion_round = round;
  return trace;
}

unsigned greedy_upper_bound(const Graph& g, Vertex origin) {
  return *greedy_schedule(g, origin).completion_round;
}

}  // namespace cayleycast
