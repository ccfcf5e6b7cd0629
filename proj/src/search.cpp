#include "cayleycast/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <thread>

#include "cayleycast/bounds.hpp"
#include "cayleycast/broadcast.hpp"
#include "cayleycast/error.hpp"

namespace cayleycast {

GroupFamily parse_group_family(std::string_view name) {
  if (name == "dihedral") return GroupFamily::dihedral;
  if (name == "cyclic") return GroupFamily::cyclic;
  if (name == "z2pow") return GroupFamily::z2pow;
  if (name == "semidirect") return GroupFamily::semidirect;
  if (name == "fixed") return GroupFamily::fixed;
  throw Error("unknown search family '" + std::string(name) + "'");
}

std::string to_string(GroupFamily family) {
  switch (family) {
    case GroupFamily::dihedral:
      return "dihedral";
    case GroupFamily::cyclic:
      return "cyclic";
    case GroupFamily::z2pow:
      return "z2pow";
    case GroupFamily::semidirect:
      return "semidirect";
    case GroupFamily::fixed:
      return "fixed";
  }
  return {};
}

SchemePolicy parse_scheme_policy(std::string_view name) {
  if (name == "fixed") return SchemePolicy::fixed_orderings;
  if (name == "perm") return SchemePolicy::receipt_permutations;
  if (name == "rounds") return SchemePolicy::round_generators;
  throw Error("unknown scheme policy '" + std::string(name) + "'");
}

std::string to_string(SchemePolicy policy) {
  switch (policy) {
    case SchemePolicy::fixed_orderings:
      return "fixed";
    case SchemePolicy::receipt_permutations:
      return "perm";
    case SchemePolicy::round_generators:
      return "rounds";
  }
  return {};
}

namespace {

constexpr std::size_t kBatchSize = 1024;
constexpr std::uint64_t kMaxExhaustiveOrderings = 720;
constexpr std::uint64_t kMaxExhaustiveSchedules = 4096;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<GroupSpec> family_groups(const SearchSpace& space, std::uint64_t max_order) {
  std::vector<GroupSpec> out;
  const std::uint64_t lo = std::max<std::uint64_t>(space.min_order, 1);
  switch (space.family) {
    case GroupFamily::fixed:
      if (!space.group) throw Error("search family 'fixed' needs a group");
      out.push_back(*space.group);
      return out;
    case GroupFamily::dihedral:
      for (std::uint64_t n = max_order / 2; n >= 1 && 2 * n >= lo; --n) out.push_back(GroupSpec::dihedral(n));
      return out;
    case GroupFamily::cyclic:
      for (std::uint64_t n = max_order; n >= 1 && n >= lo; --n) out.push_back(GroupSpec::cyclic(n));
      return out;
    case GroupFamily::z2pow:
      for (std::uint64_t r = 62; r >= 1; --r) {
        const std::uint64_t order = std::uint64_t{1} << r;
        if (order <= max_order && order >= lo) out.push_back(GroupSpec::z2pow(r));
      }
      return out;
    case GroupFamily::semidirect: {
      for (std::uint64_t m = 1; m <= max_order; ++m) {
        for (std::uint64_t n = 2; m * n <= max_order; ++n) {
          if (m * n < lo) continue;
          for (std::uint64_t g = 1; g < n; ++g) {
            try {
              out.push_back(GroupSpec::semidirect(m, n, g));
            } catch (const InvalidGroup&) {
            }
          }
        }
      }
      std::stable_sort(out.begin(), out.end(), [](const GroupSpec& a, const GroupSpec& b) {
        return a.order() > b.order();
      });
      return out;
    }
  }
  return out;
}

struct Job {
  std::uint64_t index = 0;
  std::size_t set_id = 0;
  /// For fixed orderings this graph carries the generators in calling order.
  std::shared_ptr<const CayleyGraph> graph;
  BroadcastScheme scheme;
  bool success = false;
  unsigned rounds = 0;
};

class SearchRun {
 public:
  SearchRun(const SearchSpace& space, const std::function<void(const SearchProgress&)>& progress)
      : space_(space), progress_(progress), started_(std::chrono::steady_clock::now()) {}

  SearchResult run() {
    if (space_.budget == 0) throw Error("search budget must be positive");
    if (space_.delta < 1 || space_.time < 1) throw Error("search needs delta >= 1 and time >= 1");
    if (space_.scheme_policy != SchemePolicy::fixed_orderings && space_.schemes_per_set == 0) {
      throw Error("schemes per generator set must be positive");
    }
    const Count bound = moore_bound(space_.delta, space_.time);
    std::uint64_t max_order = bound > Count(kDefaultOrderLimit)
                                  ? kDefaultOrderLimit
                                  : static_cast<std::uint64_t>(bound);
    if (space_.max_order) max_order = std::min(max_order, space_.max_order);

    const auto groups = family_groups(space_, max_order);
    if (groups.empty()) throw Error("search space contains no groups");
    for (const auto& g : groups) {
      if (stop_) break;
      visit_group(g);
    }
    flush();

    SearchResult result;
    result.evaluated = evaluated_;
    result.first_hit = first_hit_;
    result.budget_exhausted = evaluated_ >= space_.budget;
    std::vector<std::pair<std::uint64_t, CatalogRecord>> found;
    for (auto& [set_id, entry] : best_per_set_) found.push_back(std::move(entry));
    std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
      if (a.second.order != b.second.order) return a.second.order > b.second.order;
      return a.first < b.first;
    });
    for (std::size_t i = 0; i < found.size() && i < space_.keep; ++i) {
      result.candidates.push_back(std::move(found[i].second));
    }
    return result;
  }

 private:
  bool out_of_budget() const { return next_index_ >= space_.budget; }

  void visit_group(const GroupSpec& group) {
    if (space_.generators) {
      try_set(group, *space_.generators);
      return;
    }
    const std::uint64_t n = group.order();
    std::vector<std::vector<std::uint64_t>> units;
    std::vector<std::uint64_t> coords(group.arity());
    for (std::uint64_t r = 1; r < n; ++r) {
      const Element e = unrank(group, r);
      inverse_into(group, e.coords, coords);
      const std::uint64_t inv = rank(group, Element{coords});
      if (inv == r) {
        units.push_back({r});
      } else if (r < inv) {
        units.push_back({r, inv});
      }
    }
    std::vector<std::size_t> chosen;
    for (unsigned size = space_.delta; size >= 1 && !stop_; --size) {
      choose(group, units, 0, size, chosen);
    }
  }

  void choose(const GroupSpec& group, const std::vector<std::vector<std::uint64_t>>& units,
              std::size_t start, unsigned remaining, std::vector<std::size_t>& chosen) {
    if (stop_) return;
    if (remaining == 0) {
      std::vector<std::uint64_t> ranks;
      for (std::size_t u : chosen) ranks.insert(ranks.end(), units[u].begin(), units[u].end());
      std::sort(ranks.begin(), ranks.end());
      GeneratorSet gens;
      for (std::uint64_t r : ranks) gens.push_back(unrank(group, r));
      try_set(group, gens);
      return;
    }
    for (std::size_t u = start; u < units.size() && !stop_; ++u) {
      if (units[u].size() > remaining) continue;
      chosen.push_back(u);
      choose(group, units, u + 1, remaining - static_cast<unsigned>(units[u].size()), chosen);
      chosen.pop_back();
    }
  }

  void try_set(const GroupSpec& group, const GeneratorSet& gens) {
    if (stop_ || out_of_budget()) {
      stop_ = true;
      return;
    }
    const std::size_t set_id = sets_.size();
    auto cg = std::make_shared<const CayleyGraph>(build_cayley(group, gens));
    sets_.push_back(cg);
    if (!cg->connected()) {
      ++next_index_;  // a rejected set still costs one candidate
      return;
    }
    const std::size_t k = gens.size();
    switch (space_.scheme_policy) {
      case SchemePolicy::fixed_orderings:
        try_orderings(group, gens, set_id, cg);
        return;
      case SchemePolicy::receipt_permutations:
        for (std::uint64_t s = 0; s < space_.schemes_per_set; ++s) {
          std::mt19937_64 rng(splitmix64(space_.seed ^ splitmix64(next_index_)));
          std::vector<std::vector<std::size_t>> perms(space_.time, std::vector<std::size_t>(k));
          for (auto& p : perms) {
            std::iota(p.begin(), p.end(), 0);
            std::shuffle(p.begin(), p.end(), rng);
          }
          if (!enqueue(set_id, cg, BroadcastScheme::receipt(std::move(perms)))) return;
        }
        return;
      case SchemePolicy::round_generators:
        try_schedules(set_id, cg);
        return;
    }
  }

  void try_orderings(const GroupSpec& group, const GeneratorSet& gens, std::size_t set_id,
                     const std::shared_ptr<const CayleyGraph>& cg) {
    const std::size_t k = gens.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    auto reordered = [&] {
      GeneratorSet g;
      for (std::size_t j : order) g.push_back(gens[j]);
      return std::make_shared<const CayleyGraph>(build_cayley(group, g));
    };
    std::uint64_t fact = 1;
    for (std::size_t i = 2; i <= k && fact <= kMaxExhaustiveOrderings; ++i) fact *= i;
    if (fact <= kMaxExhaustiveOrderings) {
      bool first = true;
      do {
        if (!enqueue(set_id, first ? cg : reordered(), BroadcastScheme::fixed())) return;
        first = false;
      } while (std::next_permutation(order.begin(), order.end()));
      return;
    }
    for (std::uint64_t s = 0; s < space_.schemes_per_set; ++s) {
      std::mt19937_64 rng(splitmix64(space_.seed ^ splitmix64(next_index_)));
      std::shuffle(order.begin(), order.end(), rng);
      if (!enqueue(set_id, reordered(), BroadcastScheme::fixed())) return;
    }
  }

  void try_schedules(std::size_t set_id, const std::shared_ptr<const CayleyGraph>& cg) {
    const auto& gens = cg->generators();
    const std::size_t k = gens.size();
    const unsigned t = space_.time;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < t && total <= kMaxExhaustiveSchedules; ++i) total *= k;
    std::vector<std::size_t> seq(t, 0);
    auto scheme = [&] {
      std::vector<Element> rounds;
      for (std::size_t j : seq) rounds.push_back(gens[j]);
      return BroadcastScheme::rounds(std::move(rounds));
    };
    if (total <= kMaxExhaustiveSchedules) {
      for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t x = c;
        for (unsigned i = t; i-- > 0;) {
          seq[i] = x % k;
          x /= k;
        }
        if (!enqueue(set_id, cg, scheme())) return;
      }
      return;
    }
    for (std::uint64_t s = 0; s < space_.schemes_per_set; ++s) {
      std::mt19937_64 rng(splitmix64(space_.seed ^ splitmix64(next_index_)));
      std::uniform_int_distribution<std::size_t> pick(0, k - 1);
      for (auto& j : seq) j = pick(rng);
      if (!enqueue(set_id, cg, scheme())) return;
    }
  }

  bool enqueue(std::size_t set_id, std::shared_ptr<const CayleyGraph> cg, BroadcastScheme scheme) {
    if (stop_ || out_of_budget()) {
      stop_ = true;
      return false;
    }
    batch_.push_back(Job{next_index_++, set_id, std::move(cg), std::move(scheme)});
    if (batch_.size() >= kBatchSize) flush();
    return !stop_;
  }

  void evaluate(Job& job) const {
    SimulationOptions opts;
    opts.max_rounds = space_.time;
    const auto done = broadcast_time_under_scheme(*job.graph, job.scheme, opts);
    if (done && *done <= space_.time) {
      job.success = true;
      job.rounds = *done;
    }
  }

  void flush() {
    if (batch_.empty()) return;
    const unsigned jobs = std::max(1U, space_.jobs);
    if (jobs == 1 || batch_.size() < 2) {
      for (auto& job : batch_) evaluate(job);
    } else {
      std::vector<std::thread> workers;
      for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([this, w, jobs] {
          for (std::size_t i = w; i < batch_.size(); i += jobs) evaluate(batch_[i]);
        });
      }
      for (auto& t : workers) t.join();
    }

    // merge in candidate order so the result is independent of scheduling
    for (const auto& job : batch_) {
      ++evaluated_;
      if (!job.success) continue;
      ++found_;
      if (!first_hit_) first_hit_ = job.index;
      if (best_per_set_.contains(job.set_id)) continue;
      best_per_set_.emplace(job.set_id, std::make_pair(job.index, make_record(job)));
      best_order_ = std::max<std::uint64_t>(best_order_, job.graph->vertex_count());
    }
    batch_.clear();
    evaluated_ = std::max(evaluated_, next_index_);

    if (progress_) progress_({evaluated_, found_, best_order_});
    if (space_.stop_at_first && first_hit_) stop_ = true;
    if (space_.wall_seconds > 0) {
      const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - started_;
      if (spent.count() >= space_.wall_seconds) stop_ = true;
    }
  }

  CatalogRecord make_record(const Job& job) const {
    const CayleyGraph& cg = *job.graph;
    FamilyWitness w;
    w.delta = space_.delta;
    w.time = space_.time;
    w.group = cg.group();
    w.expected_order = cg.vertex_count();
    w.generators = cg.generators();
    w.scheme = job.scheme;
    return to_record(w, job.rounds,
                     "search family=" + to_string(space_.family) +
                         " seed=" + std::to_string(space_.seed) +
                         " candidate=" + std::to_string(job.index));
  }

  const SearchSpace& space_;
  const std::function<void(const SearchProgress&)>& progress_;
  std::chrono::steady_clock::time_point started_;

  std::vector<std::shared_ptr<const CayleyGraph>> sets_;
  std::vector<Job> batch_;
  std::uint64_t next_index_ = 0;
  std::uint64_t evaluated_ = 0;
  std::uint64_t found_ = 0;
  std::uint64_t best_order_ = 0;
  std::optional<std::uint64_t> first_hit_;
  std::map<std::size_t, std::pair<std::uint64_t, CatalogRecord>> best_per_set_;
  bool stop_ = false;
};

}  // namespace

SearchResult run_search(const SearchSpace& space,
                        const std::function<void(const SearchProgress&)>& progress) {
  return SearchRun(space, progress).run();
}

std::vector<CatalogRecord> product_proposals(const Catalog& catalog, unsigned max_delta,
                                             unsigned max_time) {
  std::vector<CatalogRecord> out;
  for (const auto& [key, rec] : catalog.records()) {
    if (rec.delta + 1 > max_delta || rec.time + 1 > max_time) continue;
    const CatalogRecord* existing = catalog.find(rec.delta + 1, rec.time + 1);
    if (existing && existing->order >= 2 * rec.order) continue;
    const auto lifted = lift_through_k2(to_witness(rec));
    if (!lifted) continue;
    out.push_back(to_record(*lifted, lifted->expected_round,
                            "K2 product of (" + std::to_string(rec.delta) + "," +
                                std::to_string(rec.time) + ") record"));
  }
  return out;
}

}  // namespace cayleycast
