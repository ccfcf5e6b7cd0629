#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cayleycast/bounds.hpp"
#include "cayleycast/broadcast.hpp"
#include "cayleycast/catalog.hpp"
#include "cayleycast/cayley.hpp"
#include "cayleycast/error.hpp"
#include "cayleycast/exact.hpp"
#include "cayleycast/families.hpp"
#include "cayleycast/group.hpp"
#include "cayleycast/search.hpp"

using namespace cayleycast;

namespace {

constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

CayleyGraph cayley_from(const std::string& group_text, const std::string& gens_text) {
  const GroupSpec group = parse_group_spec(group_text);
  return build_cayley(group, parse_generators(group, gens_text));
}

void print_trace(const SimulationTrace& trace) { std::cout << format_trace(trace); }

// ---- bounds

struct BoundsArgs {
  unsigned max = 10;
  unsigned max_time = 0;
  std::string format = "pretty";
};

int run_bounds(const BoundsArgs& a) {
  const unsigned t = a.max_time ? a.max_time : a.max;
  const BoundTable table = bound_table(a.max, t);
  std::cout << render_bound_table(table, a.format == "tsv" ? TableFormat::tsv : TableFormat::pretty);
  return 0;
}

// ---- build

struct BuildArgs {
  std::string group;
  std::string generators;
  std::string format;
  std::string output;
};

int run_build(const BuildArgs& a) {
  const CayleyGraph cg = cayley_from(a.group, a.generators);
  // with an export going to stdout the summary moves to stderr
  std::ostream& info = (!a.format.empty() && a.output.empty()) ? std::cerr : std::cout;
  info << "group: " << cg.group().to_string() << '\n'
       << "order: " << cg.vertex_count() << '\n'
       << "degree: " << cg.degree() << '\n'
       << "edges: " << cg.graph().edge_count() << '\n'
       << "connected: " << (cg.connected() ? "yes" : "no") << '\n';
  if (cg.connected()) info << "diameter: " << diameter(cg.graph()) << '\n';
  if (!cg.warning().empty()) std::cerr << "warning: " << cg.warning() << '\n';

  if (!a.format.empty()) {
    const GraphFormat fmt = a.format == "dot" ? GraphFormat::dot : GraphFormat::edge_list;
    const std::string text = export_graph(cg.graph(), fmt);
    if (a.output.empty()) {
      std::cout << text << '\n';
    } else {
      write_file(a.output, text);
    }
  }
  return 0;
}

// ---- simulate

struct SimulateArgs {
  std::string group;
  std::string generators;
  std::string scheme = "fixed";
  long long origin = 0;
  unsigned max_rounds = 0;
  bool keep_receipt = false;
  bool quiet = false;
};

int run_simulate(const SimulateArgs& a) {
  const CayleyGraph cg = cayley_from(a.group, a.generators);
  if (a.origin < 0 || static_cast<unsigned long long>(a.origin) >= cg.vertex_count()) {
    throw Error("origin " + std::to_string(a.origin) + " out of range [0, " +
                std::to_string(cg.vertex_count()) + ")");
  }
  const BroadcastScheme scheme = parse_scheme(cg.group(), a.scheme);
  SimulationOptions opts;
  if (a.max_rounds) opts.max_rounds = a.max_rounds;
  opts.keep_receipt_generator = a.keep_receipt;
  const SimulationTrace trace = simulate(cg, scheme, static_cast<Vertex>(a.origin), opts);
  if (!a.quiet) print_trace(trace);
  if (trace.completion_round) {
    std::cout << "completed in " << *trace.completion_round << " rounds\n";
  } else {
    const auto counts = trace.informed_counts();
    std::cout << "incomplete after " << trace.rounds.size() << " rounds (" << counts.back() << " of "
              << cg.vertex_count() << " informed)\n";
  }
  return 0;
}

// ---- exact

struct ExactArgs {
  std::string named;
  std::string edges;
  std::string group;
  std::string generators;
  std::optional<unsigned> origin;
  std::size_t cap = kDefaultExactVertexCap;
  bool witness = false;
};

int run_exact(const ExactArgs& a) {
  ExactOptions opts;
  opts.vertex_cap = a.cap;
  std::optional<CayleyGraph> cg;
  Graph g;
  if (!a.named.empty()) {
    g = named_graph(a.named);
  } else if (!a.edges.empty()) {
    g = parse_edge_list(read_file(a.edges));
  } else if (!a.group.empty()) {
    cg = cayley_from(a.group, a.generators);
    g = cg->graph();
  } else {
    throw UsageError("exact needs --named, --edges, or --group with --generators");
  }
  std::cout << "graph: " << (g.name().empty() ? "(unnamed)" : g.name()) << " ("
            << g.vertex_count() << " vertices, " << g.edge_count() << " edges)\n";

  if (a.origin || a.witness) {
    const Vertex origin = a.origin.value_or(0);
    if (origin >= g.vertex_count()) throw Error("origin " + std::to_string(origin) + " out of range");
    const ExactResult r = exact_broadcast_time_from(g, origin, opts);
    std::cout << "broadcast time from " << origin << ": " << r.rounds << '\n';
    if (a.witness) print_trace(r.witness);
    return 0;
  }
  const unsigned b = cg ? exact_broadcast_time(*cg, opts) : exact_broadcast_time(g, opts);
  std::cout << "broadcast time: " << b << '\n';
  return 0;
}

// ---- family

struct FamilyArgs {
  std::string kind = "dihedral";
  unsigned delta = 0;
  unsigned time = 0;
  bool json = false;
};

int run_family_verify(const FamilyArgs& a) {
  FamilyWitness w;
  if (a.kind == "dihedral") {
    if (a.delta < 2) throw UsageError("dihedral family needs --delta >= 2");
    w = dihedral_family(a.delta);
  } else if (a.kind == "hypercube") {
    if (a.delta < 1) throw UsageError("hypercube family needs --delta >= 1");
    w = hypercube_family(a.delta);
  } else {
    if (a.time < 2) throw UsageError("cycle family needs --time >= 2");
    w = cycle_family(a.time);
  }
  const VerificationReport report = verify_family_witness(w);
  std::cout << summarize(w, report) << '\n';
  if (a.json && report.passed()) {
    std::cout << to_json_line(to_record(w, *report.trace->completion_round, w.family)) << '\n';
  }
  return report.passed() ? 0 : 1;
}

// ---- search

struct SearchArgs {
  std::string family = "dihedral";
  unsigned delta = 3;
  unsigned time = 4;
  std::uint64_t budget = 10'000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::uint64_t max_order = 0;
  std::string policy = "auto";
  std::uint64_t schemes_per_set = 64;
  double wall_seconds = 0;
  std::string group;
  std::string generators;
  std::string catalog;
  std::string format = "tsv";
  std::size_t keep = 20;
  bool stop_at_first = false;
  bool progress = true;
};

int run_search_cmd(const SearchArgs& a) {
  SearchSpace space;
  space.family = parse_group_family(a.family);
  space.delta = a.delta;
  space.time = a.time;
  space.budget = a.budget;
  space.seed = a.seed;
  space.jobs = a.jobs;
  space.max_order = a.max_order;
  if (a.policy == "auto") {
    // reflections only pay off with a per-round schedule
    space.scheme_policy = space.family == GroupFamily::dihedral ? SchemePolicy::round_generators
                                                                : SchemePolicy::fixed_orderings;
  } else {
    space.scheme_policy = parse_scheme_policy(a.policy);
  }
  space.schemes_per_set = a.schemes_per_set;
  space.wall_seconds = a.wall_seconds;
  space.stop_at_first = a.stop_at_first;
  space.keep = a.keep;
  if (!a.group.empty()) {
    space.group = parse_group_spec(a.group);
    space.family = GroupFamily::fixed;
  }
  if (space.family == GroupFamily::fixed && !space.group) {
    throw UsageError("--family fixed needs --group");
  }
  if (!a.generators.empty()) {
    if (!space.group) throw UsageError("--generators needs --group");
    space.generators = parse_generators(*space.group, a.generators);
  }

  auto last = std::chrono::steady_clock::now();
  auto report = [&](const SearchProgress& p) {
    if (!a.progress) return;
    const auto now = std::chrono::steady_clock::now();
    if (now - last < std::chrono::seconds(1)) return;
    last = now;
    std::cerr << "evaluated " << p.evaluated << ", found " << p.found << ", best order "
              << p.best_order << '\n';
  };
  const SearchResult result = run_search(space, report);

  std::cerr << "evaluated " << result.evaluated << " candidates";
  if (result.first_hit) std::cerr << ", first hit at " << *result.first_hit;
  if (result.budget_exhausted) std::cerr << ", budget exhausted";
  std::cerr << '\n';

  if (a.format == "json-lines") {
    for (const auto& rec : result.candidates) std::cout << to_json_line(rec) << '\n';
  } else {
    std::cout << "order\trounds\tgroup\tgenerators\tscheme\n";
    for (const auto& rec : result.candidates) {
      std::cout << rec.order << '\t' << rec.rounds << '\t' << rec.group << '\t' << rec.generators
                << '\t' << rec.scheme << '\n';
    }
  }

  if (!a.catalog.empty() && !result.candidates.empty()) {
    const auto outcome = catalog_update(a.catalog, result.candidates.front());
    switch (outcome.outcome) {
      case Catalog::Outcome::inserted:
        std::cerr << "catalog: inserted\n";
        break;
      case Catalog::Outcome::replaced:
        std::cerr << "catalog: replaced previous record\n";
        break;
      case Catalog::Outcome::kept_existing:
        std::cerr << "catalog: kept existing record\n";
        break;
      case Catalog::Outcome::rejected:
        std::cerr << "catalog: rejected: " << outcome.reason << '\n';
        break;
    }
  }
  return 0;
}

// ---- catalog

struct CatalogArgs {
  std::string path = "catalog.jsonl";
  std::string format = "pretty";
  std::string record;
  std::string from;
};

CatalogFormat catalog_format(const std::string& name) {
  if (name == "tsv") return CatalogFormat::tsv;
  if (name == "json-lines") return CatalogFormat::json_lines;
  return CatalogFormat::pretty;
}

int run_catalog_verify(const CatalogArgs& a) {
  const CatalogReport report = catalog_verify(a.path);
  for (const auto& [rec, r] : report.entries) {
    std::cout << "(" << rec.delta << "," << rec.time << ") order " << rec.order << ": "
              << (r.passed ? "ok" : "FAIL");
    if (r.passed && r.optimal) std::cout << " optimal";
    for (const auto& why : r.reasons) std::cout << "; " << why;
    std::cout << '\n';
  }
  std::cout << report.entries.size() << " records, " << (report.all_passed() ? "all pass" : "failures")
            << '\n';
  return report.all_passed() ? 0 : 1;
}

int run_catalog_update(const CatalogArgs& a) {
  std::string lines = a.record;
  if (!a.from.empty()) lines = read_file(a.from);
  if (lines.empty()) throw UsageError("catalog update needs --record or --from");
  int status = 0;
  std::istringstream in(lines);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const CatalogRecord rec = from_json_line(line);
    const auto outcome = catalog_update(a.path, rec);
    std::cout << "(" << rec.delta << "," << rec.time << ") order " << rec.order << ": ";
    switch (outcome.outcome) {
      case Catalog::Outcome::inserted:
        std::cout << "inserted\n";
        break;
      case Catalog::Outcome::replaced:
        std::cout << "replaced\n";
        break;
      case Catalog::Outcome::kept_existing:
        std::cout << "not inserted (" << outcome.reason << ")\n";
        break;
      case Catalog::Outcome::rejected:
        std::cout << "rejected: " << outcome.reason << '\n';
        status = 1;
        break;
    }
  }
  return status;
}

int run_catalog_show(const CatalogArgs& a) {
  std::cout << render_catalog(Catalog::load(a.path), catalog_format(a.format));
  return 0;
}

int run_catalog_seed(const CatalogArgs& a) {
  std::size_t changed = 0;
  const Catalog seeded = seed_catalog();
  for (const auto& [key, rec] : seeded.records()) {
    const auto r = catalog_update(a.path, rec);
    if (r.outcome == Catalog::Outcome::inserted || r.outcome == Catalog::Outcome::replaced) ++changed;
  }
  // products of whatever the file now holds, including searched records
  const Catalog current = Catalog::load(a.path);
  for (const auto& rec : product_proposals(current, 10, 10)) {
    const auto r = catalog_update(a.path, rec);
    if (r.outcome == Catalog::Outcome::inserted || r.outcome == Catalog::Outcome::replaced) ++changed;
  }
  std::cout << "seeded " << a.path << ": " << changed << " records written, "
            << Catalog::load(a.path).records().size() << " total\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley graph broadcast networks: bounds, simulation, exact search, catalog"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cayleycast 0.1.0");

  BoundsArgs bounds;
  auto* cmd_bounds = app.add_subcommand("bounds", "Moore-type bounds M(delta, t)");
  cmd_bounds->add_option("--max", bounds.max, "largest delta (and t unless --max-time)")
      ->check(CLI::Range(2u, 64u));
  cmd_bounds->add_option("--max-time", bounds.max_time, "largest t")->check(CLI::Range(2u, 256u));
  cmd_bounds->add_option("--format", bounds.format)->check(CLI::IsMember({"tsv", "pretty"}));

  BuildArgs build;
  auto* cmd_build = app.add_subcommand("build", "Build a Cayley graph and report its shape");
  cmd_build->add_option("-g,--group", build.group, "group spec, e.g. dihedral(7)")->required();
  cmd_build->add_option("-s,--generators", build.generators, "e.g. (1,0),(1,1),(1,3)")->required();
  cmd_build->add_option("--export", build.format)->check(CLI::IsMember({"edge-list", "dot"}));
  cmd_build->add_option("-o,--output", build.output, "export file (default stdout)");

  SimulateArgs sim;
  auto* cmd_sim = app.add_subcommand("simulate", "Replay a broadcast scheme");
  cmd_sim->add_option("-g,--group", sim.group)->required();
  cmd_sim->add_option("-s,--generators", sim.generators)->required();
  cmd_sim->add_option("--scheme", sim.scheme, "fixed | perm: ... | rounds: ...");
  cmd_sim->add_option("--origin", sim.origin, "origin vertex (canonical rank)");
  cmd_sim->add_option("--max-rounds", sim.max_rounds);
  cmd_sim->add_flag("--keep-receipt-generator", sim.keep_receipt,
                    "walk the full list from the start, including the callback");
  cmd_sim->add_flag("-q,--quiet", sim.quiet, "omit the per-round trace");

  ExactArgs exact;
  unsigned exact_origin = 0;
  auto* cmd_exact = app.add_subcommand("exact", "Exact minimum broadcast time (small graphs)");
  cmd_exact->add_option("--named", exact.named, "petersen | cycle(n) | complete(n)");
  cmd_exact->add_option("--edges", exact.edges, "edge-list file");
  cmd_exact->add_option("-g,--group", exact.group);
  cmd_exact->add_option("-s,--generators", exact.generators);
  auto* opt_origin = cmd_exact->add_option("--origin", exact_origin);
  cmd_exact->add_option("--cap", exact.cap, "vertex cap; memory grows like 2^n")
      ->check(CLI::Range(std::size_t{1}, std::size_t{40}));
  cmd_exact->add_flag("--witness", exact.witness, "print an optimal schedule");

  FamilyArgs family;
  auto* cmd_family = app.add_subcommand("family", "Closed-form constructions");
  cmd_family->require_subcommand(1);
  auto* cmd_family_verify = cmd_family->add_subcommand("verify", "Replay and check a family member");
  cmd_family_verify->add_option("--kind", family.kind)
      ->check(CLI::IsMember({"dihedral", "hypercube", "cycle"}));
  cmd_family_verify->add_option("--delta", family.delta);
  cmd_family_verify->add_option("--time", family.time, "cycle family only");
  cmd_family_verify->add_flag("--json", family.json, "also print the catalog record");

  SearchArgs search;
  auto* cmd_search = app.add_subcommand("search", "Search for record broadcast networks");
  cmd_search->add_option("--family", search.family)
      ->check(CLI::IsMember({"dihedral", "cyclic", "z2pow", "semidirect", "fixed"}));
  cmd_search->add_option("--delta", search.delta)->check(CLI::Range(1u, 64u));
  cmd_search->add_option("--time", search.time)->check(CLI::Range(1u, 256u));
  cmd_search->add_option("--budget", search.budget, "candidate limit")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  cmd_search->add_option("--seed", search.seed);
  cmd_search->add_option("--jobs", search.jobs)->check(CLI::Range(1u, 256u));
  cmd_search->add_option("--max-order", search.max_order);
  cmd_search->add_option("--policy", search.policy, "auto | fixed | perm | rounds")
      ->check(CLI::IsMember({"auto", "fixed", "perm", "rounds"}));
  cmd_search->add_option("--schemes-per-set", search.schemes_per_set)
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  cmd_search->add_option("--wall-seconds", search.wall_seconds)->check(CLI::NonNegativeNumber);
  cmd_search->add_option("-g,--group", search.group, "search this group only");
  cmd_search->add_option("-s,--generators", search.generators, "search this generator set only");
  cmd_search->add_option("--catalog", search.catalog, "offer the best candidate to this catalog");
  cmd_search->add_option("--format", search.format)->check(CLI::IsMember({"tsv", "json-lines"}));
  cmd_search->add_option("--keep", search.keep);
  cmd_search->add_flag("--stop-at-first", search.stop_at_first);
  cmd_search->add_flag("!--no-progress", search.progress);

  CatalogArgs cat;
  auto* cmd_catalog = app.add_subcommand("catalog", "Persistent record catalog");
  cmd_catalog->require_subcommand(1);
  cmd_catalog->add_option("--path", cat.path)->capture_default_str();
  auto* cmd_cat_verify = cmd_catalog->add_subcommand("verify", "Replay every record");
  auto* cmd_cat_update = cmd_catalog->add_subcommand("update", "Offer records");
  cmd_cat_update->add_option("--record", cat.record, "one JSON record");
  cmd_cat_update->add_option("--from", cat.from, "file of JSON lines");
  auto* cmd_cat_show = cmd_catalog->add_subcommand("show", "Render the catalog");
  cmd_cat_show->add_option("--format", cat.format)
      ->check(CLI::IsMember({"pretty", "tsv", "json-lines"}));
  auto* cmd_cat_seed =
      cmd_catalog->add_subcommand("seed", "Add hypercube, dihedral, cycle and K2-product records");
  for (auto* sub : {cmd_cat_verify, cmd_cat_update, cmd_cat_show, cmd_cat_seed}) {
    sub->add_option("--path", cat.path);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "cayleycast: usage error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*cmd_bounds) return run_bounds(bounds);
    if (*cmd_build) return run_build(build);
    if (*cmd_sim) return run_simulate(sim);
    if (*cmd_exact) {
      if (*opt_origin) exact.origin = exact_origin;
      return run_exact(exact);
    }
    if (*cmd_family_verify) return run_family_verify(family);
    if (*cmd_search) return run_search_cmd(search);
    if (*cmd_cat_verify) return run_catalog_verify(cat);
    if (*cmd_cat_update) return run_catalog_update(cat);
    if (*cmd_cat_show) return run_catalog_show(cat);
    if (*cmd_cat_seed) return run_catalog_seed(cat);
  } catch (const UsageError& e) {
    std::cerr << "cayleycast: usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "cayleycast: error: " << e.what() << '\n';
    return 1;
  }
  return kUsageError;
}
