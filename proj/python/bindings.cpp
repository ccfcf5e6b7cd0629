#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cayleycast/bounds.hpp"
#include "cayleycast/catalog.hpp"
#include "cayleycast/error.hpp"
#include "cayleycast/exact.hpp"
#include "cayleycast/families.hpp"
#include "cayleycast/search.hpp"

namespace py = pybind11;
using namespace cayleycast;

namespace {

// Python ints are arbitrary precision; go through the decimal text.
py::int_ to_py(const Count& c) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(c.str().c_str(), nullptr, 10));
}

py::dict record_to_dict(const CatalogRecord& r) {
  py::dict d;
  d["delta"] = r.delta;
  d["time"] = r.time;
  d["order"] = r.order;
  d["group"] = r.group;
  d["generators"] = r.generators;
  d["scheme"] = r.scheme;
  d["rounds"] = r.rounds;
  d["note"] = r.note;
  d["checksum"] = r.checksum;
  return d;
}

CatalogRecord record_from_dict(const py::dict& d) {
  CatalogRecord r;
  r.delta = d["delta"].cast<unsigned>();
  r.time = d["time"].cast<unsigned>();
  r.order = d["order"].cast<std::uint64_t>();
  r.group = d["group"].cast<std::string>();
  r.generators = d["generators"].cast<std::string>();
  r.scheme = d["scheme"].cast<std::string>();
  r.rounds = d["rounds"].cast<unsigned>();
  r.note = d.contains("note") ? d["note"].cast<std::string>() : std::string();
  r.checksum = d.contains("checksum") ? d["checksum"].cast<std::string>() : std::string();
  return r;
}

py::dict trace_to_dict(const SimulationTrace& t) {
  py::list rounds;
  for (const auto& round : t.rounds) {
    py::list calls;
    for (const Call& c : round) calls.append(py::make_tuple(c.caller, c.callee));
    rounds.append(calls);
  }
  py::dict d;
  d["origin"] = t.origin;
  d["rounds"] = rounds;
  d["informed_time"] = t.informed_time;
  d["completion_round"] = t.completion_round;
  return d;
}

py::dict verification_to_dict(const FamilyWitness& w, const VerificationReport& r) {
  py::list checks;
  for (const Check& c : r.checks) {
    py::dict cd;
    cd["name"] = c.name;
    cd["passed"] = c.passed;
    cd["detail"] = c.detail;
    checks.append(cd);
  }
  py::dict d;
  d["passed"] = r.passed();
  d["summary"] = summarize(w, r);
  d["checks"] = checks;
  d["completion_round"] = r.trace ? r.trace->completion_round : std::nullopt;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Broadcast networks on Cayley graphs";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<InvalidGroup>(m, "InvalidGroup", error.ptr());
  py::register_exception<NotAMember>(m, "NotAMember", error.ptr());
  py::register_exception<GroupTooLarge>(m, "GroupTooLarge", error.ptr());
  py::register_exception<InvalidGenerators>(m, "InvalidGenerators", error.ptr());
  py::register_exception<InvalidGraph>(m, "InvalidGraph", error.ptr());
  py::register_exception<SchemeMismatch>(m, "SchemeMismatch", error.ptr());

  py::class_<GroupSpec>(m, "Group")
      .def(py::init([](const std::string& text) { return parse_group_spec(text); }), py::arg("spec"))
      .def_property_readonly("order", &GroupSpec::order)
      .def("elements",
           [](const GroupSpec& g) {
             std::vector<std::string> out;
             for (const auto& e : enumerate_elements(g)) out.push_back(format_element(g, e));
             return out;
           })
      .def("multiply",
           [](const GroupSpec& g, const std::string& a, const std::string& b) {
             return format_element(g, multiply(g, parse_element(g, a), parse_element(g, b)));
           })
      .def("inverse",
           [](const GroupSpec& g, const std::string& a) {
             return format_element(g, inverse(g, parse_element(g, a)));
           })
      .def("identity", [](const GroupSpec& g) { return format_element(g, identity(g)); })
      .def("__str__", &GroupSpec::to_string)
      .def("__repr__", [](const GroupSpec& g) { return "Group('" + g.to_string() + "')"; })
      .def("__eq__", [](const GroupSpec& a, const GroupSpec& b) { return a == b; });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
             return Graph(n, edges);
           }),
           py::arg("vertex_count"), py::arg("edges"))
      .def_static("named", &named_graph, py::arg("name"))
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("edges", &Graph::edges)
      .def("neighbors",
           [](const Graph& g, Vertex v) {
             auto span = g.neighbors(v);
             return std::vector<Vertex>(span.begin(), span.end());
           })
      .def("is_connected", &Graph::is_connected)
      .def("diameter", [](const Graph& g) { return diameter(g); })
      .def("export",
           [](const Graph& g, const std::string& format) {
             if (format == "edge-list") return export_graph(g, GraphFormat::edge_list);
             if (format == "dot") return export_graph(g, GraphFormat::dot);
             throw Error("unknown graph format '" + format + "'");
           },
           py::arg("format") = "edge-list")
      .def("product_with_k2", [](const Graph& g) { return product_with_k2(g); });

  py::class_<CayleyGraph>(m, "CayleyGraph")
      .def(py::init([](const std::string& group, const std::string& generators) {
             const GroupSpec g = parse_group_spec(group);
             return build_cayley(g, parse_generators(g, generators));
           }),
           py::arg("group"), py::arg("generators"))
      .def_static("hypercube", [](unsigned r) { return hypercube(r); }, py::arg("r"))
      .def_property_readonly("group", &CayleyGraph::group)
      .def_property_readonly("graph", &CayleyGraph::graph)
      .def_property_readonly("vertex_count", &CayleyGraph::vertex_count)
      .def_property_readonly("degree", &CayleyGraph::degree)
      .def_property_readonly("connected", &CayleyGraph::connected)
      .def_property_readonly("warning", &CayleyGraph::warning)
      .def("element", [](const CayleyGraph& cg, Vertex v) {
        return format_element(cg.group(), cg.element(v));
      })
      .def("simulate",
           [](const CayleyGraph& cg, const std::string& scheme, Vertex origin,
              std::optional<unsigned> max_rounds, bool keep_receipt_generator) {
             SimulationOptions opts;
             opts.max_rounds = max_rounds;
             opts.keep_receipt_generator = keep_receipt_generator;
             return trace_to_dict(simulate(cg, parse_scheme(cg.group(), scheme), origin, opts));
           },
           py::arg("scheme") = "fixed", py::arg("origin") = 0, py::arg("max_rounds") = py::none(),
           py::arg("keep_receipt_generator") = false)
      .def("broadcast_time",
           [](const CayleyGraph& cg, const std::string& scheme) {
             return broadcast_time_under_scheme(cg, parse_scheme(cg.group(), scheme));
           },
           py::arg("scheme") = "fixed");

  m.def("moore_f", [](unsigned d, unsigned t) { return to_py(moore_f(d, t)); }, py::arg("degree"),
        py::arg("rounds"));
  m.def("moore_bound", [](unsigned d, unsigned t) { return to_py(moore_bound(d, t)); },
        py::arg("delta"), py::arg("t"));
  m.def("bound_table",
        [](unsigned max_delta, unsigned max_time) {
          const BoundTable table = bound_table(max_delta, max_time);
          py::list rows;
          for (const auto& row : table.values) {
            py::list cells;
            for (const Count& c : row) cells.append(to_py(c));
            rows.append(cells);
          }
          return rows;
        },
        py::arg("max_delta"), py::arg("max_time"),
        "Rows are delta = 2..max_delta, columns t = 2..max_time.");

  m.def("exact_broadcast_time",
        [](const Graph& g, std::optional<Vertex> origin, std::size_t cap) {
          ExactOptions opts;
          opts.vertex_cap = cap;
          if (origin) return exact_broadcast_time_from(g, *origin, opts).rounds;
          return exact_broadcast_time(g, opts);
        },
        py::arg("graph"), py::arg("origin") = py::none(), py::arg("cap") = kDefaultExactVertexCap);
  m.def("exact_schedule",
        [](const Graph& g, Vertex origin) { return trace_to_dict(exact_broadcast_time_from(g, origin).witness); },
        py::arg("graph"), py::arg("origin") = 0);
  m.def("greedy_upper_bound", &greedy_upper_bound, py::arg("graph"), py::arg("origin") = 0);
  m.def("log2_lower_bound", &log2_lower_bound, py::arg("graph"));

  m.def("verify_family",
        [](const std::string& kind, unsigned param) {
          FamilyWitness w;
          if (kind == "dihedral") {
            w = dihedral_family(param);
          } else if (kind == "hypercube") {
            w = hypercube_family(param);
          } else if (kind == "cycle") {
            w = cycle_family(param);
          } else {
            throw Error("unknown family '" + kind + "'");
          }
          return verification_to_dict(w, verify_family_witness(w));
        },
        py::arg("kind"), py::arg("param"),
        "param is delta for dihedral and hypercube, t for cycle.");

  m.def("search",
        [](const std::string& family, unsigned delta, unsigned time, std::uint64_t budget,
           std::uint64_t seed, unsigned jobs, const std::string& policy,
           std::optional<std::string> group, std::optional<std::string> generators,
           std::uint64_t schemes_per_set, bool stop_at_first) {
          SearchSpace space;
          space.family = parse_group_family(family);
          space.delta = delta;
          space.time = time;
          space.budget = budget;
          space.seed = seed;
          space.jobs = jobs;
          // "auto" matches the command-line default
          if (policy == "auto") {
            space.scheme_policy = space.family == GroupFamily::dihedral
                                      ? SchemePolicy::round_generators
                                      : SchemePolicy::fixed_orderings;
          } else {
            space.scheme_policy = parse_scheme_policy(policy);
          }
          space.schemes_per_set = schemes_per_set;
          space.stop_at_first = stop_at_first;
          if (group) {
            space.group = parse_group_spec(*group);
            space.family = GroupFamily::fixed;
            if (generators) space.generators = parse_generators(*space.group, *generators);
          }
          SearchResult r;
          {
            py::gil_scoped_release release;
            r = run_search(space);
          }
          py::list records;
          for (const auto& rec : r.candidates) records.append(record_to_dict(rec));
          py::dict out;
          out["records"] = records;
          out["evaluated"] = r.evaluated;
          out["first_hit"] = r.first_hit;
          out["budget_exhausted"] = r.budget_exhausted;
          return out;
        },
        py::arg("family") = "dihedral", py::arg("delta") = 3, py::arg("time") = 4,
        py::arg("budget") = 10'000, py::arg("seed") = 1, py::arg("jobs") = 1,
        py::arg("policy") = "auto", py::arg("group") = py::none(),
        py::arg("generators") = py::none(), py::arg("schemes_per_set") = 64,
        py::arg("stop_at_first") = false);

  m.def("seed_catalog", [] {
    py::list out;
    const Catalog seeded = seed_catalog();
    for (const auto& [key, rec] : seeded.records()) out.append(record_to_dict(rec));
    return out;
  });
  m.def("verify_record",
        [](const py::dict& d) {
          const RecordReport r = verify_record(record_from_dict(d));
          py::dict out;
          out["passed"] = r.passed;
          out["optimal"] = r.optimal;
          out["achieved_rounds"] = r.achieved_rounds;
          out["reasons"] = r.reasons;
          return out;
        },
        py::arg("record"));
  m.def("catalog_update",
        [](const std::filesystem::path& path, const py::dict& d) {
          const auto r = catalog_update(path, record_from_dict(d));
          static const char* names[] = {"inserted", "replaced", "kept_existing", "rejected"};
          return py::make_tuple(names[static_cast<int>(r.outcome)], r.reason);
        },
        py::arg("path"), py::arg("record"));
}
