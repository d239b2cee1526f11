#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lightplan/datasets.hpp"
#include "lightplan/study.hpp"

namespace py = pybind11;
using namespace lightplan;

namespace {

std::optional<int> destinations_from(const py::object& value) {
  if (value.is_none()) return std::nullopt;
  if (py::isinstance<py::str>(value)) {
    const std::string s = value.cast<std::string>();
    if (s == "all") return std::nullopt;
    fail(Errc::invalid_argument, s, "n_destinations expects an int, 'all' or None");
  }
  return value.cast<int>();
}

Solution solve_instance(const DesignInstance& instance, const std::string& method) {
  if (method == "exact") return solve_exact(instance);
  if (method == "greedy") return solve_greedy(instance);
  if (method == "brute-force") return brute_force(instance);
  fail(Errc::invalid_argument, method, "method must be exact, greedy or brute-force");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "survivable optical network design: bypass vs optical-processing "
            "(aggregation, XOR-coded protection)";

  py::register_exception<Error>(m, "DesignError");

  py::class_<Topology>(m, "Topology")
      .def_property_readonly("name", &Topology::name)
      .def_property_readonly("node_count", &Topology::node_count)
      .def_property_readonly("link_count", &Topology::link_count)
      .def("nodes", [](const Topology& t) { return t.nodes(); })
      .def("links",
           [](const Topology& t) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const Link& l : t.links()) {
               out.emplace_back(t.node_name(l.a), t.node_name(l.b));
             }
             return out;
           })
      .def("to_json", &Topology::to_json, py::arg("indent") = 2)
      .def("__repr__", [](const Topology& t) {
        return "Topology(" + t.name() + ", " + std::to_string(t.node_count()) +
               " nodes, " + std::to_string(t.link_count()) + " links)";
      });

  m.def("load_topology", &load_topology, py::arg("json_document"));
  m.def("load_topology_file", &load_topology_file, py::arg("path"));
  m.def("builtin_topology", &builtin_topology, py::arg("name"),
        py::return_value_policy::reference);
  m.def("builtin_topology_names", &builtin_topology_names);

  py::class_<TransceiverTable>(m, "TransceiverTable")
      .def_static("default_table", &TransceiverTable::default_table)
      .def("slices_for", &TransceiverTable::slices_for, py::arg("rate_gbps"),
           py::arg("format"))
      .def("to_json", &TransceiverTable::to_json, py::arg("indent") = 2);
  m.def("load_transceiver_table", &load_transceiver_table, py::arg("json_document"));
  m.def("load_transceiver_table_file", &load_transceiver_table_file, py::arg("path"));

  py::class_<Demand>(m, "Demand")
      .def(py::init([](std::string id, std::string src, std::string dst,
                       int rate_gbps, bool protected_) {
             return Demand{std::move(id), std::move(src), std::move(dst),
                           rate_gbps, protected_};
           }),
           py::arg("id"), py::arg("src"), py::arg("dst"), py::arg("rate_gbps"),
           py::arg("protected") = true)
      .def_readonly("id", &Demand::id)
      .def_readonly("src", &Demand::src)
      .def_readonly("dst", &Demand::dst)
      .def_readonly("rate_gbps", &Demand::rate_gbps)
      .def_readonly("protected", &Demand::is_protected);

  py::class_<DemandSet>(m, "DemandSet")
      .def(py::init([](std::vector<Demand> demands, std::uint64_t seed,
                       std::string model) {
             return DemandSet{std::move(demands), seed, std::move(model)};
           }),
           py::arg("demands"), py::arg("seed") = 0, py::arg("model") = "custom")
      .def_readonly("demands", &DemandSet::demands)
      .def_readonly("seed", &DemandSet::seed)
      .def_readonly("model", &DemandSet::model)
      .def("to_json", [](const DemandSet& s) { return demandset_to_json(s); })
      .def("hash", &demandset_hash);

  m.def(
      "generate_traffic",
      [](const Topology& topology, const py::object& n_destinations, int rate_gbps,
         bool protected_, std::uint64_t seed) {
        return generate_traffic(topology, destinations_from(n_destinations),
                                rate_gbps, protected_, seed);
      },
      py::arg("topology"), py::arg("n_destinations"), py::arg("rate_gbps"),
      py::arg("protected") = true, py::arg("seed") = 1);
  m.def("demandset_from_json", &demandset_from_json, py::arg("json_document"));

  m.def(
      "k_shortest_paths",
      [](const Topology& topology, const std::string& src, const std::string& dst,
         int k) {
        std::vector<std::vector<std::string>> out;
        for (const Path& p : k_shortest_paths(topology, src, dst, k)) {
          out.push_back(path_node_names(topology, p));
        }
        return out;
      },
      py::arg("topology"), py::arg("src"), py::arg("dst"), py::arg("k") = 5);
  m.def(
      "disjoint_pairs",
      [](const Topology& topology, const std::string& src, const std::string& dst,
         int k) {
        std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
        for (const PathPair& p : disjoint_pairs(topology, src, dst, k)) {
          out.emplace_back(path_node_names(topology, p.working),
                           path_node_names(topology, p.protection));
        }
        return out;
      },
      py::arg("topology"), py::arg("src"), py::arg("dst"), py::arg("k") = 5);

  py::class_<Solution>(m, "Solution")
      .def_readonly("total_cost", &Solution::total_cost)
      .def_property_readonly(
          "optimality",
          [](const Solution& s) { return std::string(optimality_name(s.optimality)); })
      .def_property_readonly("stats",
                             [](const Solution& s) {
                               py::dict d;
                               d["candidates_total"] = s.stats.candidates_total;
                               d["nodes_explored"] = s.stats.nodes_explored;
                               d["runtime_ms"] = s.stats.runtime_ms;
                               d["bound"] = s.stats.bound;
                               return d;
                             })
      .def("config_kinds",
           [](const Solution& s) {
             std::vector<std::string> kinds;
             for (const auto& c : s.configs) kinds.push_back(kind_name(c.kind));
             return kinds;
           })
      .def(
          "survivable",
          [](const Solution& s, const Topology& topology) {
            return verify_survivability(s.configs, topology).survivable;
          },
          py::arg("topology"))
      .def(
          "to_json",
          [](const Solution& s, const Topology& topology,
             const std::vector<Demand>& demands, int indent) {
            return solution_to_json(s.configs, demands, topology, indent);
          },
          py::arg("topology"), py::arg("demands"), py::arg("indent") = 2);

  m.def(
      "solve",
      [](const Topology& topology, const DemandSet& demands,
         const TransceiverTable& table, const std::string& paradigm, int k,
         const std::string& agg_scope, const std::string& method) {
        DesignInstance instance{topology, demands, table, parse_paradigm(paradigm),
                                k, parse_agg_scope(agg_scope)};
        return solve_instance(instance, method);
      },
      py::arg("topology"), py::arg("demands"), py::arg("table"),
      py::arg("paradigm") = "bypass", py::arg("k") = 5,
      py::arg("agg_scope") = "both", py::arg("method") = "exact");

  py::class_<StudyRow>(m, "StudyRow")
      .def_readonly("set_index", &StudyRow::set_index)
      .def_readonly("seed", &StudyRow::seed)
      .def_readonly("bypass_cost", &StudyRow::bypass_cost)
      .def_readonly("processing_cost", &StudyRow::processing_cost)
      .def_readonly("gain_percent", &StudyRow::gain_percent)
      .def_readonly("feasible", &StudyRow::feasible);

  py::class_<StudyResult>(m, "StudyResult")
      .def_readonly("rows", &StudyResult::rows)
      .def_property_readonly("max_gain",
                             [](const StudyResult& r) { return r.summary.max_gain; })
      .def_property_readonly("mean_gain",
                             [](const StudyResult& r) { return r.summary.mean_gain; })
      .def_property_readonly(
          "strictly_better",
          [](const StudyResult& r) { return r.summary.strictly_better; })
      .def("csv", &emit_csv)
      .def("text", &emit_text);

  m.def(
      "run_study",
      [](const std::string& study, const Topology& topology, int sets,
         std::uint64_t seed, int k, const py::object& rate,
         const py::object& destinations, const std::string& agg_scope) {
        StudySpec spec(topology);
        spec.study = parse_study(study);
        spec.n_sets = sets;
        spec.seed_base = seed;
        spec.k = k;
        if (!rate.is_none()) spec.rate_gbps = rate.cast<int>();
        spec.n_destinations = destinations_from(destinations);
        spec.agg_scope = parse_agg_scope(agg_scope);
        return run_study(spec);
      },
      py::arg("study"), py::arg("topology"), py::arg("sets") = 10,
      py::arg("seed") = 1, py::arg("k") = 5, py::arg("rate") = py::none(),
      py::arg("destinations") = py::none(), py::arg("agg_scope") = "both");
}
