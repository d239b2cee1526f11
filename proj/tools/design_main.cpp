// design: provisions survivable optical connections under optical-bypass and
// optical-processing (aggregation / XOR-coded protection) and benchmarks
// their wavelength-link cost.
//
//   design run    --study {aggregation|xor} ...   benchmark campaign -> CSV/text
//   design solve  --topology f --traffic f ...    one instance -> solution JSON
//   design paths  --topology f --src A --dst B    candidate route inspection
//   design traffic --topology f ...               seeded traffic set -> JSON

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lightplan/datasets.hpp"
#include "lightplan/study.hpp"

namespace {

using namespace lightplan;

Topology topology_from_arg(const std::string& arg, const std::string& fallback) {
  if (arg.empty()) return builtin_topology(fallback);
  for (const std::string& name : builtin_topology_names()) {
    if (arg == name) return builtin_topology(name);
  }
  return load_topology_file(arg);
}

std::optional<int> parse_destinations(const std::string& arg) {
  if (arg.empty() || arg == "all") return std::nullopt;
  try {
    return std::stoi(arg);
  } catch (const std::exception&) {
    fail(Errc::invalid_argument, arg,
         "--destinations expects a positive integer or 'all'");
  }
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(Errc::invalid_argument, out_path, "cannot write '" + out_path + "'");
  out << text;
}

int run_command(const std::string& study_arg, const std::string& topology_arg,
                int sets, std::uint64_t seed, int k, int rate,
                const std::string& destinations_arg, const std::string& scope_arg,
                const std::string& table_arg, const std::string& out_path,
                const std::string& format) {
  const StudyKind kind = parse_study(study_arg);
  StudySpec spec(topology_from_arg(
      topology_arg, kind == StudyKind::aggregation ? "cost239" : "nsfnet"));
  spec.study = kind;
  spec.n_sets = sets;
  spec.seed_base = seed;
  spec.k = k;
  if (rate > 0) spec.rate_gbps = rate;
  spec.n_destinations = parse_destinations(destinations_arg);
  spec.agg_scope = parse_agg_scope(scope_arg);
  if (!table_arg.empty()) spec.table = load_transceiver_table_file(table_arg);

  StudyResult result = run_study(spec);
  write_output(out_path, format == "text" ? emit_text(result) : emit_csv(result));
  for (const StudyRow& row : result.rows) {
    if (!row.feasible) {
      std::cerr << "warning: set " << row.set_index << " infeasible: " << row.note
                << "\n";
    }
  }
  return 0;
}

int solve_command(const std::string& topology_arg, const std::string& traffic_arg,
                  const std::string& paradigm_arg, const std::string& table_arg,
                  int k, const std::string& scope_arg, const std::string& method,
                  const std::string& out_path, const std::string& stats_path) {
  DesignInstance instance{
      topology_from_arg(topology_arg, ""),
      demandset_from_file(traffic_arg),
      table_arg.empty() ? TransceiverTable::default_table()
                        : load_transceiver_table_file(table_arg),
      parse_paradigm(paradigm_arg),
      k,
      parse_agg_scope(scope_arg)};
  Solution solution;
  if (method == "greedy") {
    solution = solve_greedy(instance);
  } else if (method == "exact") {
    solution = solve_exact(instance);
  } else {
    fail(Errc::invalid_argument, method, "--method expects 'exact' or 'greedy'");
  }
  write_output(out_path, solution_to_json(solution.configs, instance.demands.demands,
                                          instance.topology) +
                             "\n");
  const std::string stats = stats_to_json(instance, solution) + "\n";
  if (stats_path.empty()) {
    std::cerr << stats;
  } else {
    std::ofstream out(stats_path, std::ios::binary);
    out << stats;
  }
  return 0;
}

int paths_command(const std::string& topology_arg, const std::string& src,
                  const std::string& dst, int k) {
  Topology topology = topology_from_arg(topology_arg, "");
  int index = 0;
  for (const Path& path : k_shortest_paths(topology, src, dst, k)) {
    std::cout << ++index << ": ";
    const auto names = path_node_names(topology, path);
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) std::cout << " - ";
      std::cout << names[i];
    }
    std::cout << "  (" << path.hop_count() << " hops)\n";
  }
  const auto pairs = disjoint_pairs(topology, src, dst, k);
  std::cout << pairs.size() << " link-disjoint ordered pair(s) among them\n";
  return 0;
}

int traffic_command(const std::string& topology_arg,
                    const std::string& destinations_arg, int rate, bool unprotected,
                    std::uint64_t seed, const std::string& out_path) {
  Topology topology = topology_from_arg(topology_arg, "");
  DemandSet set = generate_traffic(topology, parse_destinations(destinations_arg),
                                   rate, !unprotected, seed);
  write_output(out_path, demandset_to_json(set) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"survivable optical network design studies"};
  app.require_subcommand(1);

  std::string study = "aggregation", topology, destinations, table, out;
  std::string format = "csv", scope = "both";
  int sets = 10, k = 5, rate = 0;
  std::uint64_t seed = 1;

  auto* run = app.add_subcommand("run", "run a benchmark study");
  run->add_option("--study", study, "aggregation or xor")
      ->check(CLI::IsMember({"aggregation", "xor"}));
  run->add_option("--topology", topology,
                  "topology file, or builtin name (cost239, nsfnet); defaults per study");
  run->add_option("--sets", sets, "number of traffic sets")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "seed base; set i uses seed+i-1");
  run->add_option("--k", k, "candidate paths per node pair")->check(CLI::PositiveNumber);
  run->add_option("--rate", rate, "demand rate in Gbps (default per study)")
      ->check(CLI::PositiveNumber);
  run->add_option("--destinations", destinations, "destination count or 'all'");
  run->add_option("--agg-scope", scope, "which copies aggregation may combine")
      ->check(CLI::IsMember({"working", "protection", "both"}));
  run->add_option("--table", table, "transceiver table JSON file");
  run->add_option("--out", out, "output file (default stdout)");
  run->add_option("--format", format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}));

  std::string traffic, paradigm = "bypass", method = "exact", stats, src, dst;

  auto* solve = app.add_subcommand("solve", "solve one design instance");
  solve->add_option("--topology", topology, "topology file or builtin name")->required();
  solve->add_option("--traffic", traffic, "traffic set JSON file")->required();
  solve->add_option("--paradigm", paradigm, "bypass, aggregation or xor")
      ->check(CLI::IsMember({"bypass", "aggregation", "xor"}));
  solve->add_option("--table", table, "transceiver table JSON file");
  solve->add_option("--k", k, "candidate paths per node pair")->check(CLI::PositiveNumber);
  solve->add_option("--agg-scope", scope, "which copies aggregation may combine")
      ->check(CLI::IsMember({"working", "protection", "both"}));
  solve->add_option("--method", method, "exact or greedy")
      ->check(CLI::IsMember({"exact", "greedy"}));
  solve->add_option("--out", out, "solution JSON output (default stdout)");
  solve->add_option("--stats", stats, "solver stats JSON output (default stderr)");

  auto* paths = app.add_subcommand("paths", "inspect candidate routes");
  paths->add_option("--topology", topology, "topology file or builtin name")->required();
  paths->add_option("--src", src, "source node")->required();
  paths->add_option("--dst", dst, "destination node")->required();
  paths->add_option("--k", k, "number of paths")->check(CLI::PositiveNumber);

  bool unprotected = false;
  auto* gen = app.add_subcommand("traffic", "generate a seeded two-to-many traffic set");
  gen->add_option("--topology", topology, "topology file or builtin name")->required();
  gen->add_option("--destinations", destinations, "destination count or 'all'");
  gen->add_option("--rate", rate, "demand rate in Gbps")->required()->check(CLI::PositiveNumber);
  gen->add_flag("--unprotected", unprotected, "omit dedicated protection");
  gen->add_option("--seed", seed, "seed");
  gen->add_option("--out", out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(study, topology, sets, seed, k, rate, destinations, scope,
                         table, out, format);
    }
    if (solve->parsed()) {
      return solve_command(topology, traffic, paradigm, table, k, scope, method, out,
                           stats);
    }
    if (paths->parsed()) {
      return paths_command(topology, src, dst, k);
    }
    if (gen->parsed()) {
      return traffic_command(topology, destinations, rate, unprotected, seed, out);
    }
  } catch (const lightplan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
