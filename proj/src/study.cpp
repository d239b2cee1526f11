#include "lightplan/study.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace lightplan {

const char* study_name(StudyKind study) {
  switch (study) {
    case StudyKind::aggregation: return "aggregation";
    case StudyKind::xor_coding: return "xor";
  }
  return "unknown";
}

StudyKind parse_study(const std::string& name) {
  if (name == "aggregation") return StudyKind::aggregation;
  if (name == "xor") return StudyKind::xor_coding;
  fail(Errc::invalid_argument, name, "unknown study '" + name + "'");
}

int StudySpec::effective_rate() const {
  if (rate_gbps) return *rate_gbps;
  return study == StudyKind::aggregation ? 100 : 200;
}

std::optional<int> StudySpec::effective_destinations() const {
  if (n_destinations) return n_destinations;
  if (study == StudyKind::aggregation) return 7;
  return std::nullopt;  // all remaining nodes
}

namespace {

std::string format_gain(double gain) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", gain);
  return buf;
}

}  // namespace

StudyResult run_study(const StudySpec& spec) {
  if (spec.n_sets < 1) {
    fail(Errc::invalid_argument, std::to_string(spec.n_sets), "n_sets must be >= 1");
  }
  StudyResult result;
  result.study = spec.study;
  result.topology_name = spec.topology.name();
  result.n_sets = spec.n_sets;
  result.k = spec.k;
  result.rate_gbps = spec.effective_rate();
  result.agg_scope = spec.agg_scope;

  const Paradigm processing = spec.study == StudyKind::aggregation
                                  ? Paradigm::aggregation
                                  : Paradigm::xor_coding;
  for (int i = 1; i <= spec.n_sets; ++i) {
    StudyRow row;
    row.set_index = i;
    row.seed = spec.seed_base + static_cast<std::uint64_t>(i - 1);
    try {
      DemandSet traffic =
          generate_traffic(spec.topology, spec.effective_destinations(),
                           spec.effective_rate(), true, row.seed);
      row.demands_hash = demandset_hash(traffic);

      DesignInstance bypass{spec.topology, traffic, spec.table,
                            Paradigm::bypass, spec.k, spec.agg_scope};
      DesignInstance proc{spec.topology, traffic, spec.table,
                          processing, spec.k, spec.agg_scope};
      if (demandset_hash(bypass.demands) != demandset_hash(proc.demands)) {
        fail(Errc::invalid_argument, "traffic",
             "paradigms received different demand sets");
      }
      Solution b = solve_exact(bypass);
      Solution p = solve_exact(proc);
      row.bypass_cost = b.total_cost;
      row.processing_cost = p.total_cost;
      row.gain_percent =
          b.total_cost == 0
              ? 0.0
              : 100.0 * static_cast<double>(b.total_cost - p.total_cost) /
                    static_cast<double>(b.total_cost);
    } catch (const Error& e) {
      row.feasible = false;
      row.note = e.what();
    }
    result.rows.push_back(std::move(row));
  }

  StudySummary summary;
  double gain_sum = 0.0;
  for (const StudyRow& row : result.rows) {
    if (!row.feasible) continue;
    ++summary.feasible_sets;
    gain_sum += row.gain_percent;
    summary.max_gain = std::max(summary.max_gain, row.gain_percent);
    if (row.processing_cost < row.bypass_cost) ++summary.strictly_better;
  }
  summary.mean_gain = summary.feasible_sets ? gain_sum / summary.feasible_sets : 0.0;
  result.summary = summary;
  return result;
}

std::string emit_csv(const StudyResult& result) {
  std::ostringstream out;
  out << "set,seed,bypass_cost,processing_cost,gain_percent\n";
  for (const StudyRow& row : result.rows) {
    if (!row.feasible) continue;
    out << row.set_index << ',' << row.seed << ',' << row.bypass_cost << ','
        << row.processing_cost << ',' << format_gain(row.gain_percent) << '\n';
  }
  return out.str();
}

std::string emit_text(const StudyResult& result) {
  std::ostringstream out;
  out << "study: " << study_name(result.study)
      << "   topology: " << result.topology_name
      << "   sets: " << result.n_sets << "   k: " << result.k
      << "   rate: " << result.rate_gbps << "G"
      << "   scope: " << agg_scope_name(result.agg_scope) << "\n\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%4s  %6s  %12s  %12s  %10s  %-16s\n", "set",
                "seed", "bypass", "processing", "gain%", "demands");
  out << line;
  for (const StudyRow& row : result.rows) {
    if (!row.feasible) {
      std::snprintf(line, sizeof(line), "%4d  %6llu  %-40s\n", row.set_index,
                    static_cast<unsigned long long>(row.seed),
                    ("infeasible: " + row.note).c_str());
      out << line;
      continue;
    }
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(row.demands_hash));
    std::snprintf(line, sizeof(line), "%4d  %6llu  %12lld  %12lld  %10s  %-16s\n",
                  row.set_index, static_cast<unsigned long long>(row.seed),
                  static_cast<long long>(row.bypass_cost),
                  static_cast<long long>(row.processing_cost),
                  format_gain(row.gain_percent).c_str(), hash);
    out << line;
  }
  out << "\n";
  out << "strictly better in " << result.summary.strictly_better << "/"
      << result.summary.feasible_sets << " sets\n";
  const char* reference =
      result.study == StudyKind::aggregation ? "30%" : "17%";
  out << "max gain " << format_gain(result.summary.max_gain)
      << "%  (study reference: up to " << reference << ")\n";
  out << "mean gain " << format_gain(result.summary.mean_gain) << "%\n";
  if (result.summary.feasible_sets < result.n_sets) {
    out << "warning: " << (result.n_sets - result.summary.feasible_sets)
        << " infeasible set(s) excluded from the summary\n";
  }
  return out.str();
}

}  // namespace lightplan
