#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lightplan/solver.hpp"

namespace lightplan {

enum class StudyKind { aggregation, xor_coding };
const char* study_name(StudyKind study);
StudyKind parse_study(const std::string& name);

// One benchmark campaign: n_sets seeded traffic draws, each solved exactly
// under optical-bypass and under the selected processing paradigm.
struct StudySpec {
  explicit StudySpec(Topology t) : topology(std::move(t)) {}

  StudyKind study = StudyKind::aggregation;
  Topology topology;
  int n_sets = 10;
  std::uint64_t seed_base = 1;
  int k = 5;
  std::optional<int> rate_gbps;        // default: 100 (aggregation), 200 (xor)
  std::optional<int> n_destinations;   // default: 7 (aggregation), all (xor)
  AggScope agg_scope = AggScope::both;
  TransceiverTable table = TransceiverTable::default_table();

  int effective_rate() const;
  std::optional<int> effective_destinations() const;
};

struct StudyRow {
  int set_index = 0;  // 1-based
  std::uint64_t seed = 0;
  std::int64_t bypass_cost = 0;
  std::int64_t processing_cost = 0;
  double gain_percent = 0.0;
  std::uint64_t demands_hash = 0;
  bool feasible = true;
  std::string note;
};

struct StudySummary {
  int feasible_sets = 0;
  int strictly_better = 0;
  double max_gain = 0.0;
  double mean_gain = 0.0;
};

struct StudyResult {
  StudyKind study = StudyKind::aggregation;
  std::string topology_name;
  int n_sets = 0;
  int k = 0;
  int rate_gbps = 0;
  AggScope agg_scope = AggScope::both;
  std::vector<StudyRow> rows;
  StudySummary summary;
};

// Runs the campaign. Deterministic end to end: set i uses seed_base + i - 1
// and both paradigms consume the identical demand set (hashes logged per
// row). Infeasible sets are reported and excluded from the summary.
StudyResult run_study(const StudySpec& spec);

// CSV with exactly the columns set,seed,bypass_cost,processing_cost,gain_percent.
std::string emit_csv(const StudyResult& result);
// Aligned human-readable table plus summary lines.
std::string emit_text(const StudyResult& result);

}  // namespace lightplan
