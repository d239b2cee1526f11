#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lightplan/provision.hpp"

namespace lightplan {

enum class Paradigm { bypass, aggregation, xor_coding };
enum class AggScope { working, protection, both };

const char* paradigm_name(Paradigm paradigm);
Paradigm parse_paradigm(const std::string& name);
const char* agg_scope_name(AggScope scope);
AggScope parse_agg_scope(const std::string& name);

// One solvable design problem: serve every demand at minimum wavelength-link
// cost, choosing configs from the candidate space spanned by the k shortest
// paths of each demand.
struct DesignInstance {
  Topology topology;
  DemandSet demands;
  TransceiverTable table;
  Paradigm paradigm = Paradigm::bypass;
  int k = 5;
  AggScope agg_scope = AggScope::both;
};

// A candidate config plus the demand indices it covers (demand_b < 0 for solo
// configs).
struct Candidate {
  ProvisionConfig config;
  int demand_a = -1;
  int demand_b = -1;
};

struct CandidateSet {
  std::vector<Candidate> all;  // deterministic enumeration order
  std::vector<std::vector<int>> solo_by_demand;
  std::map<std::pair<int, int>, std::vector<int>> pair_candidates;  // a < b
};

// Per-demand bypass candidates over disjoint pairs (or single paths when
// unprotected), plus — under the processing paradigms — combined configs for
// every same-destination pair, every compatible combining rule, and every mix
// plan grafted from the candidate paths. Bypass candidates are always
// included, so processing paradigms search a superset of the bypass space.
CandidateSet enumerate_candidates(const DesignInstance& instance);

enum class Optimality { proven_optimal_over_candidates, heuristic };
const char* optimality_name(Optimality value);

struct SolveStats {
  std::int64_t candidates_total = 0;
  std::int64_t nodes_explored = 0;
  double runtime_ms = 0.0;
  std::string bound = "additive-cheapest-participation";
};

struct Solution {
  std::vector<int> chosen;               // candidate indices, ascending
  std::vector<ProvisionConfig> configs;  // the chosen configs
  std::int64_t total_cost = 0;
  Optimality optimality = Optimality::heuristic;
  SolveStats stats;
};

// Exact minimum-cost cover of the demands by candidate configs (each demand
// in exactly one config), via branch-and-bound over the pairing choices with
// an admissible additive bound. Ties resolve to the lowest candidate indices;
// results are deterministic for a fixed instance.
Solution solve_exact(const DesignInstance& instance);
Solution solve_exact(const DesignInstance& instance, const CandidateSet& candidates);

// Baseline heuristic: repeatedly commit the pair config with the largest
// saving against solo provisioning, then serve the rest solo.
Solution solve_greedy(const DesignInstance& instance);
Solution solve_greedy(const DesignInstance& instance, const CandidateSet& candidates);

// Exhaustive oracle over all pairings x all candidate configs. Guarded to
// six demands.
Solution brute_force(const DesignInstance& instance);
Solution brute_force(const DesignInstance& instance, const CandidateSet& candidates);

std::string stats_to_json(const DesignInstance& instance, const Solution& solution,
                          int indent = 2);

}  // namespace lightplan
