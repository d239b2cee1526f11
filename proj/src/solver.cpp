#include "lightplan/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>

#include "json.hpp"

namespace lightplan {

using nlohmann::ordered_json;

const char* paradigm_name(Paradigm paradigm) {
  switch (paradigm) {
    case Paradigm::bypass: return "bypass";
    case Paradigm::aggregation: return "aggregation";
    case Paradigm::xor_coding: return "xor";
  }
  return "unknown";
}

Paradigm parse_paradigm(const std::string& name) {
  if (name == "bypass") return Paradigm::bypass;
  if (name == "aggregation") return Paradigm::aggregation;
  if (name == "xor") return Paradigm::xor_coding;
  fail(Errc::invalid_argument, name, "unknown paradigm '" + name + "'");
}

const char* agg_scope_name(AggScope scope) {
  switch (scope) {
    case AggScope::working: return "working";
    case AggScope::protection: return "protection";
    case AggScope::both: return "both";
  }
  return "unknown";
}

AggScope parse_agg_scope(const std::string& name) {
  if (name == "working") return AggScope::working;
  if (name == "protection") return AggScope::protection;
  if (name == "both") return AggScope::both;
  fail(Errc::invalid_argument, name, "unknown aggregation scope '" + name + "'");
}

const char* optimality_name(Optimality value) {
  switch (value) {
    case Optimality::proven_optimal_over_candidates:
      return "proven-optimal-over-candidates";
    case Optimality::heuristic: return "heuristic";
  }
  return "unknown";
}

namespace {

std::vector<int> concat_links(const CombinedRoute& routes, bool side_a) {
  std::vector<int> links = side_a ? routes.feed_a.links : routes.feed_b.links;
  links.insert(links.end(), routes.trunk.links.begin(), routes.trunk.links.end());
  return links;
}

std::vector<int> all_links(const CombinedRoute& routes) {
  std::vector<int> links = routes.feed_a.links;
  links.insert(links.end(), routes.feed_b.links.begin(), routes.feed_b.links.end());
  links.insert(links.end(), routes.trunk.links.begin(), routes.trunk.links.end());
  return links;
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int la : a) {
    for (int lb : b) {
      if (la == lb) return false;
    }
  }
  return true;
}

Path subpath(const Topology& topology, const Path& path, std::size_t from,
             std::size_t to) {
  std::vector<int> nodes(path.nodes.begin() + static_cast<std::ptrdiff_t>(from),
                         path.nodes.begin() + static_cast<std::ptrdiff_t>(to + 1));
  return make_path(topology, nodes);
}

// Mix plans for a demand pair are grafted from the candidate paths: pick one
// candidate route per demand, meet at any node common to both, feed along each
// route's prefix and continue to the destination along either route's suffix.
// This keeps the combined space inside the k-shortest candidate universe and
// always contains the degenerate plan (mix node = destination).
std::vector<CombinedRoute> grafted_plans(const Topology& topology,
                                         const std::vector<Path>& paths_a,
                                         const std::vector<Path>& paths_b,
                                         bool require_trunk_hop) {
  std::vector<CombinedRoute> plans;
  std::set<std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>> seen;
  for (const Path& pa : paths_a) {
    for (const Path& pb : paths_b) {
      for (std::size_t ia = 0; ia < pa.nodes.size(); ++ia) {
        const int mix = pa.nodes[ia];
        auto itb = std::find(pb.nodes.begin(), pb.nodes.end(), mix);
        if (itb == pb.nodes.end()) continue;
        const std::size_t ib =
            static_cast<std::size_t>(itb - pb.nodes.begin());
        if (require_trunk_hop && ia + 1 == pa.nodes.size()) continue;
        Path feed_a = subpath(topology, pa, 0, ia);
        Path feed_b = subpath(topology, pb, 0, ib);
        for (const Path* trunk_src : {&pa, &pb}) {
          const std::size_t im = (trunk_src == &pa) ? ia : ib;
          Path trunk = subpath(topology, *trunk_src, im, trunk_src->nodes.size() - 1);
          if (seen.insert({feed_a.nodes, feed_b.nodes, trunk.nodes}).second) {
            plans.push_back({feed_a, feed_b, trunk});
          }
        }
      }
    }
  }
  return plans;
}

// Format pairs (for demand a, demand b) a combining rule admits given the
// demand rates, in deterministic order.
std::vector<std::pair<std::string, std::string>> format_assignments(
    const ComboRule& rule, const TransceiverTable& table, int rate_a, int rate_b) {
  std::vector<std::pair<std::string, std::string>> out;
  auto try_push = [&](const RateFormat& fa, const RateFormat& fb) {
    if (fa.rate_gbps != rate_a || fb.rate_gbps != rate_b) return;
    if (!table.has_entry(fa.rate_gbps, fa.format) ||
        !table.has_entry(fb.rate_gbps, fb.format)) {
      return;
    }
    std::pair<std::string, std::string> assignment{fa.format, fb.format};
    if (std::find(out.begin(), out.end(), assignment) == out.end()) {
      out.push_back(assignment);
    }
  };
  try_push(rule.in_a, rule.in_b);
  try_push(rule.in_b, rule.in_a);
  return out;
}

}  // namespace

CandidateSet enumerate_candidates(const DesignInstance& instance) {
  const Topology& topology = instance.topology;
  const auto& demands = instance.demands.demands;
  const int n = static_cast<int>(demands.size());
  CandidateSet cs;
  cs.solo_by_demand.assign(n, {});

  std::map<std::pair<int, int>, std::vector<Path>> path_cache;
  auto candidate_paths = [&](const std::string& src,
                             const std::string& dst) -> const std::vector<Path>& {
    auto key = std::pair(topology.node_index(src), topology.node_index(dst));
    auto it = path_cache.find(key);
    if (it == path_cache.end()) {
      it = path_cache.emplace(key, k_shortest_paths(topology, key.first, key.second,
                                                    instance.k)).first;
    }
    return it->second;
  };

  auto push = [&cs](ProvisionConfig config, int da, int db) {
    cs.all.push_back({std::move(config), da, db});
    int idx = static_cast<int>(cs.all.size()) - 1;
    if (db < 0) {
      cs.solo_by_demand[da].push_back(idx);
    } else {
      cs.pair_candidates[{da, db}].push_back(idx);
    }
    return idx;
  };

  // Solo bypass candidates, always present under every paradigm.
  for (int di = 0; di < n; ++di) {
    const Demand& d = demands[di];
    if (d.is_protected) {
      for (const PathPair& pair : disjoint_pairs(topology, d.src, d.dst, instance.k)) {
        push(build_bypass(topology, d, pair.working, pair.protection, instance.table),
             di, -1);
      }
    } else {
      for (const Path& path : candidate_paths(d.src, d.dst)) {
        push(build_bypass(topology, d, path, std::nullopt, instance.table), di, -1);
      }
    }
    if (cs.solo_by_demand[di].empty()) {
      fail(Errc::infeasible_demand, d.id,
           "demand '" + d.id + "' has no feasible config (no link-disjoint route pair "
           "among the k=" + std::to_string(instance.k) + " candidate paths)");
    }
  }

  if (instance.paradigm == Paradigm::bypass) return cs;

  for (int ai = 0; ai < n; ++ai) {
    for (int bi = ai + 1; bi < n; ++bi) {
      const Demand& a = demands[ai];
      const Demand& b = demands[bi];
      if (a.dst != b.dst) continue;
      if (a.is_protected != b.is_protected) continue;

      const std::vector<Path>& paths_a = candidate_paths(a.src, a.dst);
      const std::vector<Path>& paths_b = candidate_paths(b.src, b.dst);

      if (instance.paradigm == Paradigm::xor_coding) {
        if (!a.is_protected) continue;
        auto rules = instance.table.xor_rules_for_rates(a.rate_gbps, b.rate_gbps);
        if (rules.empty()) continue;
        auto plans = grafted_plans(topology, paths_a, paths_b, true);
        for (const ComboRule* rule : rules) {
          for (const auto& [fa, fb] :
               format_assignments(*rule, instance.table, a.rate_gbps, b.rate_gbps)) {
            for (const CombinedRoute& plan : plans) {
              const std::vector<int> plan_links = all_links(plan);
              for (const Path& wa : paths_a) {
                if (!disjoint(wa.links, plan_links)) continue;
                for (const Path& wb : paths_b) {
                  if (!disjoint(wb.links, plan_links)) continue;
                  if (!disjoint(wa.links, wb.links)) continue;
                  push(build_encoded(topology, a, b, wa, wb, plan, instance.table,
                                     fa, fb),
                       ai, bi);
                }
              }
            }
          }
        }
        continue;
      }

      // Aggregation. Combined copies per the scope knob; split copies always
      // draw from the same candidate paths.
      auto rules = instance.table.aggregation_rules_for_rates(a.rate_gbps, b.rate_gbps);
      if (rules.empty()) continue;
      auto plans = grafted_plans(topology, paths_a, paths_b, false);
      const bool protect = a.is_protected;
      for (const ComboRule* rule : rules) {
        for (const auto& [fa, fb] :
             format_assignments(*rule, instance.table, a.rate_gbps, b.rate_gbps)) {
          if (!protect) {
            if (instance.agg_scope == AggScope::protection) continue;
            for (const CombinedRoute& plan : plans) {
              push(build_aggregated(topology, a, b, plan, std::nullopt,
                                    instance.table, fa, fb),
                   ai, bi);
            }
            continue;
          }
          if (instance.agg_scope == AggScope::protection ||
              instance.agg_scope == AggScope::both) {
            for (const CombinedRoute& plan : plans) {
              const std::vector<int> chain_a = concat_links(plan, true);
              const std::vector<int> chain_b = concat_links(plan, false);
              for (const Path& wa : paths_a) {
                if (!disjoint(wa.links, chain_a)) continue;
                for (const Path& wb : paths_b) {
                  if (!disjoint(wb.links, chain_b)) continue;
                  push(build_aggregated(topology, a, b, SplitPaths{wa, wb}, plan,
                                        instance.table, fa, fb),
                       ai, bi);
                }
              }
            }
          }
          if (instance.agg_scope == AggScope::working ||
              instance.agg_scope == AggScope::both) {
            for (const CombinedRoute& plan : plans) {
              const std::vector<int> chain_a = concat_links(plan, true);
              const std::vector<int> chain_b = concat_links(plan, false);
              for (const Path& pa : paths_a) {
                if (!disjoint(pa.links, chain_a)) continue;
                for (const Path& pb : paths_b) {
                  if (!disjoint(pb.links, chain_b)) continue;
                  push(build_aggregated(topology, a, b, plan, SplitPaths{pa, pb},
                                        instance.table, fa, fb),
                       ai, bi);
                }
              }
            }
          }
          if (instance.agg_scope == AggScope::both) {
            for (const CombinedRoute& plan_w : plans) {
              const std::vector<int> w_chain_a = concat_links(plan_w, true);
              const std::vector<int> w_chain_b = concat_links(plan_w, false);
              for (const CombinedRoute& plan_p : plans) {
                if (!disjoint(w_chain_a, concat_links(plan_p, true))) continue;
                if (!disjoint(w_chain_b, concat_links(plan_p, false))) continue;
                push(build_aggregated(topology, a, b, plan_w, plan_p,
                                      instance.table, fa, fb),
                     ai, bi);
              }
            }
          }
        }
      }
    }
  }
  return cs;
}

namespace {

struct BestChoice {
  std::int64_t cost = std::numeric_limits<std::int64_t>::max();
  int index = -1;
};

BestChoice best_of(const CandidateSet& cs, const std::vector<int>& indices) {
  BestChoice best;
  for (int idx : indices) {
    const std::int64_t c = cs.all[idx].config.cost;
    if (c < best.cost) {
      best.cost = c;
      best.index = idx;
    }
  }
  return best;
}

Solution assemble(const CandidateSet& cs, std::vector<int> chosen,
                  Optimality optimality) {
  std::sort(chosen.begin(), chosen.end());
  Solution solution;
  solution.chosen = chosen;
  solution.total_cost = 0;
  for (int idx : chosen) {
    solution.configs.push_back(cs.all[idx].config);
    solution.total_cost += cs.all[idx].config.cost;
  }
  solution.optimality = optimality;
  solution.stats.candidates_total = static_cast<std::int64_t>(cs.all.size());
  return solution;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   t0)
      .count();
}

struct PairingProblem {
  int n = 0;
  std::vector<BestChoice> solo;                  // per demand
  std::map<std::pair<int, int>, BestChoice> pair;  // a < b
  std::vector<std::vector<int>> partners;        // ascending
};

PairingProblem make_problem(const CandidateSet& cs) {
  PairingProblem p;
  p.n = static_cast<int>(cs.solo_by_demand.size());
  p.solo.resize(p.n);
  p.partners.assign(p.n, {});
  for (int d = 0; d < p.n; ++d) p.solo[d] = best_of(cs, cs.solo_by_demand[d]);
  for (const auto& [key, indices] : cs.pair_candidates) {
    if (indices.empty()) continue;
    p.pair[key] = best_of(cs, indices);
    p.partners[key.first].push_back(key.second);
    p.partners[key.second].push_back(key.first);
  }
  for (auto& list : p.partners) std::sort(list.begin(), list.end());
  return p;
}

}  // namespace

Solution solve_exact(const DesignInstance& instance, const CandidateSet& cs) {
  const auto t0 = std::chrono::steady_clock::now();
  PairingProblem p = make_problem(cs);

  // Admissible bound, doubled units: each uncovered demand pays at least its
  // cheapest participation (solo cost, or half the cheapest pair cost).
  std::vector<std::int64_t> part2(p.n);
  for (int d = 0; d < p.n; ++d) {
    std::int64_t best = 2 * p.solo[d].cost;
    for (int e : p.partners[d]) {
      auto key = std::pair(std::min(d, e), std::max(d, e));
      best = std::min(best, p.pair.at(key).cost);
    }
    part2[d] = best;
  }

  std::vector<char> covered(p.n, 0);
  std::vector<int> picks;
  std::vector<int> best_picks;
  std::int64_t best2 = std::numeric_limits<std::int64_t>::max();
  std::int64_t nodes = 0;

  auto remaining_bound2 = [&]() {
    std::int64_t sum = 0;
    for (int d = 0; d < p.n; ++d) {
      if (!covered[d]) sum += part2[d];
    }
    return sum;
  };

  auto search = [&](auto&& self, std::int64_t cost2) -> void {
    ++nodes;
    int d = 0;
    while (d < p.n && covered[d]) ++d;
    if (d == p.n) {
      if (cost2 < best2) {
        best2 = cost2;
        best_picks = picks;
      }
      return;
    }
    covered[d] = 1;
    // Solo first, then pairs by ascending partner: matches the global
    // candidate ordering, so the first optimum found uses the lowest indices.
    {
      std::int64_t next2 = cost2 + 2 * p.solo[d].cost;
      if (best2 == std::numeric_limits<std::int64_t>::max() ||
          next2 + remaining_bound2() < best2) {
        picks.push_back(p.solo[d].index);
        self(self, next2);
        picks.pop_back();
      }
    }
    for (int e : p.partners[d]) {
      if (covered[e]) continue;
      auto key = std::pair(std::min(d, e), std::max(d, e));
      std::int64_t next2 = cost2 + 2 * p.pair.at(key).cost;
      covered[e] = 1;
      if (best2 == std::numeric_limits<std::int64_t>::max() ||
          next2 + remaining_bound2() < best2) {
        picks.push_back(p.pair.at(key).index);
        self(self, next2);
        picks.pop_back();
      }
      covered[e] = 0;
    }
    covered[d] = 0;
  };
  search(search, 0);

  Solution solution = assemble(cs, best_picks, Optimality::proven_optimal_over_candidates);
  solution.stats.nodes_explored = nodes;
  solution.stats.runtime_ms = elapsed_ms(t0);
  (void)instance;
  return solution;
}

Solution solve_exact(const DesignInstance& instance) {
  return solve_exact(instance, enumerate_candidates(instance));
}

Solution solve_greedy(const DesignInstance& instance, const CandidateSet& cs) {
  const auto t0 = std::chrono::steady_clock::now();
  PairingProblem p = make_problem(cs);

  std::vector<char> covered(p.n, 0);
  std::vector<int> picks;
  std::int64_t steps = 0;
  while (true) {
    ++steps;
    std::int64_t best_saving = 0;
    std::pair<int, int> best_key{-1, -1};
    int best_index = std::numeric_limits<int>::max();
    for (const auto& [key, choice] : p.pair) {
      if (covered[key.first] || covered[key.second]) continue;
      std::int64_t saving =
          p.solo[key.first].cost + p.solo[key.second].cost - choice.cost;
      if (saving > best_saving ||
          (saving == best_saving && saving > 0 && choice.index < best_index)) {
        best_saving = saving;
        best_key = key;
        best_index = choice.index;
      }
    }
    if (best_saving <= 0) break;
    covered[best_key.first] = 1;
    covered[best_key.second] = 1;
    picks.push_back(best_index);
  }
  for (int d = 0; d < p.n; ++d) {
    if (!covered[d]) picks.push_back(p.solo[d].index);
  }

  Solution solution = assemble(cs, picks, Optimality::heuristic);
  solution.stats.nodes_explored = steps;
  solution.stats.runtime_ms = elapsed_ms(t0);
  solution.stats.bound = "greedy-savings";
  (void)instance;
  return solution;
}

Solution solve_greedy(const DesignInstance& instance) {
  return solve_greedy(instance, enumerate_candidates(instance));
}

Solution brute_force(const DesignInstance& instance, const CandidateSet& cs) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = static_cast<int>(cs.solo_by_demand.size());
  if (n > 6) {
    fail(Errc::instance_too_large, std::to_string(n),
         "brute force is guarded to 6 demands");
  }

  // All pairings (including none), scanning every candidate of every chosen
  // part; kept independent of the branch-and-bound shortcuts.
  std::vector<std::vector<std::pair<int, int>>> matchings;  // (demand, partner|-1)
  std::vector<std::pair<int, int>> current;
  std::vector<char> used(n, 0);
  auto enumerate = [&](auto&& self) -> void {
    int d = 0;
    while (d < n && used[d]) ++d;
    if (d == n) {
      matchings.push_back(current);
      return;
    }
    used[d] = 1;
    current.push_back({d, -1});
    self(self);
    current.pop_back();
    for (int e = d + 1; e < n; ++e) {
      if (used[e]) continue;
      if (!cs.pair_candidates.count({d, e})) continue;
      used[e] = 1;
      current.push_back({d, e});
      self(self);
      current.pop_back();
      used[e] = 0;
    }
    used[d] = 0;
  };
  enumerate(enumerate);

  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  std::vector<int> best_picks;
  for (const auto& matching : matchings) {
    std::int64_t cost = 0;
    std::vector<int> picks;
    for (const auto& [d, e] : matching) {
      const std::vector<int>& pool =
          (e < 0) ? cs.solo_by_demand[d] : cs.pair_candidates.at({d, e});
      std::int64_t part_cost = std::numeric_limits<std::int64_t>::max();
      int part_pick = -1;
      for (int idx : pool) {
        if (cs.all[idx].config.cost < part_cost) {
          part_cost = cs.all[idx].config.cost;
          part_pick = idx;
        }
      }
      cost += part_cost;
      picks.push_back(part_pick);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_picks = picks;
    }
  }

  Solution solution = assemble(cs, best_picks, Optimality::proven_optimal_over_candidates);
  solution.stats.nodes_explored = static_cast<std::int64_t>(matchings.size());
  solution.stats.runtime_ms = elapsed_ms(t0);
  solution.stats.bound = "exhaustive";
  (void)instance;
  return solution;
}

Solution brute_force(const DesignInstance& instance) {
  return brute_force(instance, enumerate_candidates(instance));
}

std::string stats_to_json(const DesignInstance& instance, const Solution& solution,
                          int indent) {
  ordered_json j;
  j["paradigm"] = paradigm_name(instance.paradigm);
  j["k"] = instance.k;
  j["candidates_total"] = solution.stats.candidates_total;
  j["nodes_explored"] = solution.stats.nodes_explored;
  j["runtime_ms"] = solution.stats.runtime_ms;
  j["optimality"] = optimality_name(solution.optimality);
  j["bound"] = solution.stats.bound;
  return j.dump(indent);
}

}  // namespace lightplan
