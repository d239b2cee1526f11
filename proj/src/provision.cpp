#include "lightplan/provision.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace lightplan {

using nlohmann::ordered_json;

const char* role_name(LightpathRole role) {
  switch (role) {
    case LightpathRole::working: return "working";
    case LightpathRole::protection: return "protection";
    case LightpathRole::aggregated: return "aggregated";
    case LightpathRole::encoded: return "encoded";
    case LightpathRole::feed: return "feed";
  }
  return "unknown";
}

const char* kind_name(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::bypass: return "bypass";
    case ConfigKind::aggregated: return "aggregated";
    case ConfigKind::encoded: return "encoded";
  }
  return "unknown";
}

const char* fate_name(DemandFate fate) {
  switch (fate) {
    case DemandFate::unaffected: return "unaffected";
    case DemandFate::recovered_via_protection: return "recovered-via-protection";
    case DemandFate::recovered_via_decode: return "recovered-via-decode";
    case DemandFate::lost: return "LOST";
  }
  return "unknown";
}

namespace {

void require_route(const Topology& topology, const Path& path, int src, int dst,
                   const std::string& what) {
  if (path.nodes.empty() || path.nodes.front() != src || path.nodes.back() != dst) {
    fail(Errc::bad_route, what,
         what + " must run " + topology.node_name(src) + " -> " +
             topology.node_name(dst));
  }
}

RateFormat pick_format(const TransceiverTable& table, const Demand& demand,
                       const std::optional<std::string>& override_format) {
  if (override_format) {
    if (!table.has_entry(demand.rate_gbps, *override_format)) {
      fail(Errc::unknown_entry,
           "(" + std::to_string(demand.rate_gbps) + "," + *override_format + ")",
           "no slice entry for rate " + std::to_string(demand.rate_gbps) +
               " at format " + *override_format);
    }
    return {demand.rate_gbps, *override_format};
  }
  auto rf = table.cheapest_format(demand.rate_gbps);
  if (!rf) {
    fail(Errc::unknown_entry, std::to_string(demand.rate_gbps),
         "no slice entry for rate " + std::to_string(demand.rate_gbps));
  }
  return *rf;
}

// Returns the first link shared by the two link sets, or -1.
int first_shared_link(const std::vector<int>& a, const std::vector<int>& b) {
  for (int la : a) {
    for (int lb : b) {
      if (la == lb) return la;
    }
  }
  return -1;
}

void require_disjoint(const Topology& topology, const std::vector<int>& a,
                      const std::vector<int>& b, const std::string& what) {
  int shared = first_shared_link(a, b);
  if (shared >= 0) {
    fail(Errc::disjointness_violation, topology.link_name(shared),
         what + " share link " + topology.link_name(shared));
  }
}

std::vector<int> chain_links(const ProvisionConfig& config, const ServingChain& chain) {
  std::vector<int> links;
  for (int li : chain.lightpaths) {
    const auto& route = config.lightpaths[li].route.links;
    links.insert(links.end(), route.begin(), route.end());
  }
  return links;
}

int add_lightpath(ProvisionConfig& config, const Path& route, const RateFormat& rf,
                  int slices, LightpathRole role, std::vector<std::string> carries) {
  Lightpath lp;
  lp.id = "lp" + std::to_string(config.lightpaths.size() + 1);
  lp.route = route;
  lp.rate_gbps = rf.rate_gbps;
  lp.format = rf.format;
  lp.slices = slices;
  lp.role = role;
  lp.carries = std::move(carries);
  config.lightpaths.push_back(std::move(lp));
  return static_cast<int>(config.lightpaths.size()) - 1;
}

void finalize_cost(ProvisionConfig& config) {
  config.cost = 0;
  for (const Lightpath& lp : config.lightpaths) {
    config.cost += static_cast<std::int64_t>(lp.slices) * lp.route.hop_count();
  }
}

struct CombinedCheck {
  int mix = -1;
};

CombinedCheck validate_combined(const Topology& topology, const Demand& a,
                                const Demand& b, const CombinedRoute& routes,
                                const std::string& what) {
  const int dst = topology.node_index(a.dst);
  if (routes.trunk.nodes.empty()) {
    fail(Errc::bad_route, what, what + " trunk route is missing");
  }
  const int mix = routes.trunk.nodes.front();
  if (routes.trunk.nodes.back() != dst) {
    fail(Errc::bad_route, what, what + " trunk must end at " + a.dst);
  }
  auto check_feed = [&](const Path& feed, const Demand& d) {
    const int src = topology.node_index(d.src);
    if (feed.nodes.empty()) {
      if (mix != src) {
        fail(Errc::bad_route, what,
             what + " feed for " + d.id + " is empty but mix node is not its source");
      }
      return;
    }
    require_route(topology, feed, src, mix, what + " feed for " + d.id);
  };
  check_feed(routes.feed_a, a);
  check_feed(routes.feed_b, b);
  return {mix};
}

}  // namespace

ProvisionConfig build_bypass(const Topology& topology, const Demand& demand,
                             const Path& working,
                             const std::optional<Path>& protection,
                             const TransceiverTable& table,
                             const std::optional<std::string>& format_override) {
  const int src = topology.node_index(demand.src);
  const int dst = topology.node_index(demand.dst);
  require_route(topology, working, src, dst, "working route of " + demand.id);
  if (demand.is_protected && !protection) {
    fail(Errc::bad_route, demand.id,
         "protected demand " + demand.id + " needs a protection route");
  }
  RateFormat rf = pick_format(table, demand, format_override);
  const int slices = table.slices_for(rf.rate_gbps, rf.format);

  ProvisionConfig config;
  config.kind = ConfigKind::bypass;
  config.demands = {demand};
  int w = add_lightpath(config, working, rf, slices, LightpathRole::working, {demand.id});
  config.chains.push_back({demand.id, true, {w}});
  if (protection) {
    require_route(topology, *protection, src, dst, "protection route of " + demand.id);
    require_disjoint(topology, working.links, protection->links,
                     "working and protection of " + demand.id);
    int p = add_lightpath(config, *protection, rf, slices, LightpathRole::protection,
                          {demand.id});
    config.chains.push_back({demand.id, false, {p}});
  }
  finalize_cost(config);
  return config;
}

ProvisionConfig build_aggregated(const Topology& topology, const Demand& a,
                                 const Demand& b, const PairCopyPlan& working,
                                 const std::optional<PairCopyPlan>& protection,
                                 const TransceiverTable& table,
                                 const std::optional<std::string>& format_a,
                                 const std::optional<std::string>& format_b) {
  if (a.dst != b.dst) {
    fail(Errc::invalid_argument, a.id + "+" + b.id,
         "aggregated demands must share a destination");
  }
  if (a.is_protected != b.is_protected) {
    fail(Errc::invalid_argument, a.id + "+" + b.id,
         "aggregated demands must agree on protection");
  }
  if (a.is_protected != protection.has_value()) {
    fail(Errc::bad_route, a.id + "+" + b.id,
         a.is_protected ? "protected pair needs a protection copy"
                        : "unprotected pair cannot carry a protection copy");
  }
  const bool working_combined = std::holds_alternative<CombinedRoute>(working);
  const bool protection_combined =
      protection && std::holds_alternative<CombinedRoute>(*protection);
  if (!working_combined && !protection_combined) {
    fail(Errc::invalid_argument, a.id + "+" + b.id,
         "an aggregated config must combine at least one copy");
  }

  RateFormat in_a = pick_format(table, a, format_a);
  RateFormat in_b = pick_format(table, b, format_b);
  const ComboRule* rule = table.find_aggregation_rule(in_a, in_b);
  if (!rule) {
    fail(Errc::missing_rule,
         "(" + std::to_string(in_a.rate_gbps) + "," + in_a.format + ")+(" +
             std::to_string(in_b.rate_gbps) + "," + in_b.format + ")",
         "no aggregation rule for the input channel types");
  }
  const int slices_a = table.slices_for(in_a.rate_gbps, in_a.format);
  const int slices_b = table.slices_for(in_b.rate_gbps, in_b.format);
  const int slices_out = table.slices_for(rule->out.rate_gbps, rule->out.format);
  RateFormat cheap_a = pick_format(table, a, std::nullopt);
  RateFormat cheap_b = pick_format(table, b, std::nullopt);

  ProvisionConfig config;
  config.kind = ConfigKind::aggregated;
  config.demands = {a, b};

  auto emit_copy = [&](const PairCopyPlan& plan, bool working_copy) {
    const LightpathRole split_role =
        working_copy ? LightpathRole::working : LightpathRole::protection;
    if (const auto* split = std::get_if<SplitPaths>(&plan)) {
      require_route(topology, split->a, topology.node_index(a.src),
                    topology.node_index(a.dst),
                    std::string(working_copy ? "working" : "protection") +
                        " route of " + a.id);
      require_route(topology, split->b, topology.node_index(b.src),
                    topology.node_index(b.dst),
                    std::string(working_copy ? "working" : "protection") +
                        " route of " + b.id);
      int la = add_lightpath(config, split->a, cheap_a,
                             table.slices_for(cheap_a.rate_gbps, cheap_a.format),
                             split_role, {a.id});
      int lb = add_lightpath(config, split->b, cheap_b,
                             table.slices_for(cheap_b.rate_gbps, cheap_b.format),
                             split_role, {b.id});
      config.chains.push_back({a.id, working_copy, {la}});
      config.chains.push_back({b.id, working_copy, {lb}});
    } else {
      const auto& combined = std::get<CombinedRoute>(plan);
      CombinedCheck check = validate_combined(
          topology, a, b, combined,
          std::string(working_copy ? "working" : "protection") + " copy");
      if (!config.mix_node) config.mix_node = topology.node_name(check.mix);
      std::vector<int> chain_a, chain_b;
      if (!combined.feed_a.empty()) {
        chain_a.push_back(add_lightpath(config, combined.feed_a, in_a, slices_a,
                                        LightpathRole::feed, {a.id}));
      }
      if (!combined.feed_b.empty()) {
        chain_b.push_back(add_lightpath(config, combined.feed_b, in_b, slices_b,
                                        LightpathRole::feed, {b.id}));
      }
      if (!combined.trunk.empty()) {
        std::vector<std::string> both{a.id, b.id};
        std::sort(both.begin(), both.end());
        int t = add_lightpath(config, combined.trunk, rule->out, slices_out,
                              LightpathRole::aggregated, both);
        chain_a.push_back(t);
        chain_b.push_back(t);
      }
      config.chains.push_back({a.id, working_copy, chain_a});
      config.chains.push_back({b.id, working_copy, chain_b});
    }
  };

  emit_copy(working, true);
  if (protection) emit_copy(*protection, false);

  // Dedicated protection within the pair: each demand's two chains must not
  // share a link, otherwise one failure could sever both copies at once.
  if (protection) {
    for (const Demand& d : config.demands) {
      std::vector<int> w_links, p_links;
      for (const ServingChain& chain : config.chains) {
        if (chain.demand_id != d.id) continue;
        auto links = chain_links(config, chain);
        (chain.working_copy ? w_links : p_links) = links;
      }
      require_disjoint(topology, w_links, p_links,
                       "working and protection chains of " + d.id);
    }
  }
  finalize_cost(config);
  return config;
}

ProvisionConfig build_encoded(const Topology& topology, const Demand& a,
                              const Demand& b, const Path& working_a,
                              const Path& working_b,
                              const CombinedRoute& protection,
                              const TransceiverTable& table,
                              const std::optional<std::string>& format_a,
                              const std::optional<std::string>& format_b) {
  if (a.dst != b.dst) {
    fail(Errc::invalid_argument, a.id + "+" + b.id,
         "encoded demands must share a destination");
  }
  if (!a.is_protected || !b.is_protected) {
    fail(Errc::invalid_argument, a.id + "+" + b.id,
         "encoded provisioning protects demands; both must request protection");
  }

  RateFormat in_a = pick_format(table, a, format_a);
  RateFormat in_b = pick_format(table, b, format_b);
  const ComboRule* rule = table.find_xor_rule(in_a, in_b);
  if (!rule) {
    const std::string pair_desc =
        "(" + std::to_string(in_a.rate_gbps) + "," + in_a.format + ")+(" +
        std::to_string(in_b.rate_gbps) + "," + in_b.format + ")";
    if (in_a.rate_gbps != in_b.rate_gbps) {
      fail(Errc::unequal_rates, pair_desc,
           "no xor rule covers the unequal input rates " + pair_desc);
    }
    fail(Errc::missing_rule, pair_desc, "no xor rule for the input channel types");
  }

  CombinedCheck check = validate_combined(topology, a, b, protection, "protection copy");
  if (protection.trunk.empty() || check.mix == topology.node_index(a.dst)) {
    fail(Errc::bad_route, a.dst, "encoded trunk needs at least one link");
  }
  require_route(topology, working_a, topology.node_index(a.src),
                topology.node_index(a.dst), "working route of " + a.id);
  require_route(topology, working_b, topology.node_index(b.src),
                topology.node_index(b.dst), "working route of " + b.id);

  std::vector<int> protection_links;
  for (const Path* p : {&protection.feed_a, &protection.feed_b, &protection.trunk}) {
    protection_links.insert(protection_links.end(), p->links.begin(), p->links.end());
  }
  require_disjoint(topology, working_a.links, working_b.links,
                   "working routes of " + a.id + " and " + b.id);
  require_disjoint(topology, working_a.links, protection_links,
                   "working route of " + a.id + " and the encoded protection");
  require_disjoint(topology, working_b.links, protection_links,
                   "working route of " + b.id + " and the encoded protection");

  const int slices_a = table.slices_for(in_a.rate_gbps, in_a.format);
  const int slices_b = table.slices_for(in_b.rate_gbps, in_b.format);
  const int slices_out = table.slices_for(rule->out.rate_gbps, rule->out.format);
  RateFormat cheap_a = pick_format(table, a, std::nullopt);
  RateFormat cheap_b = pick_format(table, b, std::nullopt);

  ProvisionConfig config;
  config.kind = ConfigKind::encoded;
  config.demands = {a, b};
  config.mix_node = topology.node_name(check.mix);

  int wa = add_lightpath(config, working_a, cheap_a,
                         table.slices_for(cheap_a.rate_gbps, cheap_a.format),
                         LightpathRole::working, {a.id});
  int wb = add_lightpath(config, working_b, cheap_b,
                         table.slices_for(cheap_b.rate_gbps, cheap_b.format),
                         LightpathRole::working, {b.id});
  config.chains.push_back({a.id, true, {wa}});
  config.chains.push_back({b.id, true, {wb}});

  std::vector<int> chain_a, chain_b;
  if (!protection.feed_a.empty()) {
    chain_a.push_back(add_lightpath(config, protection.feed_a, in_a, slices_a,
                                    LightpathRole::feed, {a.id}));
  }
  if (!protection.feed_b.empty()) {
    chain_b.push_back(add_lightpath(config, protection.feed_b, in_b, slices_b,
                                    LightpathRole::feed, {b.id}));
  }
  std::vector<std::string> both{a.id, b.id};
  std::sort(both.begin(), both.end());
  int t = add_lightpath(config, protection.trunk, rule->out, slices_out,
                        LightpathRole::encoded, both);
  chain_a.push_back(t);
  chain_b.push_back(t);
  config.chains.push_back({a.id, false, chain_a});
  config.chains.push_back({b.id, false, chain_b});

  finalize_cost(config);
  return config;
}

std::int64_t total_cost(const std::vector<ProvisionConfig>& configs,
                        const std::vector<Demand>& demands) {
  std::map<std::string, int> covered;
  for (const Demand& d : demands) covered[d.id] = 0;
  std::int64_t total = 0;
  for (const ProvisionConfig& config : configs) {
    total += config.cost;
    for (const Demand& d : config.demands) {
      auto it = covered.find(d.id);
      if (it == covered.end()) {
        fail(Errc::coverage_violation, d.id,
             "config serves unknown demand '" + d.id + "'");
      }
      ++it->second;
    }
  }
  for (const auto& [id, count] : covered) {
    if (count != 1) {
      fail(Errc::coverage_violation, id,
           "demand '" + id + "' covered " + std::to_string(count) + " times");
    }
  }
  return total;
}

FailureReport verify_survivability(const std::vector<ProvisionConfig>& configs,
                                   const Topology& topology) {
  struct DemandView {
    std::string id;
    const ProvisionConfig* config;
    std::vector<int> working_links;
    std::vector<int> protection_links;  // own feed + trunk for combined copies
    bool has_protection = false;
    std::string partner_id;  // encoded pairs only
  };
  std::vector<DemandView> views;
  for (const ProvisionConfig& config : configs) {
    for (const Demand& d : config.demands) {
      DemandView view;
      view.id = d.id;
      view.config = &config;
      for (const ServingChain& chain : config.chains) {
        if (chain.demand_id != d.id) continue;
        if (chain.working_copy) {
          view.working_links = chain_links(config, chain);
        } else {
          view.protection_links = chain_links(config, chain);
          view.has_protection = true;
        }
      }
      if (config.kind == ConfigKind::encoded) {
        for (const Demand& other : config.demands) {
          if (other.id != d.id) view.partner_id = other.id;
        }
      }
      views.push_back(std::move(view));
    }
  }
  auto find_view = [&views](const std::string& id) -> const DemandView& {
    for (const DemandView& v : views) {
      if (v.id == id) return v;
    }
    fail(Errc::coverage_violation, id, "no serving chains for demand '" + id + "'");
  };
  auto avoids = [](const std::vector<int>& links, int failed) {
    return std::find(links.begin(), links.end(), failed) == links.end();
  };

  FailureReport report;
  report.survivable = true;
  for (int link = 0; link < topology.link_count(); ++link) {
    FailureReport::LinkOutcome outcome;
    outcome.link = link;
    for (const DemandView& view : views) {
      DemandFate fate;
      if (avoids(view.working_links, link)) {
        fate = DemandFate::unaffected;
      } else if (!view.has_protection) {
        fate = DemandFate::lost;
      } else if (view.config->kind == ConfigKind::encoded) {
        // Decoding d at the destination needs the encoded trunk signal (so
        // both feeds and the trunk) plus the partner's original via its
        // working path.
        const DemandView& partner = find_view(view.partner_id);
        bool chain_ok = avoids(view.protection_links, link) &&
                        avoids(partner.protection_links, link);
        bool partner_ok = avoids(partner.working_links, link);
        fate = (chain_ok && partner_ok) ? DemandFate::recovered_via_decode
                                        : DemandFate::lost;
      } else {
        fate = avoids(view.protection_links, link)
                   ? DemandFate::recovered_via_protection
                   : DemandFate::lost;
      }
      if (fate == DemandFate::lost) report.survivable = false;
      outcome.fates.emplace_back(view.id, fate);
    }
    report.outcomes.push_back(std::move(outcome));
  }
  return report;
}

CapacityReport check_capacity(const std::vector<ProvisionConfig>& configs,
                              const Topology& topology) {
  CapacityReport report;
  report.used_slices.assign(topology.link_count(), 0);
  for (const ProvisionConfig& config : configs) {
    for (const Lightpath& lp : config.lightpaths) {
      for (int link : lp.route.links) {
        report.used_slices[link] += lp.slices;
      }
    }
  }
  for (int link = 0; link < topology.link_count(); ++link) {
    const auto& capacity = topology.links()[link].capacity_slices;
    if (capacity && report.used_slices[link] > *capacity) {
      report.overloaded.push_back(link);
    }
  }
  report.feasible = report.overloaded.empty();
  return report;
}

std::string solution_to_json(const std::vector<ProvisionConfig>& configs,
                             const std::vector<Demand>& demands,
                             const Topology& topology, int indent) {
  ordered_json j;
  j["demands"] = ordered_json::array();
  for (const Demand& d : demands) {
    j["demands"].push_back(ordered_json{{"id", d.id},
                                        {"src", d.src},
                                        {"dst", d.dst},
                                        {"rate_gbps", d.rate_gbps},
                                        {"protected", d.is_protected}});
  }
  j["configs"] = ordered_json::array();
  std::int64_t total = 0;
  for (const ProvisionConfig& config : configs) {
    ordered_json jc;
    jc["kind"] = kind_name(config.kind);
    jc["demand_ids"] = ordered_json::array();
    for (const Demand& d : config.demands) jc["demand_ids"].push_back(d.id);
    if (config.mix_node) jc["mix_node"] = *config.mix_node;
    jc["lightpaths"] = ordered_json::array();
    for (const Lightpath& lp : config.lightpaths) {
      jc["lightpaths"].push_back(
          ordered_json{{"route", path_node_names(topology, lp.route)},
                       {"rate_gbps", lp.rate_gbps},
                       {"format", lp.format},
                       {"slices", lp.slices},
                       {"role", role_name(lp.role)},
                       {"carries", lp.carries}});
    }
    jc["cost"] = config.cost;
    total += config.cost;
    j["configs"].push_back(jc);
  }
  j["total_cost"] = total;
  return j.dump(indent);
}

}  // namespace lightplan
