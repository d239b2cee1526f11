// Five-node reference network used across the tests: two demands A->Z and
// B->Z with direct working links, protection feeds into X and a shared trunk
// X-E-Z. Small enough to verify every cost by hand.
#pragma once

#include <optional>
#include <string>

#include "lightplan/datasets.hpp"
#include "lightplan/provision.hpp"
#include "lightplan/solver.hpp"

namespace toy {

inline lightplan::Topology topology() {
  return lightplan::load_topology(R"({
    "name": "toy",
    "nodes": ["A", "B", "E", "X", "Z"],
    "links": [
      {"a": "A", "b": "Z"},
      {"a": "B", "b": "Z"},
      {"a": "A", "b": "X"},
      {"a": "B", "b": "X"},
      {"a": "X", "b": "E"},
      {"a": "E", "b": "Z"}
    ]
  })");
}

// Default table extended with the two cross-rate combining rules this
// network exercises: 100G+200G QPSK aggregate into a 300G 16QAM channel, and
// the same inputs XOR-encode into a 200G 16QAM channel.
inline lightplan::TransceiverTable table() {
  using lightplan::ComboRule;
  return lightplan::TransceiverTable::default_table().with_rules(
      {ComboRule{{100, "QPSK"}, {200, "QPSK"}, {300, "16QAM"}}},
      {ComboRule{{100, "QPSK"}, {200, "QPSK"}, {200, "16QAM"}}});
}

inline lightplan::Demand demand_a(int rate = 100) {
  return {"dA", "A", "Z", rate, true};
}

inline lightplan::Demand demand_b(int rate = 200) {
  return {"dB", "B", "Z", rate, true};
}

struct Fixture {
  lightplan::Topology net = topology();
  lightplan::TransceiverTable tbl = table();

  lightplan::Path path(std::initializer_list<const char*> names) const {
    std::vector<int> nodes;
    for (const char* n : names) nodes.push_back(net.node_index(n));
    return lightplan::make_path(net, nodes);
  }

  // Working on the direct link, protection through X and the trunk.
  lightplan::ProvisionConfig bypass_a(const std::optional<std::string>& fmt = {}) const {
    return lightplan::build_bypass(net, demand_a(), path({"A", "Z"}),
                                   path({"A", "X", "E", "Z"}), tbl, fmt);
  }

  lightplan::ProvisionConfig bypass_b(const std::optional<std::string>& fmt = {}) const {
    return lightplan::build_bypass(net, demand_b(), path({"B", "Z"}),
                                   path({"B", "X", "E", "Z"}), tbl, fmt);
  }

  lightplan::CombinedRoute mix_at_x() const {
    return {path({"A", "X"}), path({"B", "X"}), path({"X", "E", "Z"})};
  }

  lightplan::ProvisionConfig aggregated_protection() const {
    return lightplan::build_aggregated(
        net, demand_a(), demand_b(),
        lightplan::SplitPaths{path({"A", "Z"}), path({"B", "Z"})}, mix_at_x(), tbl,
        "QPSK", "QPSK");
  }

  lightplan::ProvisionConfig encoded() const {
    return lightplan::build_encoded(net, demand_a(), demand_b(), path({"A", "Z"}),
                                    path({"B", "Z"}), mix_at_x(), tbl, "QPSK",
                                    "QPSK");
  }

  lightplan::DesignInstance instance(lightplan::Paradigm paradigm, int k = 5) const {
    lightplan::DemandSet demands;
    demands.demands = {demand_a(), demand_b()};
    demands.model = "custom";
    return {net, demands, tbl, paradigm, k, lightplan::AggScope::both};
  }

  int link(const char* a, const char* b) const {
    return net.link_between(net.node_index(a), net.node_index(b));
  }
};

}  // namespace toy
