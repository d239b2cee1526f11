#include "lightplan/topology.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lightplan {

using nlohmann::ordered_json;

Topology::Topology(std::string name, std::vector<std::string> nodes,
                   std::vector<std::pair<std::string, std::string>> link_endpoints,
                   std::vector<std::optional<int>> link_capacities)
    : name_(std::move(name)) {
  if (nodes.empty()) {
    fail(Errc::invalid_argument, "nodes", "topology has no nodes");
  }
  std::sort(nodes.begin(), nodes.end());
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i] == nodes[i + 1]) {
      fail(Errc::invalid_argument, nodes[i], "duplicate node id '" + nodes[i] + "'");
    }
  }
  if (std::find(nodes.begin(), nodes.end(), std::string()) != nodes.end()) {
    fail(Errc::invalid_argument, "", "empty node id");
  }
  nodes_ = std::move(nodes);

  std::map<std::string, int> index;
  for (int i = 0; i < node_count(); ++i) index[nodes_[i]] = i;

  std::set<std::pair<int, int>> seen;
  for (std::size_t li = 0; li < link_endpoints.size(); ++li) {
    const auto& [na, nb] = link_endpoints[li];
    const std::string label = na + "-" + nb;
    auto ia = index.find(na);
    auto ib = index.find(nb);
    if (ia == index.end()) {
      fail(Errc::dangling_endpoint, na, "link " + label + " references unknown node '" + na + "'");
    }
    if (ib == index.end()) {
      fail(Errc::dangling_endpoint, nb, "link " + label + " references unknown node '" + nb + "'");
    }
    if (ia->second == ib->second) {
      fail(Errc::invalid_argument, label, "link " + label + " joins a node to itself");
    }
    Link link;
    link.a = std::min(ia->second, ib->second);
    link.b = std::max(ia->second, ib->second);
    link.capacity_slices = link_capacities.at(li);
    if (link.capacity_slices && *link.capacity_slices < 1) {
      fail(Errc::invalid_argument, label, "link " + label + " has capacity_slices < 1");
    }
    if (!seen.insert({link.a, link.b}).second) {
      const std::string canon = nodes_[link.a] + "-" + nodes_[link.b];
      fail(Errc::duplicate_link, canon, "duplicate link " + canon);
    }
    links_.push_back(link);
  }
  std::sort(links_.begin(), links_.end(), [](const Link& x, const Link& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });

  adjacency_.assign(node_count(), {});
  for (int li = 0; li < link_count(); ++li) {
    adjacency_[links_[li].a].push_back({links_[li].b, li});
    adjacency_[links_[li].b].push_back({links_[li].a, li});
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  // Connectivity is a load-time invariant: routing assumes every pair is
  // reachable.
  std::vector<char> reached(node_count(), 0);
  std::vector<int> stack{0};
  reached[0] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (const auto& [v, li] : adjacency_[u]) {
      if (!reached[v]) {
        reached[v] = 1;
        stack.push_back(v);
      }
    }
  }
  for (int i = 0; i < node_count(); ++i) {
    if (!reached[i]) {
      fail(Errc::disconnected_graph, nodes_[i],
           "node '" + nodes_[i] + "' is unreachable from '" + nodes_[0] + "'");
    }
  }
}

int Topology::node_index(const std::string& id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || *it != id) {
    fail(Errc::invalid_argument, id, "unknown node '" + id + "'");
  }
  return static_cast<int>(it - nodes_.begin());
}

std::optional<int> Topology::find_node(const std::string& id) const noexcept {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - nodes_.begin());
}

int Topology::link_between(int a, int b) const {
  for (const auto& [v, li] : adjacency_.at(a)) {
    if (v == b) return li;
  }
  return -1;
}

std::string Topology::link_name(int link) const {
  const Link& l = links_.at(link);
  return nodes_[l.a] + "-" + nodes_[l.b];
}

std::string Topology::to_json(int indent) const {
  ordered_json j;
  j["name"] = name_;
  j["nodes"] = nodes_;
  j["links"] = ordered_json::array();
  for (const Link& l : links_) {
    ordered_json jl;
    jl["a"] = nodes_[l.a];
    jl["b"] = nodes_[l.b];
    if (l.capacity_slices) jl["capacity_slices"] = *l.capacity_slices;
    j["links"].push_back(jl);
  }
  return j.dump(indent);
}

Topology load_topology(const std::string& json_document) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_document);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, "<document>", e.what());
  }
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array() ||
      !j.contains("links") || !j["links"].is_array()) {
    fail(Errc::parse_error, "<document>",
         "topology document requires 'nodes' and 'links' arrays");
  }
  std::string name = j.value("name", std::string());
  std::vector<std::string> nodes;
  for (const auto& n : j["nodes"]) {
    if (!n.is_string()) fail(Errc::parse_error, "nodes", "node ids must be strings");
    nodes.push_back(n.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> endpoints;
  std::vector<std::optional<int>> capacities;
  for (const auto& l : j["links"]) {
    if (!l.is_object() || !l.contains("a") || !l.contains("b") ||
        !l["a"].is_string() || !l["b"].is_string()) {
      fail(Errc::parse_error, "links", "each link requires string endpoints 'a' and 'b'");
    }
    endpoints.emplace_back(l["a"].get<std::string>(), l["b"].get<std::string>());
    if (l.contains("capacity_slices")) {
      if (!l["capacity_slices"].is_number_integer()) {
        fail(Errc::parse_error, "capacity_slices", "capacity_slices must be an integer");
      }
      capacities.emplace_back(l["capacity_slices"].get<int>());
    } else {
      capacities.emplace_back(std::nullopt);
    }
  }
  return Topology(std::move(name), std::move(nodes), std::move(endpoints),
                  std::move(capacities));
}

Topology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, path, "cannot open topology file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_topology(buf.str());
}

}  // namespace lightplan
