#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lightplan/error.hpp"

namespace lightplan {

// Undirected fiber link between two nodes. Endpoints are stored as indices
// into Topology::nodes() with a < b. A missing capacity means the link is
// uncapacitated (the cost studies never block on spectrum).
struct Link {
  int a = 0;
  int b = 0;
  std::optional<int> capacity_slices;
};

// Validated, immutable network graph. Nodes are kept sorted by identifier and
// links sorted by endpoint pair, so logically equal inputs canonicalize to the
// same object regardless of file ordering.
class Topology {
 public:
  Topology(std::string name, std::vector<std::string> nodes,
           std::vector<std::pair<std::string, std::string>> link_endpoints,
           std::vector<std::optional<int>> link_capacities);

  const std::string& name() const { return name_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }

  int node_index(const std::string& id) const;  // throws on unknown id
  std::optional<int> find_node(const std::string& id) const noexcept;
  const std::string& node_name(int index) const { return nodes_.at(index); }

  // Link index joining the two nodes, or -1 when absent.
  int link_between(int a, int b) const;
  std::string link_name(int link) const;

  // node -> list of (neighbor, link index), sorted by neighbor index.
  const std::vector<std::vector<std::pair<int, int>>>& adjacency() const {
    return adjacency_;
  }

  std::string to_json(int indent = 2) const;

 private:
  std::string name_;
  std::vector<std::string> nodes_;
  std::vector<Link> links_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

// Parses and validates the JSON topology document format:
//   {"name": ..., "nodes": [...], "links": [{"a":.., "b":.., "capacity_slices":..}]}
Topology load_topology(const std::string& json_document);
Topology load_topology_file(const std::string& path);

}  // namespace lightplan
