#pragma once

#include <string>
#include <vector>

#include "lightplan/topology.hpp"

namespace lightplan {

// Loopless route through the topology. nodes.size() == links.size() + 1; a
// single-node path (no links) is the degenerate zero-hop route used when a
// combining node coincides with an endpoint.
struct Path {
  std::vector<int> nodes;  // node indices
  std::vector<int> links;  // link indices

  int hop_count() const { return static_cast<int>(links.size()); }
  bool empty() const { return links.empty(); }

  auto operator<=>(const Path&) const = default;
};

// Link-disjoint route pair serving one protected demand.
struct PathPair {
  Path working;
  Path protection;
};

bool links_disjoint(const Path& p, const Path& q);

// Builds a Path from a node-index sequence, resolving link indices and
// checking adjacency and looplessness.
Path make_path(const Topology& topology, const std::vector<int>& node_sequence);

std::vector<std::string> path_node_names(const Topology& topology, const Path& path);

// Up to k loopless paths ordered by (hop count, node-identifier sequence).
// The returned list is a prefix of the same call with larger k, and matches
// exhaustive simple-path enumeration sorted by the same key.
std::vector<Path> k_shortest_paths(const Topology& topology, int src, int dst, int k);
std::vector<Path> k_shortest_paths(const Topology& topology, const std::string& src,
                                   const std::string& dst, int k);

// All ordered link-disjoint pairs (p, q) drawn from k_shortest_paths(.., k),
// ordered by total hop count, then by the (p, q) position in the path list.
// Empty when no two of the k candidates are link-disjoint.
std::vector<PathPair> disjoint_pairs(const Topology& topology, int src, int dst, int k);
std::vector<PathPair> disjoint_pairs(const Topology& topology, const std::string& src,
                                     const std::string& dst, int k);

}  // namespace lightplan
