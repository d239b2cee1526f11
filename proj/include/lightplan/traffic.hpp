#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lightplan/topology.hpp"

namespace lightplan {

// A connection request. `is_protected` asks for dedicated path protection.
struct Demand {
  std::string id;
  std::string src;
  std::string dst;
  int rate_gbps = 0;
  bool is_protected = true;
};

struct DemandSet {
  std::vector<Demand> demands;
  std::uint64_t seed = 0;
  std::string model;  // "two-to-many" for generated sets, "custom" otherwise
};

// Draws a two-to-many traffic set: two distinct source nodes chosen uniformly
// at random, then `n_destinations` distinct destinations from the remaining
// nodes (nullopt = all remaining), one demand per (source, destination) pair.
// Deterministic for fixed (topology, arguments, seed).
DemandSet generate_traffic(const Topology& topology,
                           std::optional<int> n_destinations, int rate_gbps,
                           bool protect, std::uint64_t seed);

std::string demandset_to_json(const DemandSet& set, int indent = 2);
DemandSet demandset_from_json(const std::string& json_document);
DemandSet demandset_from_file(const std::string& path);

// Order-sensitive FNV-1a digest of the whole set; used to log that two solver
// runs consumed identical traffic.
std::uint64_t demandset_hash(const DemandSet& set);

}  // namespace lightplan
