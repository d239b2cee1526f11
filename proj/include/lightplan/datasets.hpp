#pragma once

#include <string>
#include <vector>

#include "lightplan/topology.hpp"

namespace lightplan {

// Topology datasets compiled into the library: "cost239" (11 nodes, 26 links)
// and "nsfnet" (14 nodes, 21 links).
const std::vector<std::string>& builtin_topology_names();
const char* builtin_topology_json(const std::string& name);
const Topology& builtin_topology(const std::string& name);

}  // namespace lightplan
