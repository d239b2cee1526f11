#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lightplan/paths.hpp"
#include "lightplan/topology.hpp"
#include "lightplan/traffic.hpp"
#include "lightplan/transceiver.hpp"

namespace lightplan {

enum class LightpathRole { working, protection, aggregated, encoded, feed };
enum class ConfigKind { bypass, aggregated, encoded };

const char* role_name(LightpathRole role);
const char* kind_name(ConfigKind kind);

// One optical channel: a route plus the channel type occupying `slices`
// spectrum slices on every link of the route.
struct Lightpath {
  std::string id;
  Path route;
  int rate_gbps = 0;
  std::string format;
  int slices = 0;
  LightpathRole role = LightpathRole::working;
  std::vector<std::string> carries;  // demand ids riding this channel
};

// The lightpaths that jointly deliver one copy (working or protection) of one
// demand. For combined copies the chain is feed + trunk; decode requirements
// for encoded trunks are handled by the failure analysis, keyed off the
// config kind.
struct ServingChain {
  std::string demand_id;
  bool working_copy = true;
  std::vector<int> lightpaths;  // indices into ProvisionConfig::lightpaths
};

// One complete way to serve a demand (bypass) or a demand pair (aggregated /
// encoded), with its wavelength-link cost: sum over lightpaths of
// slices x hop count.
struct ProvisionConfig {
  ConfigKind kind = ConfigKind::bypass;
  std::vector<Demand> demands;  // 1 (bypass) or 2 (aggregated/encoded)
  std::optional<std::string> mix_node;
  std::vector<Lightpath> lightpaths;
  std::int64_t cost = 0;
  std::vector<ServingChain> chains;
};

// Routes for a combined copy of a demand pair: each source feeds the mix node
// and a single trunk continues to the shared destination. Feeds are empty
// when the mix node is that demand's source; the trunk is empty when the mix
// node is the destination itself.
struct CombinedRoute {
  Path feed_a;
  Path feed_b;
  Path trunk;
};

// Separate per-demand routes for one copy of a pair.
struct SplitPaths {
  Path a;
  Path b;
};

using PairCopyPlan = std::variant<SplitPaths, CombinedRoute>;

// Single-demand provisioning: a working lightpath plus, for protected
// demands, a link-disjoint protection lightpath. Formats default to the
// cheapest table entry for the demand rate; `format_override` pins both
// copies to a specific format.
ProvisionConfig build_bypass(const Topology& topology, const Demand& demand,
                             const Path& working,
                             const std::optional<Path>& protection,
                             const TransceiverTable& table,
                             const std::optional<std::string>& format_override = {});

// Pair provisioning with optical aggregation. Each copy (working, and
// protection when the demands are protected) is either a SplitPaths copy or a
// CombinedRoute copy; at least one copy must be combined. Combined-chain
// inputs use `format_a`/`format_b` (default: cheapest for each rate) and must
// match an aggregation rule; the trunk carries the rule output. Split copies
// always use the cheapest format. Every demand's working chain must be
// link-disjoint from its own protection chain.
ProvisionConfig build_aggregated(const Topology& topology, const Demand& a,
                                 const Demand& b, const PairCopyPlan& working,
                                 const std::optional<PairCopyPlan>& protection,
                                 const TransceiverTable& table,
                                 const std::optional<std::string>& format_a = {},
                                 const std::optional<std::string>& format_b = {});

// Pair provisioning with XOR-coded protection: separate working lightpaths,
// protection feeds into the mix node and a single encoded trunk to the shared
// destination (at least one trunk hop). The destination can invert the XOR
// only while it still receives the partner signal, hence the disjointness
// contract: the workings are mutually link-disjoint and each working is
// link-disjoint from both feeds and the trunk.
ProvisionConfig build_encoded(const Topology& topology, const Demand& a,
                              const Demand& b, const Path& working_a,
                              const Path& working_b,
                              const CombinedRoute& protection,
                              const TransceiverTable& table,
                              const std::optional<std::string>& format_a = {},
                              const std::optional<std::string>& format_b = {});

// Total wavelength-link cost of a config selection covering each demand
// exactly once (throws on under- or over-coverage).
std::int64_t total_cost(const std::vector<ProvisionConfig>& configs,
                        const std::vector<Demand>& demands);

enum class DemandFate { unaffected, recovered_via_protection, recovered_via_decode, lost };
const char* fate_name(DemandFate fate);

struct FailureReport {
  struct LinkOutcome {
    int link = 0;
    std::vector<std::pair<std::string, DemandFate>> fates;  // per demand id
  };
  std::vector<LinkOutcome> outcomes;  // one entry per topology link
  bool survivable = false;            // no demand lost under any single failure
};

// Simulates every single-link failure. A demand survives a failure via its
// working chain, via its protection chain (bypass/aggregated), or via XOR
// decoding at the destination (encoded pairs: own feed, partner feed, trunk
// and the partner's working must all avoid the failed link).
FailureReport verify_survivability(const std::vector<ProvisionConfig>& configs,
                                   const Topology& topology);

struct CapacityReport {
  std::vector<std::int64_t> used_slices;  // per link index
  std::vector<int> overloaded;            // links exceeding a finite capacity
  bool feasible = true;
};

CapacityReport check_capacity(const std::vector<ProvisionConfig>& configs,
                              const Topology& topology);

std::string solution_to_json(const std::vector<ProvisionConfig>& configs,
                             const std::vector<Demand>& demands,
                             const Topology& topology, int indent = 2);

}  // namespace lightplan
