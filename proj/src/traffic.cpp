#include "lightplan/traffic.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lightplan {

using nlohmann::ordered_json;

namespace {

// Unbiased draw from [0, n) via rejection; keeps results identical across
// standard library implementations (uniform_int_distribution is not portable).
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return static_cast<std::size_t>(v % n);
}

void validate_two_to_many(const DemandSet& set) {
  std::set<std::string> sources, destinations;
  for (const Demand& d : set.demands) {
    sources.insert(d.src);
    destinations.insert(d.dst);
  }
  if (sources.size() != 2) {
    fail(Errc::invalid_argument, set.model,
         "two-to-many set must have exactly 2 distinct sources");
  }
  for (const std::string& dst : destinations) {
    if (sources.count(dst)) {
      fail(Errc::invalid_argument, dst,
           "two-to-many destination '" + dst + "' is also a source");
    }
  }
}

}  // namespace

DemandSet generate_traffic(const Topology& topology,
                           std::optional<int> n_destinations, int rate_gbps,
                           bool protect, std::uint64_t seed) {
  if (rate_gbps <= 0) {
    fail(Errc::invalid_argument, std::to_string(rate_gbps), "rate_gbps must be positive");
  }
  const int n = topology.node_count();
  const int n_dest = n_destinations.value_or(n - 2);
  if (n_dest < 1) {
    fail(Errc::too_few_nodes, topology.name(), "need at least 1 destination");
  }
  if (n < n_dest + 2) {
    fail(Errc::too_few_nodes, topology.name(),
         "topology has " + std::to_string(n) + " nodes; need at least " +
             std::to_string(n_dest + 2));
  }

  std::mt19937_64 rng(seed);
  std::vector<std::string> pool = topology.nodes();  // canonical sorted order
  auto draw = [&rng, &pool]() {
    std::size_t i = uniform_index(rng, pool.size());
    std::string picked = pool[i];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    return picked;
  };

  std::vector<std::string> sources{draw(), draw()};
  std::sort(sources.begin(), sources.end());
  std::vector<std::string> destinations;
  for (int i = 0; i < n_dest; ++i) destinations.push_back(draw());
  std::sort(destinations.begin(), destinations.end());

  DemandSet set;
  set.seed = seed;
  set.model = "two-to-many";
  int counter = 1;
  for (const std::string& src : sources) {
    for (const std::string& dst : destinations) {
      set.demands.push_back({"d" + std::to_string(counter++), src, dst,
                             rate_gbps, protect});
    }
  }
  return set;
}

std::string demandset_to_json(const DemandSet& set, int indent) {
  ordered_json j;
  j["demands"] = ordered_json::array();
  for (const Demand& d : set.demands) {
    j["demands"].push_back(ordered_json{{"id", d.id},
                                        {"src", d.src},
                                        {"dst", d.dst},
                                        {"rate_gbps", d.rate_gbps},
                                        {"protected", d.is_protected}});
  }
  j["seed"] = set.seed;
  j["model"] = set.model;
  return j.dump(indent);
}

DemandSet demandset_from_json(const std::string& json_document) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_document);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, "<document>", e.what());
  }
  if (!j.is_object() || !j.contains("demands") || !j["demands"].is_array()) {
    fail(Errc::parse_error, "<document>", "traffic document requires a 'demands' array");
  }
  DemandSet set;
  set.seed = j.value("seed", std::uint64_t(0));
  set.model = j.value("model", std::string("custom"));
  std::set<std::string> ids;
  for (const auto& d : j["demands"]) {
    Demand demand;
    try {
      demand.id = d.at("id").get<std::string>();
      demand.src = d.at("src").get<std::string>();
      demand.dst = d.at("dst").get<std::string>();
      demand.rate_gbps = d.at("rate_gbps").get<int>();
      demand.is_protected = d.at("protected").get<bool>();
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::parse_error, "demands", e.what());
    }
    if (demand.src == demand.dst) {
      fail(Errc::invalid_argument, demand.id,
           "demand '" + demand.id + "' has src == dst");
    }
    if (demand.rate_gbps <= 0) {
      fail(Errc::invalid_argument, demand.id,
           "demand '" + demand.id + "' has non-positive rate");
    }
    if (!ids.insert(demand.id).second) {
      fail(Errc::invalid_argument, demand.id, "duplicate demand id '" + demand.id + "'");
    }
    set.demands.push_back(std::move(demand));
  }
  if (set.model == "two-to-many") validate_two_to_many(set);
  return set;
}

DemandSet demandset_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, path, "cannot open traffic file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return demandset_from_json(buf.str());
}

std::uint64_t demandset_hash(const DemandSet& set) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  mix(set.model);
  mix(std::to_string(set.seed));
  for (const Demand& d : set.demands) {
    mix(d.id);
    mix(d.src);
    mix(d.dst);
    mix(std::to_string(d.rate_gbps));
    mix(d.is_protected ? "p" : "u");
  }
  return h;
}

}  // namespace lightplan
