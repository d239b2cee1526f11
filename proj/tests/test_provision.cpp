#include <map>
#include <random>

#include "doctest.h"
#include "lightplan/provision.hpp"
#include "lightplan/solver.hpp"
#include "support/random_net.hpp"
#include "support/toy_net.hpp"

using namespace lightplan;

namespace {

std::int64_t recomputed_cost(const ProvisionConfig& config) {
  std::int64_t cost = 0;
  for (const Lightpath& lp : config.lightpaths) {
    cost += static_cast<std::int64_t>(lp.slices) * lp.route.hop_count();
  }
  return cost;
}

std::map<std::string, DemandFate> fates_for_link(const FailureReport& report,
                                                 int link) {
  std::map<std::string, DemandFate> out;
  for (const auto& outcome : report.outcomes) {
    if (outcome.link != link) continue;
    for (const auto& [id, fate] : outcome.fates) out[id] = fate;
  }
  return out;
}

}  // namespace

TEST_CASE("bypass costs on the reference network") {
  toy::Fixture fx;
  ProvisionConfig a = fx.bypass_a();  // 100G, QPSK is cheapest
  CHECK(a.kind == ConfigKind::bypass);
  CHECK(a.cost == 4 * 1 + 4 * 3);
  REQUIRE(a.lightpaths.size() == 2);
  CHECK(a.lightpaths[0].format == "QPSK");
  CHECK(a.lightpaths[1].format == "QPSK");

  // Pinned to QPSK the 200G protection runs at 7 slices.
  ProvisionConfig b = fx.bypass_b("QPSK");
  CHECK(b.cost == 7 * 1 + 7 * 3);

  // Unprotected 200G demand over one hop at the cheapest format.
  Demand u{"u1", "B", "Z", 200, false};
  ProvisionConfig c = build_bypass(fx.net, u, fx.path({"B", "Z"}), std::nullopt, fx.tbl);
  CHECK(c.cost == 4);
  CHECK(c.lightpaths[0].format == "16QAM");
}

TEST_CASE("bypass protections stack 11 slices on the shared trunk") {
  toy::Fixture fx;
  std::vector<ProvisionConfig> configs{fx.bypass_a("QPSK"), fx.bypass_b("QPSK")};
  CapacityReport cap = check_capacity(configs, fx.net);
  CHECK(cap.used_slices[fx.link("X", "E")] == 11);
  CHECK(cap.used_slices[fx.link("E", "Z")] == 11);
}

TEST_CASE("protection aggregation drops the trunk to 6 slices") {
  toy::Fixture fx;
  ProvisionConfig config = fx.aggregated_protection();
  CHECK(config.kind == ConfigKind::aggregated);
  CHECK(config.mix_node == "X");

  CapacityReport cap = check_capacity({config}, fx.net);
  CHECK(cap.used_slices[fx.link("X", "E")] == 6);
  CHECK(cap.used_slices[fx.link("E", "Z")] == 6);

  // feeds 4x1 + 7x1, trunk 6x2, workings 4x1 + 4x1 (cheapest formats)
  CHECK(config.cost == 4 + 7 + 12 + 4 + 4);

  const Lightpath* trunk = nullptr;
  for (const Lightpath& lp : config.lightpaths) {
    if (lp.role == LightpathRole::aggregated) trunk = &lp;
  }
  REQUIRE(trunk != nullptr);
  CHECK(trunk->rate_gbps == 300);
  CHECK(trunk->format == "16QAM");
  CHECK(trunk->slices == 6);
  CHECK(trunk->carries.size() == 2);
  CHECK(trunk->rate_gbps == 100 + 200);
}

TEST_CASE("xor encoding drops the trunk to 4 slices") {
  toy::Fixture fx;
  ProvisionConfig config = fx.encoded();
  CHECK(config.kind == ConfigKind::encoded);
  CHECK(config.mix_node == "X");

  CapacityReport cap = check_capacity({config}, fx.net);
  CHECK(cap.used_slices[fx.link("X", "E")] == 4);
  CHECK(cap.used_slices[fx.link("E", "Z")] == 4);

  const Lightpath* trunk = nullptr;
  for (const Lightpath& lp : config.lightpaths) {
    if (lp.role == LightpathRole::encoded) trunk = &lp;
  }
  REQUIRE(trunk != nullptr);
  CHECK(trunk->rate_gbps == 200);
  CHECK(trunk->format == "16QAM");
  CHECK(trunk->carries.size() == 2);
}

TEST_CASE("metric identity: config cost equals slices x hops summed") {
  toy::Fixture fx;
  for (const ProvisionConfig& config :
       {fx.bypass_a(), fx.bypass_b("QPSK"), fx.aggregated_protection(), fx.encoded()}) {
    CHECK(config.cost == recomputed_cost(config));
  }
}

TEST_CASE("degenerate aggregation at the destination equals two bypasses") {
  // Both demands at 100G so every copy provisions at (100, QPSK) under both
  // builders; with the mix node on Z the combined config degenerates to the
  // two plain route pairs.
  toy::Fixture fx;
  Demand a100 = toy::demand_a(100);
  Demand b100 = toy::demand_b(100);
  CombinedRoute at_dst{fx.path({"A", "X", "E", "Z"}), fx.path({"B", "X", "E", "Z"}),
                       fx.path({"Z"})};
  ProvisionConfig agg = build_aggregated(
      fx.net, a100, b100, SplitPaths{fx.path({"A", "Z"}), fx.path({"B", "Z"})},
      at_dst, fx.tbl);
  ProvisionConfig a = build_bypass(fx.net, a100, fx.path({"A", "Z"}),
                                   fx.path({"A", "X", "E", "Z"}), fx.tbl);
  ProvisionConfig b = build_bypass(fx.net, b100, fx.path({"B", "Z"}),
                                   fx.path({"B", "X", "E", "Z"}), fx.tbl);
  CHECK(agg.cost == a.cost + b.cost);
  // No trunk lightpath is emitted for a zero-hop trunk.
  for (const Lightpath& lp : agg.lightpaths) {
    CHECK(lp.role != LightpathRole::aggregated);
  }
}

TEST_CASE("same-source pair aggregates over the whole route") {
  // Two unprotected 100G demands A->Z combine at their source: no feeds, one
  // 200G 16QAM trunk of 4 slices per link instead of 2 x 4.
  toy::Fixture fx;
  Demand d1{"d1", "A", "Z", 100, false};
  Demand d2{"d2", "A", "Z", 100, false};
  CombinedRoute whole{fx.path({"A"}), fx.path({"A"}), fx.path({"A", "X", "E", "Z"})};
  ProvisionConfig agg =
      build_aggregated(fx.net, d1, d2, whole, std::nullopt, fx.tbl);
  REQUIRE(agg.lightpaths.size() == 1);
  CHECK(agg.lightpaths[0].role == LightpathRole::aggregated);
  CHECK(agg.lightpaths[0].rate_gbps == 200);
  CHECK(agg.lightpaths[0].slices == 4);
  CHECK(agg.cost == 4 * 3);

  ProvisionConfig solo1 =
      build_bypass(fx.net, d1, fx.path({"A", "X", "E", "Z"}), std::nullopt, fx.tbl);
  CHECK(agg.cost == solo1.cost * 2 - 12);  // 12 vs 24 over the same 3 hops
}

TEST_CASE("builder error paths") {
  toy::Fixture fx;
  SUBCASE("missing aggregation rule") {
    try {
      build_aggregated(fx.net, toy::demand_a(100), toy::demand_b(200),
                       SplitPaths{fx.path({"A", "Z"}), fx.path({"B", "Z"})},
                       fx.mix_at_x(), fx.tbl, "QPSK", "16QAM");
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::missing_rule);
    }
  }
  SUBCASE("unequal xor rates without a rule") {
    Demand b300{"dB", "B", "Z", 300, true};
    try {
      build_encoded(fx.net, toy::demand_a(100), b300, fx.path({"A", "Z"}),
                    fx.path({"B", "Z"}), fx.mix_at_x(), fx.tbl, "QPSK", "16QAM");
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unequal_rates);
    }
  }
  SUBCASE("feeds sharing a link with a working route") {
    // Working of A via X collides with its own protection feed A-X.
    try {
      build_encoded(fx.net, toy::demand_a(), toy::demand_b(),
                    fx.path({"A", "X", "E", "Z"}), fx.path({"B", "Z"}), fx.mix_at_x(),
                    fx.tbl, "QPSK", "QPSK");
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::disjointness_violation);
      CHECK(e.element() == "A-X");
    }
  }
  SUBCASE("workings sharing a link") {
    // Both workings routed through X-E-Z.
    CHECK_THROWS_AS(build_encoded(fx.net, toy::demand_a(), toy::demand_b(),
                                  fx.path({"A", "X", "E", "Z"}),
                                  fx.path({"B", "X", "E", "Z"}),
                                  CombinedRoute{fx.path({"A"}), fx.path({"B", "X"}),
                                                fx.path({"X", "E", "Z"})},
                                  fx.tbl, "QPSK", "QPSK"),
                    Error);
  }
  SUBCASE("encoded trunk needs a link") {
    CHECK_THROWS_AS(build_encoded(fx.net, toy::demand_a(), toy::demand_b(),
                                  fx.path({"A", "Z"}), fx.path({"B", "Z"}),
                                  CombinedRoute{fx.path({"A", "X", "E", "Z"}),
                                                fx.path({"B", "X", "E", "Z"}),
                                                fx.path({"Z"})},
                                  fx.tbl, "QPSK", "QPSK"),
                    Error);
  }
  SUBCASE("mix node off the trunk") {
    CHECK_THROWS_AS(
        build_aggregated(fx.net, toy::demand_a(), toy::demand_b(),
                         SplitPaths{fx.path({"A", "Z"}), fx.path({"B", "Z"})},
                         CombinedRoute{fx.path({"A", "X"}), fx.path({"B", "X"}),
                                       fx.path({"E", "Z"})},
                         fx.tbl, "QPSK", "QPSK"),
        Error);
  }
  SUBCASE("protected demand without protection routes") {
    CHECK_THROWS_AS(
        build_bypass(fx.net, toy::demand_a(), fx.path({"A", "Z"}), std::nullopt, fx.tbl),
        Error);
  }
  SUBCASE("bypass pair must be disjoint") {
    CHECK_THROWS_AS(build_bypass(fx.net, toy::demand_a(), fx.path({"A", "Z"}),
                                 fx.path({"A", "Z"}), fx.tbl),
                    Error);
  }
}

TEST_CASE("total cost validates exact coverage") {
  toy::Fixture fx;
  std::vector<Demand> demands{toy::demand_a(), toy::demand_b()};
  ProvisionConfig a = fx.bypass_a();
  ProvisionConfig b = fx.bypass_b();
  CHECK(total_cost({a, b}, demands) == a.cost + b.cost);
  CHECK(total_cost({}, {}) == 0);

  try {
    total_cost({a}, demands);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::coverage_violation);
    CHECK(e.element() == "dB");
  }
  CHECK_THROWS_AS(total_cost({a, a, b}, demands), Error);
}

TEST_CASE("survivability of the encoded reference solution") {
  toy::Fixture fx;
  FailureReport report = verify_survivability({fx.encoded()}, fx.net);
  CHECK(report.survivable);

  auto on_az = fates_for_link(report, fx.link("A", "Z"));
  CHECK(on_az["dA"] == DemandFate::recovered_via_decode);
  CHECK(on_az["dB"] == DemandFate::unaffected);

  auto on_bz = fates_for_link(report, fx.link("B", "Z"));
  CHECK(on_bz["dA"] == DemandFate::unaffected);
  CHECK(on_bz["dB"] == DemandFate::recovered_via_decode);

  auto on_xe = fates_for_link(report, fx.link("X", "E"));
  CHECK(on_xe["dA"] == DemandFate::unaffected);
  CHECK(on_xe["dB"] == DemandFate::unaffected);
}

TEST_CASE("adversarial encoded solution with shared workings is not survivable") {
  // Hand-assembled config bypassing the builder checks: workings A-X-B-Z and
  // B-X-A-Z share the A-X and B-X links, so either failure leaves the XOR
  // uninvertible and loses both demands.
  toy::Fixture fx;
  ProvisionConfig config = fx.encoded();
  config.lightpaths[0].route = fx.path({"A", "X", "B", "Z"});
  config.lightpaths[1].route = fx.path({"B", "X", "A", "Z"});
  FailureReport report = verify_survivability({config}, fx.net);
  CHECK(!report.survivable);
  auto on_ax = fates_for_link(report, fx.link("A", "X"));
  CHECK(on_ax["dA"] == DemandFate::lost);
  CHECK(on_ax["dB"] == DemandFate::lost);
}

TEST_CASE("bypass and aggregated solutions recover via protection") {
  toy::Fixture fx;
  FailureReport report =
      verify_survivability({fx.bypass_a(), fx.bypass_b()}, fx.net);
  CHECK(report.survivable);
  auto on_az = fates_for_link(report, fx.link("A", "Z"));
  CHECK(on_az["dA"] == DemandFate::recovered_via_protection);

  FailureReport agg = verify_survivability({fx.aggregated_protection()}, fx.net);
  CHECK(agg.survivable);
  auto on_bz = fates_for_link(agg, fx.link("B", "Z"));
  CHECK(on_bz["dB"] == DemandFate::recovered_via_protection);
}

TEST_CASE("unprotected demands are lost on their working link") {
  toy::Fixture fx;
  Demand u{"u1", "A", "Z", 100, false};
  ProvisionConfig config =
      build_bypass(fx.net, u, fx.path({"A", "Z"}), std::nullopt, fx.tbl);
  FailureReport report = verify_survivability({config}, fx.net);
  CHECK(!report.survivable);
  CHECK(fates_for_link(report, fx.link("A", "Z"))["u1"] == DemandFate::lost);
  CHECK(fates_for_link(report, fx.link("X", "E"))["u1"] == DemandFate::unaffected);
}

TEST_CASE("capacity reports") {
  toy::Fixture fx;
  SUBCASE("empty solution") {
    CapacityReport cap = check_capacity({}, fx.net);
    CHECK(cap.feasible);
    for (std::int64_t used : cap.used_slices) CHECK(used == 0);
  }
  SUBCASE("finite capacity breach names the link") {
    Topology capped = load_topology(R"({
      "name": "toy-capped",
      "nodes": ["A", "B", "E", "X", "Z"],
      "links": [
        {"a": "A", "b": "Z"}, {"a": "B", "b": "Z"}, {"a": "A", "b": "X"},
        {"a": "B", "b": "X"}, {"a": "X", "b": "E", "capacity_slices": 10},
        {"a": "E", "b": "Z"}
      ]})");
    toy::Fixture fx2;
    fx2.net = capped;
    std::vector<ProvisionConfig> configs{fx2.bypass_a("QPSK"), fx2.bypass_b("QPSK")};
    CapacityReport cap = check_capacity(configs, capped);
    CHECK(!cap.feasible);
    REQUIRE(cap.overloaded.size() == 1);
    CHECK(capped.link_name(cap.overloaded[0]) == "E-X");
    CHECK(cap.used_slices[cap.overloaded[0]] == 11);
  }
}

TEST_CASE("aggregation conservation holds over random rule tables") {
  std::mt19937_64 rng(77);
  toy::Fixture fx;
  for (int trial = 0; trial < 30; ++trial) {
    const int ra = 100 * (1 + static_cast<int>(testgen::draw(rng, 3)));
    const int rb = 100 * (1 + static_cast<int>(testgen::draw(rng, 3)));
    std::map<RateFormat, int> entries{
        {{ra, "QPSK"}, 2 + static_cast<int>(testgen::draw(rng, 6))},
        {{rb, "QPSK"}, 2 + static_cast<int>(testgen::draw(rng, 6))},
        {{ra + rb, "16QAM"}, 2 + static_cast<int>(testgen::draw(rng, 6))},
    };
    TransceiverTable table(entries,
                           {{{ra, "QPSK"}, {rb, "QPSK"}, {ra + rb, "16QAM"}}}, {});
    ProvisionConfig config = build_aggregated(
        fx.net, toy::demand_a(ra), toy::demand_b(rb),
        SplitPaths{fx.path({"A", "Z"}), fx.path({"B", "Z"})}, fx.mix_at_x(), table,
        "QPSK", "QPSK");
    for (const Lightpath& lp : config.lightpaths) {
      if (lp.role == LightpathRole::aggregated) {
        CHECK(lp.rate_gbps == ra + rb);
      }
    }
    CHECK(config.cost == recomputed_cost(config));
  }
}

TEST_CASE("combined configs never cost more than bypass over the same routes") {
  // With a shared trunk of >= 1 hop and rule output cheaper than the input
  // sum, the combined config beats the two bypasses routed along the same
  // feeds + trunk.
  toy::Fixture fx;
  ProvisionConfig encoded = fx.encoded();
  ProvisionConfig agg = fx.aggregated_protection();
  std::int64_t bypass_total = fx.bypass_a("QPSK").cost + fx.bypass_b("QPSK").cost;
  CHECK(encoded.cost <= bypass_total);
  CHECK(agg.cost <= bypass_total);
}
