#include "lightplan/transceiver.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lightplan {

using nlohmann::ordered_json;

namespace {

std::string describe(const RateFormat& rf) {
  return "(" + std::to_string(rf.rate_gbps) + "," + rf.format + ")";
}

std::string describe(const ComboRule& r) {
  return describe(r.in_a) + "+" + describe(r.in_b) + "->" + describe(r.out);
}

ComboRule canonical(ComboRule r) {
  if (r.in_b < r.in_a) std::swap(r.in_a, r.in_b);
  return r;
}

}  // namespace

TransceiverTable::TransceiverTable(std::map<RateFormat, int> entries,
                                   std::vector<ComboRule> aggregation_rules,
                                   std::vector<ComboRule> xor_rules)
    : entries_(std::move(entries)) {
  for (const auto& [rf, slices] : entries_) {
    if (rf.rate_gbps <= 0 || rf.format.empty() || slices < 1) {
      fail(Errc::invalid_argument, describe(rf),
           "entry " + describe(rf) + " must have positive rate and slices >= 1");
    }
  }
  auto check_output = [this](const ComboRule& r) {
    if (!entries_.count(r.out)) {
      fail(Errc::invalid_argument, describe(r),
           "rule output " + describe(r.out) + " has no slice entry");
    }
  };
  for (ComboRule r : aggregation_rules) {
    r = canonical(r);
    check_output(r);
    if (r.out.rate_gbps != r.in_a.rate_gbps + r.in_b.rate_gbps) {
      fail(Errc::invalid_argument, describe(r),
           "aggregation output rate must equal the sum of input rates in " + describe(r));
    }
    aggregation_rules_.push_back(r);
  }
  for (ComboRule r : xor_rules) {
    r = canonical(r);
    check_output(r);
    if (r.in_a.rate_gbps == r.in_b.rate_gbps &&
        r.out.rate_gbps != r.in_a.rate_gbps) {
      fail(Errc::invalid_argument, describe(r),
           "xor output rate must equal the common input rate in " + describe(r));
    }
    xor_rules_.push_back(r);
  }
  std::sort(aggregation_rules_.begin(), aggregation_rules_.end());
  std::sort(xor_rules_.begin(), xor_rules_.end());
  aggregation_rules_.erase(
      std::unique(aggregation_rules_.begin(), aggregation_rules_.end()),
      aggregation_rules_.end());
  xor_rules_.erase(std::unique(xor_rules_.begin(), xor_rules_.end()),
                   xor_rules_.end());
}

TransceiverTable TransceiverTable::default_table() {
  std::map<RateFormat, int> entries{
      {{100, "QPSK"}, 4},
      {{200, "QPSK"}, 7},
      {{200, "16QAM"}, 4},
      {{300, "16QAM"}, 6},
  };
  std::vector<ComboRule> agg{
      {{100, "QPSK"}, {100, "QPSK"}, {200, "16QAM"}},
  };
  std::vector<ComboRule> xr;
  for (const auto& [rf, slices] : entries) {
    xr.push_back({rf, rf, rf});
  }
  return TransceiverTable(std::move(entries), std::move(agg), std::move(xr));
}

int TransceiverTable::slices_for(int rate_gbps, const std::string& format) const {
  const RateFormat rf{rate_gbps, format};
  auto it = entries_.find(rf);
  if (it == entries_.end()) {
    fail(Errc::unknown_entry, describe(rf), "no slice entry for " + describe(rf));
  }
  return it->second;
}

bool TransceiverTable::has_entry(int rate_gbps, const std::string& format) const {
  return entries_.count({rate_gbps, format}) > 0;
}

std::optional<RateFormat> TransceiverTable::cheapest_format(int rate_gbps) const {
  std::optional<RateFormat> best;
  int best_slices = 0;
  for (const auto& [rf, slices] : entries_) {
    if (rf.rate_gbps != rate_gbps) continue;
    if (!best || slices < best_slices ||
        (slices == best_slices && rf.format < best->format)) {
      best = rf;
      best_slices = slices;
    }
  }
  return best;
}

namespace {

const ComboRule* find_rule(const std::vector<ComboRule>& rules,
                           RateFormat x, RateFormat y) {
  if (y < x) std::swap(x, y);
  for (const ComboRule& r : rules) {
    if (r.in_a == x && r.in_b == y) return &r;
  }
  return nullptr;
}

std::vector<const ComboRule*> rules_for_rates(const std::vector<ComboRule>& rules,
                                              int ra, int rb) {
  if (rb < ra) std::swap(ra, rb);
  std::vector<const ComboRule*> out;
  for (const ComboRule& r : rules) {
    int lo = std::min(r.in_a.rate_gbps, r.in_b.rate_gbps);
    int hi = std::max(r.in_a.rate_gbps, r.in_b.rate_gbps);
    if (lo == ra && hi == rb) out.push_back(&r);
  }
  return out;
}

}  // namespace

const ComboRule* TransceiverTable::find_aggregation_rule(const RateFormat& x,
                                                         const RateFormat& y) const {
  return find_rule(aggregation_rules_, x, y);
}

const ComboRule* TransceiverTable::find_xor_rule(const RateFormat& x,
                                                 const RateFormat& y) const {
  return find_rule(xor_rules_, x, y);
}

std::vector<const ComboRule*> TransceiverTable::aggregation_rules_for_rates(
    int ra, int rb) const {
  return rules_for_rates(aggregation_rules_, ra, rb);
}

std::vector<const ComboRule*> TransceiverTable::xor_rules_for_rates(int ra,
                                                                    int rb) const {
  return rules_for_rates(xor_rules_, ra, rb);
}

TransceiverTable TransceiverTable::with_rules(
    std::vector<ComboRule> extra_aggregation,
    std::vector<ComboRule> extra_xor) const {
  std::vector<ComboRule> agg = aggregation_rules_;
  std::vector<ComboRule> xr = xor_rules_;
  agg.insert(agg.end(), extra_aggregation.begin(), extra_aggregation.end());
  xr.insert(xr.end(), extra_xor.begin(), extra_xor.end());
  return TransceiverTable(entries_, std::move(agg), std::move(xr));
}

namespace {

ordered_json rf_to_json(const RateFormat& rf) {
  return ordered_json{{"rate_gbps", rf.rate_gbps}, {"format", rf.format}};
}

RateFormat rf_from_json(const ordered_json& j, const char* where) {
  if (!j.is_object() || !j.contains("rate_gbps") || !j.contains("format")) {
    fail(Errc::parse_error, where, "channel type requires 'rate_gbps' and 'format'");
  }
  return {j["rate_gbps"].get<int>(), j["format"].get<std::string>()};
}

std::vector<ComboRule> rules_from_json(const ordered_json& j, const char* key) {
  std::vector<ComboRule> out;
  if (!j.contains(key)) return out;
  for (const auto& r : j.at(key)) {
    out.push_back({rf_from_json(r.value("in_a", ordered_json()), key),
                   rf_from_json(r.value("in_b", ordered_json()), key),
                   rf_from_json(r.value("out", ordered_json()), key)});
  }
  return out;
}

}  // namespace

std::string TransceiverTable::to_json(int indent) const {
  ordered_json j;
  j["entries"] = ordered_json::array();
  for (const auto& [rf, slices] : entries_) {
    ordered_json e = rf_to_json(rf);
    e["slices"] = slices;
    j["entries"].push_back(e);
  }
  auto rules = [](const std::vector<ComboRule>& rs) {
    ordered_json arr = ordered_json::array();
    for (const ComboRule& r : rs) {
      arr.push_back(ordered_json{{"in_a", rf_to_json(r.in_a)},
                                 {"in_b", rf_to_json(r.in_b)},
                                 {"out", rf_to_json(r.out)}});
    }
    return arr;
  };
  j["aggregation_rules"] = rules(aggregation_rules_);
  j["xor_rules"] = rules(xor_rules_);
  return j.dump(indent);
}

TransceiverTable load_transceiver_table(const std::string& json_document) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_document);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, "<document>", e.what());
  }
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
    fail(Errc::parse_error, "<document>", "transceiver document requires an 'entries' array");
  }
  std::map<RateFormat, int> entries;
  for (const auto& e : j["entries"]) {
    RateFormat rf = rf_from_json(e, "entries");
    if (!e.contains("slices") || !e["slices"].is_number_integer()) {
      fail(Errc::parse_error, "entries", "entry requires integer 'slices'");
    }
    entries[rf] = e["slices"].get<int>();
  }
  return TransceiverTable(std::move(entries), rules_from_json(j, "aggregation_rules"),
                          rules_from_json(j, "xor_rules"));
}

TransceiverTable load_transceiver_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, path, "cannot open transceiver file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_transceiver_table(buf.str());
}

}  // namespace lightplan
