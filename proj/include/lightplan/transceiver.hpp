#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lightplan/error.hpp"

namespace lightplan {

// A channel type: bit-rate plus modulation format.
struct RateFormat {
  int rate_gbps = 0;
  std::string format;

  auto operator<=>(const RateFormat&) const = default;
};

// Two-input optical combining rule: feeding two channels of the given types
// into the device yields one output channel. Inputs are unordered; they are
// stored canonically with in_a <= in_b.
struct ComboRule {
  RateFormat in_a;
  RateFormat in_b;
  RateFormat out;

  auto operator<=>(const ComboRule&) const = default;
};

// Maps channel types to their spectrum width in slices and owns the
// aggregation / XOR combining rules. Immutable once constructed.
//
// Construction enforces:
//  - every rule output has a slice entry,
//  - aggregation outputs carry the sum of the input bit-rates,
//  - XOR outputs carry the common input bit-rate when inputs have equal rates.
class TransceiverTable {
 public:
  TransceiverTable(std::map<RateFormat, int> entries,
                   std::vector<ComboRule> aggregation_rules,
                   std::vector<ComboRule> xor_rules);

  // {(100,QPSK):4, (200,QPSK):7, (200,16QAM):4, (300,16QAM):6} with the
  // 100+100 -> 200G-16QAM aggregation rule and same-type XOR rules for every
  // entry. The QPSK split (4 and 7) makes two unaggregated channels total 11
  // slices, the width the combined studies start from.
  static TransceiverTable default_table();

  int slices_for(int rate_gbps, const std::string& format) const;
  bool has_entry(int rate_gbps, const std::string& format) const;

  // Cheapest (fewest slices) format for a rate; ties break by format name.
  std::optional<RateFormat> cheapest_format(int rate_gbps) const;

  const ComboRule* find_aggregation_rule(const RateFormat& x, const RateFormat& y) const;
  const ComboRule* find_xor_rule(const RateFormat& x, const RateFormat& y) const;

  // Rules whose input rates match {ra, rb} as a multiset, in deterministic
  // order. Used to enumerate the format choices open to a demand pair.
  std::vector<const ComboRule*> aggregation_rules_for_rates(int ra, int rb) const;
  std::vector<const ComboRule*> xor_rules_for_rates(int ra, int rb) const;

  const std::map<RateFormat, int>& entries() const { return entries_; }
  const std::vector<ComboRule>& aggregation_rules() const { return aggregation_rules_; }
  const std::vector<ComboRule>& xor_rules() const { return xor_rules_; }

  // Returns a copy with extra rules added (fixture tables extend the default).
  TransceiverTable with_rules(std::vector<ComboRule> extra_aggregation,
                              std::vector<ComboRule> extra_xor) const;

  std::string to_json(int indent = 2) const;

 private:
  std::map<RateFormat, int> entries_;
  std::vector<ComboRule> aggregation_rules_;
  std::vector<ComboRule> xor_rules_;
};

TransceiverTable load_transceiver_table(const std::string& json_document);
TransceiverTable load_transceiver_table_file(const std::string& path);

}  // namespace lightplan
