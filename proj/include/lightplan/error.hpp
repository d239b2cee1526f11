#pragma once

#include <stdexcept>
#include <string>

namespace lightplan {

// Failure categories raised across the library. Each error carries the
// offending element (node, link, demand, rule, ...) so callers can report
// precisely which part of the input broke a contract.
enum class Errc {
  parse_error,
  dangling_endpoint,
  duplicate_link,
  disconnected_graph,
  too_few_nodes,
  unknown_entry,
  missing_rule,
  unequal_rates,
  bad_route,
  disjointness_violation,
  coverage_violation,
  no_path,
  infeasible_demand,
  instance_too_large,
  invalid_argument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string element, const std::string& message);

  Errc code() const noexcept { return code_; }
  const std::string& element() const noexcept { return element_; }

 private:
  Errc code_;
  std::string element_;
};

[[noreturn]] void fail(Errc code, const std::string& element,
                       const std::string& message);

}  // namespace lightplan
