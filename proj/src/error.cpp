#include "lightplan/error.hpp"

namespace lightplan {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::parse_error: return "parse_error";
    case Errc::dangling_endpoint: return "dangling_endpoint";
    case Errc::duplicate_link: return "duplicate_link";
    case Errc::disconnected_graph: return "disconnected_graph";
    case Errc::too_few_nodes: return "too_few_nodes";
    case Errc::unknown_entry: return "unknown_entry";
    case Errc::missing_rule: return "missing_rule";
    case Errc::unequal_rates: return "unequal_rates";
    case Errc::bad_route: return "bad_route";
    case Errc::disjointness_violation: return "disjointness_violation";
    case Errc::coverage_violation: return "coverage_violation";
    case Errc::no_path: return "no_path";
    case Errc::infeasible_demand: return "infeasible_demand";
    case Errc::instance_too_large: return "instance_too_large";
    case Errc::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

Error::Error(Errc code, std::string element, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code),
      element_(std::move(element)) {}

void fail(Errc code, const std::string& element, const std::string& message) {
  throw Error(code, element, message);
}

}  // namespace lightplan
