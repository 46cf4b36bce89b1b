#include "streamshare/error.hpp"

namespace streamshare {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::undefined_division: return "undefined-division";
    case ErrorKind::zero_issue_total: return "zero-issue-total";
    case ErrorKind::invalid_weight_function: return "invalid-weight-function";
    case ErrorKind::stage_feasibility: return "stage-feasibility";
    case ErrorKind::zero_index: return "zero-index";
    case ErrorKind::invalid_weight: return "invalid-weight";
    case ErrorKind::invalid_probability_system: return "invalid-probability-system";
    case ErrorKind::domain: return "domain";
    case ErrorKind::property_violation: return "property-violation";
    case ErrorKind::positivity_violation: return "positivity-violation";
    case ErrorKind::invalid_reallocation: return "invalid-reallocation";
    case ErrorKind::parse: return "parse";
    case ErrorKind::unknown_method: return "unknown-method";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace streamshare
