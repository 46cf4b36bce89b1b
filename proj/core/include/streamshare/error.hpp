#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace streamshare {

enum class ErrorKind {
  validation,
  undefined_division,
  zero_issue_total,
  invalid_weight_function,
  stage_feasibility,
  zero_index,
  invalid_weight,
  invalid_probability_system,
  domain,
  property_violation,
  positivity_violation,
  invalid_reallocation,
  parse,
  unknown_method,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (and the CLI
// exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace streamshare
