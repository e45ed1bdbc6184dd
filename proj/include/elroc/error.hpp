#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elroc {

// Failure modes that callers (the CLI, the simulation harness) need to tell
// apart. The numeric values double as CLI exit codes.
enum class ErrorCategory {
  input = 2,                // unreadable or malformed input data
  validation = 3,           // parameters violate an operation's preconditions
  domain = 4,               // thresholds outside the data brackets
  ordering_infeasible = 5,  // bootstrap could not find mean-ordered resamples
  degenerate_scale = 6,     // bootstrap median is zero or not finite
  empty_interval = 7,
  boundary_estimate = 8,    // VUS estimate is exactly 0 or 1
  convention_mismatch = 9,  // scenario truth disagrees with the reference table
};

std::string_view to_string(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message,
        std::string context = {})
      : std::runtime_error(message),
        category_(category),
        context_(std::move(context)) {}

  ErrorCategory category() const { return category_; }
  const std::string& context() const { return context_; }

 private:
  ErrorCategory category_;
  std::string context_;
};

}  // namespace elroc
