#include "elroc/error.hpp"

namespace elroc {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::input: return "input";
    case ErrorCategory::validation: return "validation";
    case ErrorCategory::domain: return "domain";
    case ErrorCategory::ordering_infeasible: return "ordering_infeasible";
    case ErrorCategory::degenerate_scale: return "degenerate_scale";
    case ErrorCategory::empty_interval: return "empty_interval";
    case ErrorCategory::boundary_estimate: return "boundary_estimate";
    case ErrorCategory::convention_mismatch: return "convention_mismatch";
  }
  return "unknown";
}

}  // namespace elroc
