#include "logconc/error.hpp"

namespace logconc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::invalid_spec: return "invalid-spec";
    case ErrorCode::nondefault_initial_values: return "nondefault-initial-values";
    case ErrorCode::nonpositive_term: return "nonpositive-term";
    case ErrorCode::exact_check_too_large: return "exact-check-too-large";
    case ErrorCode::irreducible: return "irreducible";
    case ErrorCode::reducible: return "reducible";
    case ErrorCode::no_sign_change: return "no-sign-change";
    case ErrorCode::cluster_unresolved: return "cluster-unresolved";
    case ErrorCode::distinctness_required: return "distinctness-required";
    case ErrorCode::not_dominant: return "not-dominant";
    case ErrorCode::dominance_condition_false: return "dominance-condition-false";
    case ErrorCode::unresolved: return "unresolved";
    case ErrorCode::no_threshold: return "no-threshold";
    case ErrorCode::precision_failure: return "precision-failure";
  }
  return "unknown";
}

ErrorCode parse_error_code(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(ErrorCode::precision_failure); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    if (error_code_name(code) == name) return code;
  }
  throw Error(ErrorCode::parse_error, "unknown error code '" + std::string(name) + "'");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error:
    case ErrorCode::invalid_spec:
    case ErrorCode::nondefault_initial_values:
      return 2;
    case ErrorCode::irreducible:
    case ErrorCode::reducible:
    case ErrorCode::not_dominant:
    case ErrorCode::dominance_condition_false:
      return 4;
    default:
      return 3;
  }
}

}  // namespace logconc
