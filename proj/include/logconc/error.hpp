#ifndef LOGCONC_ERROR_HPP
#define LOGCONC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace logconc {

/// Failure taxonomy shared by the library and the command-line front end.
/// Each code has a stable kebab-case name that appears in reports.
enum class ErrorCode {
  parse_error,
  invalid_spec,
  nondefault_initial_values,
  nonpositive_term,
  exact_check_too_large,
  irreducible,
  reducible,
  no_sign_change,
  cluster_unresolved,
  distinctness_required,
  not_dominant,
  dominance_condition_false,
  unresolved,
  no_threshold,
  precision_failure,
};

std::string_view error_code_name(ErrorCode code);
// Inverse of error_code_name; throws parse-error on an unknown name.
ErrorCode parse_error_code(std::string_view name);

/// Errors in the parse/spec class exit with 2, numeric failures with 3 and
/// method-scope refusals with 4.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace logconc

#endif  // LOGCONC_ERROR_HPP
