#ifndef LOGCONC_REPORT_HPP
#define LOGCONC_REPORT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "logconc/ball.hpp"
#include "logconc/catalog.hpp"
#include "logconc/certifier.hpp"
#include "logconc/charpoly.hpp"
#include "logconc/error.hpp"
#include "logconc/exact_sequences.hpp"

namespace logconc {

inline constexpr int kSchemaVersion = 1;

struct ReportError {
  ErrorCode code = ErrorCode::parse_error;
  std::string message;
};

struct TermsResult {
  std::size_t first = 0;
  std::vector<mpq_class> terms;
};

/// Filled only when a dominant zero was certified.
struct DominanceSummary {
  Ball lambda1;
  Ball c1;
  Ball derivative;  // f'(lambda_1)
  Ball ratio;       // r
  Ball scale;       // C
  Ball separation;  // m(k)
};

struct RootsResult {
  std::string polynomial;
  DominantZeroHypotheses hypotheses;
  Precision precision = kDefaultPrecision;
  std::vector<ComplexBall> roots;
  std::vector<ComplexBall> coefficients;
  std::optional<DominanceSummary> dominance;
  std::optional<ReportError> dominance_issue;
};

struct ReduceResult {
  std::size_t support_gcd = 1;
  RecurrenceSpec reduced;
  std::size_t verified_through = 0;  // b_m = a_{dm+d-1} checked for m <= this
};

struct ScanRow {
  int k = 2;
  bool certified = false;
  std::optional<ReportError> failure;
  std::optional<Ball> lambda1, c1, ratio, scale, separation;
  std::optional<std::size_t> n_tail, n_min;
  double runtime_ms = 0.0;
};

struct ScanResult {
  FamilyKind kind = FamilyKind::k_fibonacci;
  int k_lo = 2;
  int k_hi = 2;
  std::vector<ScanRow> rows;
};

using ReportResults = std::variant<std::monostate, TermsResult, RootsResult, Certificate, ReduceResult, ScanResult>;

/// Versioned output of every command. Serialization is deterministic and
/// parse(serialize(d)) serializes back to the same bytes.
struct ReportDocument {
  int schema_version = kSchemaVersion;
  std::vector<std::string> command;
  std::string timestamp;
  std::optional<RecurrenceSpec> spec;
  std::vector<std::string> warnings;
  std::optional<ReportError> error;
  ReportResults results;
};

std::string serialize_report(const ReportDocument& doc);
ReportDocument parse_report(std::string_view text);

/// UTC, ISO 8601, second resolution.
std::string utc_timestamp();

}  // namespace logconc

#endif  // LOGCONC_REPORT_HPP
