#ifndef LOGCONC_CERTIFIER_HPP
#define LOGCONC_CERTIFIER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "logconc/ball.hpp"
#include "logconc/charpoly.hpp"
#include "logconc/error.hpp"
#include "logconc/exact_sequences.hpp"

namespace logconc {

inline constexpr std::size_t kDefaultTailCap = 1'000'000;

struct CertifyOptions {
  NumericOptions numeric;
  std::size_t prefix_cap = kDefaultExactIndexCap;
  std::size_t tail_cap = kDefaultTailCap;
  bool want_increasing = false;
};

/// f'(lambda_1) > 1, decided on enclosures. Throws `unresolved` if the
/// enclosure of f'(lambda_1) contains 1.
bool dominance_condition(const RootProfile& profile);

/// The quantities compared at the tail index, kept so a reader can recheck
/// them. With M_n = C r^n, the ratio tail needs
///   (A) M_N < 1/2 and M_N + M_N^2 < -log c_1 / (3(N^2-1)),
///   (B) M_{N-1} < -2 log c_1 / (3N(N+1)) and M_{N-1} < 1,
///   (C) r <= (N^2-1)/(N^2+2N),
/// and the root tail needs M_N < 1/2, (2N+2)(M_N + M_N^2) < -log c_1 and
/// r <= (N+1)/(N+2).
struct TailCertificate {
  std::size_t index = 0;
  Ball m_at;         // M_N
  Ball m_before;     // M_{N-1}
  Ball lhs_a;        // M_N + M_N^2, times 2N+2 for the root tail
  Ball rhs_a;
  Ball rhs_b;        // unused by the root tail
  Ball propagation;  // the rational bound r must not exceed
};

/// Smallest N >= 2 satisfying (A), (B), (C) above. Unresolved comparisons
/// count as not satisfied. Throws `no-threshold` past `cap` or when r >= 1.
TailCertificate tail_threshold(const Ball& c1, const TailBound& bound, std::size_t cap = kDefaultTailCap);
/// Same search for eventual increase of the n-th root.
TailCertificate increasing_tail_threshold(const Ball& c1, const TailBound& bound,
                                          std::size_t cap = kDefaultTailCap);

/// ratio_decreasing_exact for every n in [n_lo, n_hi].
std::vector<bool> verify_prefix(const RecurrenceSpec& spec, std::size_t n_lo, std::size_t n_hi,
                                std::size_t index_cap = kDefaultExactIndexCap);

enum class CertificateStatus { certified, failed };

/// An exact scan of [first_checked, tail.index] glued to an analytic tail.
struct PhaseResult {
  std::optional<TailCertificate> tail;
  std::size_t first_checked = 0;
  std::vector<Verdict> verdicts;        // one per n in [first_checked, tail.index]
  std::optional<std::size_t> n_first;   // first index with a defined verdict
  std::optional<std::size_t> minimal;   // N_min or increase_from
};

struct Certificate {
  RecurrenceSpec spec;
  std::optional<RootProfile> profile;
  std::optional<TailBound> bound;
  PhaseResult decrease;
  std::optional<PhaseResult> increase;
  CertificateStatus status = CertificateStatus::failed;
  std::optional<ErrorCode> failure;
  std::string reason;
  Precision precision = kDefaultPrecision;
  std::size_t prefix_cap = kDefaultExactIndexCap;

  explicit Certificate(RecurrenceSpec s) : spec(std::move(s)) {}
  bool certified() const { return status == CertificateStatus::certified; }
};

/// Minimal N with R_n > R_{n+1} for all n >= N. Never throws for numeric or
/// scope problems: those end up in `status`, `failure` and `reason`, with
/// whatever was computed before the failure kept.
Certificate find_min_N(const RecurrenceSpec& spec, const CertifyOptions& options = {});

/// Minimal n_0 with the (n+1)-th root of a_{n+1} above the n-th root of a_n
/// for all n >= n_0. Throws the failure code of the underlying certificate.
std::size_t certify_increasing_from(const RecurrenceSpec& spec, const CertifyOptions& options = {});

}  // namespace logconc

#endif  // LOGCONC_CERTIFIER_HPP
