#include "logconc/certifier.hpp"

#include <algorithm>
#include <utility>

namespace logconc {

namespace {

bool certainly_le(const Ball& a, const Ball& b) { return mpfr_cmp(a.upper().get(), b.lower().get()) <= 0; }

Ball rational_ball(unsigned long num, unsigned long den, Precision prec) {
  return Ball::from_rational(mpq_class(mpz_class(num), mpz_class(den)), prec);
}

// -log c_1 after checking 0 < c_1 < 1.
Ball negative_log(const Ball& c1) {
  if (!c1.is_positive()) throw Error(ErrorCode::unresolved, "unresolved: c_1 is not certified positive");
  const Ball one = Ball::from_int(1, c1.precision());
  if (!definitely_less(c1, one)) {
    if (overlaps(c1, one)) throw Error(ErrorCode::unresolved, "unresolved: c_1 straddles 1");
    throw Error(ErrorCode::dominance_condition_false, "dominance-condition-false: c_1 >= 1");
  }
  return -log(c1);
}

void require_contracting(const Ball& ratio, const Ball& cap_bound, std::size_t cap) {
  const Ball one = Ball::from_int(1, ratio.precision());
  if (!definitely_less(ratio, one)) {
    throw Error(ErrorCode::no_threshold, "no-threshold: dominance ratio r is not certified below 1");
  }
  if (!certainly_le(ratio, cap_bound)) {
    throw Error(ErrorCode::no_threshold,
                "no-threshold: propagation needs r below a bound only reached past N=" + std::to_string(cap));
  }
}

[[noreturn]] void past_cap(std::size_t cap) {
  throw Error(ErrorCode::no_threshold, "no-threshold: no tail index up to " + std::to_string(cap));
}

// Index of the last verdict other than `holds`, plus one; the first index if
// every verdict holds.
PhaseResult summarize(std::size_t first, std::vector<Verdict> verdicts, TailCertificate tail) {
  PhaseResult out;
  out.first_checked = first;
  std::size_t minimal = first;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    if (!out.n_first && verdicts[i] != Verdict::undefined) out.n_first = first + i;
    if (verdicts[i] != Verdict::holds) minimal = first + i + 1;
  }
  out.verdicts = std::move(verdicts);
  out.minimal = minimal;
  out.tail = std::move(tail);
  return out;
}

void check_scope(const RecurrenceSpec& spec) {
  const auto hypotheses = dominant_zero_hypotheses(spec);
  if (hypotheses.status == HypothesisStatus::reducible) {
    throw Error(ErrorCode::reducible,
                "reducible; run reduce first (support gcd " + std::to_string(hypotheses.support_gcd) + ")");
  }
  if (!spec.has_default_start()) {
    throw Error(ErrorCode::nondefault_initial_values,
                "nondefault-initial-values: the closed form c_i = 1/f'(lambda_i) needs the start 0,...,0,1");
  }
}

// Root profile at the lowest precision where f'(lambda_1) > 1 is decided.
void numeric_stage(Certificate& cert, const CertifyOptions& options) {
  NumericOptions numeric = options.numeric;
  for (;;) {
    cert.profile = compute_root_profile(cert.spec, numeric);
    cert.precision = cert.profile->precision;
    try {
      if (!dominance_condition(*cert.profile)) {
        throw Error(ErrorCode::dominance_condition_false, "dominance-condition-false: f'(lambda_1) <= 1");
      }
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::unresolved || cert.precision * 2 > numeric.precision_cap) throw;
      numeric.precision = cert.precision * 2;
    }
  }
  cert.bound = tail_constants(*cert.profile, cert.spec.order());
}

// The tail is recorded before the prefix is attempted so that it survives a
// refusal on size.
PhaseResult decrease_phase(Certificate& cert, const CertifyOptions& options) {
  TailCertificate tail = tail_threshold(cert.profile->c1(), *cert.bound, options.tail_cap);
  cert.decrease.tail = tail;
  if (tail.index > options.prefix_cap) {
    throw Error(ErrorCode::exact_check_too_large, "exact-check-too-large: tail index " + std::to_string(tail.index) +
                                                      " exceeds prefix cap " + std::to_string(options.prefix_cap));
  }
  const TermWindow window = generate_terms(cert.spec, tail.index + 1);
  std::vector<Verdict> verdicts;
  for (std::size_t n = 2; n <= tail.index; ++n) verdicts.push_back(ratio_decrease_verdict(window, n, options.prefix_cap));
  return summarize(2, std::move(verdicts), std::move(tail));
}

PhaseResult increase_phase(const Certificate& cert, const CertifyOptions& options) {
  TailCertificate tail = increasing_tail_threshold(cert.profile->c1(), *cert.bound, options.tail_cap);
  const TermWindow window = generate_terms(cert.spec, tail.index + 1);
  std::vector<Verdict> verdicts;
  for (std::size_t n = 1; n <= tail.index; ++n) verdicts.push_back(nthroot_increase_verdict(window, n));
  return summarize(1, std::move(verdicts), std::move(tail));
}

}  // namespace

bool dominance_condition(const RootProfile& profile) {
  const Ball& derivative = profile.derivative_at_dominant;
  const Ball one = Ball::from_int(1, derivative.precision());
  if (definitely_less(one, derivative)) return true;
  if (!overlaps(one, derivative)) return false;
  throw Error(ErrorCode::unresolved, "unresolved: f'(lambda_1) straddles 1");
}

TailCertificate tail_threshold(const Ball& c1, const TailBound& bound, std::size_t cap) {
  const Precision prec = c1.precision();
  const Ball neg_log_c1 = negative_log(c1);
  require_contracting(bound.ratio, rational_ball(cap * cap - 1, cap * cap + 2 * cap, prec), cap);
  const Ball half = rational_ball(1, 2, prec);
  const Ball one = Ball::from_int(1, prec);

  Ball m_before = bound.bound_at(1);
  for (std::size_t n = 2; n <= cap; ++n) {
    Ball m_at = m_before * bound.ratio;
    const unsigned long N = n;
    Ball propagation = rational_ball(N * N - 1, N * N + 2 * N, prec);
    if (certainly_le(bound.ratio, propagation) && definitely_less(m_at, half) && definitely_less(m_before, one)) {
      Ball lhs_a = m_at + sqr(m_at);
      Ball rhs_a = neg_log_c1 / Ball::from_integer(mpz_class(3) * (N * N - 1), prec);
      Ball rhs_b = neg_log_c1 * 2 / Ball::from_integer(mpz_class(3) * N * (N + 1), prec);
      if (definitely_less(lhs_a, rhs_a) && definitely_less(m_before, rhs_b)) {
        return {n, std::move(m_at), std::move(m_before), std::move(lhs_a), std::move(rhs_a), std::move(rhs_b),
                std::move(propagation)};
      }
    }
    m_before = std::move(m_at);
  }
  past_cap(cap);
}

TailCertificate increasing_tail_threshold(const Ball& c1, const TailBound& bound, std::size_t cap) {
  const Precision prec = c1.precision();
  const Ball neg_log_c1 = negative_log(c1);
  require_contracting(bound.ratio, rational_ball(cap + 1, cap + 2, prec), cap);
  const Ball half = rational_ball(1, 2, prec);

  Ball m_before = bound.bound_at(0);
  for (std::size_t n = 1; n <= cap; ++n) {
    Ball m_at = m_before * bound.ratio;
    Ball propagation = rational_ball(n + 1, n + 2, prec);
    if (certainly_le(bound.ratio, propagation) && definitely_less(m_at, half)) {
      Ball lhs = (m_at + sqr(m_at)) * static_cast<long>(2 * n + 2);
      if (definitely_less(lhs, neg_log_c1)) {
        return {n, std::move(m_at), std::move(m_before), std::move(lhs), neg_log_c1, Ball(prec),
                std::move(propagation)};
      }
    }
    m_before = std::move(m_at);
  }
  past_cap(cap);
}

std::vector<bool> verify_prefix(const RecurrenceSpec& spec, std::size_t n_lo, std::size_t n_hi,
                                std::size_t index_cap) {
  if (n_lo < 2 || n_hi < n_lo) throw Error(ErrorCode::invalid_spec, "prefix range must satisfy 2 <= n_lo <= n_hi");
  const TermWindow window = generate_terms(spec, std::max(n_hi + 1, spec.order() - 1));
  std::vector<bool> out;
  for (std::size_t n = n_lo; n <= n_hi; ++n) out.push_back(ratio_decreasing_exact(window, n, index_cap));
  return out;
}

Certificate find_min_N(const RecurrenceSpec& spec, const CertifyOptions& options) {
  Certificate cert(spec);
  cert.precision = options.numeric.precision;
  cert.prefix_cap = options.prefix_cap;
  try {
    check_scope(spec);
    numeric_stage(cert, options);
    cert.decrease = decrease_phase(cert, options);
    if (options.want_increasing) cert.increase = increase_phase(cert, options);
    cert.status = CertificateStatus::certified;
  } catch (const Error& e) {
    cert.failure = e.code();
    cert.reason = e.what();
  }
  return cert;
}

std::size_t certify_increasing_from(const RecurrenceSpec& spec, const CertifyOptions& options) {
  Certificate cert(spec);
  check_scope(spec);
  numeric_stage(cert, options);
  return *increase_phase(cert, options).minimal;
}

}  // namespace logconc
