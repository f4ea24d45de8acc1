#ifndef LOGCONC_CHARPOLY_HPP
#define LOGCONC_CHARPOLY_HPP

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "logconc/ball.hpp"
#include "logconc/exact_sequences.hpp"

namespace logconc {

/// Monic f(x) = x^k - alpha_1 x^{k-1} - ... - alpha_k with exact coefficients,
/// stored leading coefficient first.
class CharPoly {
 public:
  explicit CharPoly(std::vector<mpq_class> coefficients);

  std::size_t degree() const noexcept { return coefficients_.size() - 1; }
  const std::vector<mpq_class>& coefficients() const noexcept { return coefficients_; }

  mpq_class evaluate(const mpq_class& x) const;
  Ball evaluate(const Ball& x) const;
  ComplexBall evaluate(const ComplexBall& x) const;
  Ball derivative(const Ball& x) const;
  ComplexBall derivative(const ComplexBall& x) const;

  std::string to_string() const;

 private:
  std::vector<mpq_class> coefficients_;
};

CharPoly build_charpoly(const RecurrenceSpec& spec);

/// Sign changes in the coefficient sequence (zeros skipped).
int descartes_positive_count(const CharPoly& poly);

enum class HypothesisStatus { holds, reducible, unknown };

struct DominantZeroHypotheses {
  HypothesisStatus status = HypothesisStatus::unknown;
  std::size_t support_gcd = 1;
};

std::string hypotheses_name(const DominantZeroHypotheses& h);

/// Sufficient conditions for a dominant zero: nonnegative coefficients with
/// support gcd 1. Reducibility is reported first; negative coefficients give
/// `unknown` and dominance must then be established numerically.
DominantZeroHypotheses dominant_zero_hypotheses(const RecurrenceSpec& spec);

/// Encloses the unique positive root by exact-sign bisection on dyadic points.
/// The returned radius is at most 2^-precision times the midpoint.
Ball isolate_dominant_root(const CharPoly& poly, Precision precision);

/// Certified enclosures of all k roots. Each box contains exactly one root and
/// the boxes are pairwise disjoint; roots proven real have an exact zero
/// imaginary part. Throws cluster-unresolved when that cannot be achieved.
std::vector<ComplexBall> all_roots(const CharPoly& poly, Precision precision);

/// c_i = 1 / prod_{j != i}(lambda_i - lambda_j), intersected with 1 / f'(lambda_i).
std::vector<ComplexBall> closed_form_coeffs(std::span<const ComplexBall> roots, const CharPoly& poly);

struct RootProfile {
  Ball dominant_root;                     // lambda_1, real
  std::vector<ComplexBall> roots;         // lambda_1 first, then by decreasing modulus
  std::vector<ComplexBall> coefficients;  // c_i aligned with roots
  Ball derivative_at_dominant;            // f'(lambda_1)
  Ball dominance_ratio;                   // max_{i>=2} |lambda_i| / lambda_1
  bool distinct = false;
  Precision precision = kDefaultPrecision;

  const Ball& c1() const { return coefficients.front().re; }
  std::size_t order() const { return roots.size(); }
};

struct NumericOptions {
  Precision precision = kDefaultPrecision;
  Precision precision_cap = 4096;
};

/// One attempt at a fixed precision. Throws `unresolved` (or
/// `cluster-unresolved`) when more precision could help and `not-dominant`
/// when the enclosures prove there is no positive dominant zero.
RootProfile root_profile_at(const RecurrenceSpec& spec, Precision precision);

/// Doubles the working precision up to the cap while comparisons stay unresolved.
RootProfile compute_root_profile(const RecurrenceSpec& spec, const NumericOptions& options = {});

/// max over 0 <= n <= n_hi of |a_n - sum_i c_i lambda_i^n|.
Ball residual_check(const RecurrenceSpec& spec, const RootProfile& profile, std::size_t n_hi);

/// e_n = a_n / (c_1 lambda_1^n) - 1.
Ball e_n_value(const mpq_class& term, const RootProfile& profile, std::size_t n);
Ball e_n_value(const RecurrenceSpec& spec, const RootProfile& profile, std::size_t n);

/// |e_n| <= scale * ratio^n for all n >= start.
struct TailBound {
  Ball scale;  // C = (k-1) max_{i>=2} |c_i| / c_1
  Ball ratio;  // r = max_{i>=2} |lambda_i| / lambda_1
  std::size_t start = 0;

  Ball bound_at(std::size_t n) const { return scale * pow(ratio, n); }
};

TailBound tail_constants(const RootProfile& profile, std::size_t k);

/// m(k) = min_{i>=2} |prod_{j != i}(lambda_i - lambda_j)|.
Ball separation_min(const RootProfile& profile);

}  // namespace logconc

#endif  // LOGCONC_CHARPOLY_HPP
