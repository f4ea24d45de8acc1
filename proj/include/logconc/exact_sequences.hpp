#ifndef LOGCONC_EXACT_SEQUENCES_HPP
#define LOGCONC_EXACT_SEQUENCES_HPP

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace logconc {

/// Parses "3", "-3/2" or "0.25" into an exact rational.
mpq_class parse_rational(std::string_view text);
std::string rational_string(const mpq_class& value);

struct FamilyTag {
  std::string name;
  int parameter = 0;

  friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

/// a_n = alpha_1 a_{n-1} + ... + alpha_k a_{n-k} for n >= k, with the first k
/// terms given explicitly. The default start is 0, ..., 0, 1.
class RecurrenceSpec {
 public:
  RecurrenceSpec(std::vector<mpq_class> coefficients, std::vector<mpq_class> initial_values,
                 std::optional<FamilyTag> family = std::nullopt);

  static RecurrenceSpec with_default_start(std::vector<mpq_class> coefficients,
                                           std::optional<FamilyTag> family = std::nullopt);
  static std::vector<mpq_class> default_initial_values(std::size_t order);

  std::size_t order() const noexcept { return coefficients_.size(); }
  // alpha_1 .. alpha_k, stored zero-based.
  const std::vector<mpq_class>& coefficients() const noexcept { return coefficients_; }
  // 1-based access matching the usual alpha_i notation.
  const mpq_class& alpha(std::size_t i) const { return coefficients_.at(i - 1); }
  const std::vector<mpq_class>& initial_values() const noexcept { return initial_values_; }
  const std::optional<FamilyTag>& family() const noexcept { return family_; }

  bool has_default_start() const;
  bool is_integral() const;
  bool has_nonnegative_coefficients() const;

  friend bool operator==(const RecurrenceSpec&, const RecurrenceSpec&) = default;

 private:
  std::vector<mpq_class> coefficients_;
  std::vector<mpq_class> initial_values_;
  std::optional<FamilyTag> family_;
};

/// Exact terms a_{first}..a_{last} of a recurrence.
class TermWindow {
 public:
  TermWindow(RecurrenceSpec spec, std::size_t first, std::vector<mpq_class> terms);

  const RecurrenceSpec& spec() const noexcept { return spec_; }
  std::size_t first_index() const noexcept { return first_; }
  std::size_t last_index() const noexcept { return first_ + terms_.size() - 1; }
  bool contains(std::size_t n) const noexcept { return n >= first_ && n <= last_index(); }
  const mpq_class& operator[](std::size_t n) const;
  std::span<const mpq_class> terms() const noexcept { return terms_; }

 private:
  RecurrenceSpec spec_;
  std::size_t first_;
  std::vector<mpq_class> terms_;
};

TermWindow generate_terms(const RecurrenceSpec& spec, std::size_t n_max);

/// Weighted count of tilings of a strip of length n-k+1 by tiles of length at
/// most k, where a tile of length i has weight alpha_i. Enumerates every
/// composition explicitly; meant as an independent check of generate_terms
/// for lengths up to about 25.
mpq_class tilings_oracle(const RecurrenceSpec& spec, std::size_t n);

/// gcd of the indices i with alpha_i != 0. Divides k because alpha_k != 0.
std::size_t support_gcd(const RecurrenceSpec& spec);

/// For support gcd d > 1: the order-k/d recurrence satisfied by b_m = a_{dm+d-1}.
RecurrenceSpec reduce_support(const RecurrenceSpec& spec);

inline constexpr std::size_t kDefaultExactIndexCap = 200;

/// R_n > R_{n+1} with R_n = a_n^{1/n} / a_{n-1}^{1/(n-1)}, decided through
///   a_n^{2(n^2-1)} > a_{n-1}^{n(n+1)} a_{n+1}^{n(n-1)}
/// in exact arithmetic. Refuses n above `index_cap`; the integers involved
/// grow like n^3 bits.
bool ratio_decreasing_exact(const TermWindow& window, std::size_t n,
                            std::size_t index_cap = kDefaultExactIndexCap);

/// (n+1)-th root of a_{n+1} > n-th root of a_n, decided as a_{n+1}^n > a_n^{n+1}.
bool nthroot_increasing_exact(const TermWindow& window, std::size_t n);

enum class Verdict { holds, fails, undefined };

std::string_view verdict_name(Verdict verdict);

/// Tri-state wrappers: indices where a ratio is not defined (n too small or a
/// nonpositive term involved) are reported as undefined instead of raising.
Verdict ratio_decrease_verdict(const TermWindow& window, std::size_t n,
                               std::size_t index_cap = kDefaultExactIndexCap);
Verdict nthroot_increase_verdict(const TermWindow& window, std::size_t n);

}  // namespace logconc

#endif  // LOGCONC_EXACT_SEQUENCES_HPP
