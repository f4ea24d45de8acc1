#include "logconc/exact_sequences.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "logconc/error.hpp"

namespace logconc {

namespace {

bool all_digits(std::string_view text) {
  return !text.empty() &&
         std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void bad_rational(std::string_view text) {
  throw Error(ErrorCode::parse_error, "malformed rational '" + std::string(text) + "'");
}

[[noreturn]] void nonpositive(std::size_t index) {
  throw Error(ErrorCode::nonpositive_term,
              "nonpositive-term: a_" + std::to_string(index) + " is not strictly positive");
}

const mpq_class& positive_term(const TermWindow& window, std::size_t index) {
  const mpq_class& value = window[index];
  if (sgn(value) <= 0) nonpositive(index);
  return value;
}

mpz_class power(const mpz_class& base, unsigned long exponent) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

// p_a^ea * q_b^eb * ... style comparison of products of rational powers,
// cross-multiplied so that only nonnegative integers are compared.
struct PowerTerm {
  const mpq_class* value;
  unsigned long exponent;
};

bool product_greater(std::initializer_list<PowerTerm> lhs, std::initializer_list<PowerTerm> rhs) {
  mpz_class left = 1;
  mpz_class right = 1;
  for (const auto& term : lhs) {
    left *= power(term.value->get_num(), term.exponent);
    if (term.value->get_den() != 1) right *= power(term.value->get_den(), term.exponent);
  }
  for (const auto& term : rhs) {
    right *= power(term.value->get_num(), term.exponent);
    if (term.value->get_den() != 1) left *= power(term.value->get_den(), term.exponent);
  }
  return left > right;
}

void enumerate_tilings(const RecurrenceSpec& spec, std::size_t remaining, const mpq_class& weight,
                       mpq_class& total) {
  if (remaining == 0) {
    total += weight;
    return;
  }
  const std::size_t longest = std::min(remaining, spec.order());
  for (std::size_t part = 1; part <= longest; ++part) {
    const mpq_class& alpha = spec.alpha(part);
    if (alpha == 0) continue;
    enumerate_tilings(spec, remaining - part, weight * alpha, total);
  }
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  mpq_class value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_rational(text);
    mpz_class denominator(std::string(den), 10);
    if (denominator == 0) bad_rational(text);
    value = mpq_class(mpz_class(std::string(num), 10), denominator);
    value.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view fraction = body.substr(dot + 1);
    if ((whole.empty() && fraction.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!fraction.empty() && !all_digits(fraction))) {
      bad_rational(text);
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fraction.size());
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(fraction), 10);
    value = mpq_class(digits, scale);
    value.canonicalize();
  } else {
    if (!all_digits(body)) bad_rational(text);
    value = mpq_class(mpz_class(std::string(body), 10));
  }
  return negative ? mpq_class(-value) : value;
}

std::string rational_string(const mpq_class& value) { return value.get_str(); }

RecurrenceSpec::RecurrenceSpec(std::vector<mpq_class> coefficients, std::vector<mpq_class> initial_values,
                               std::optional<FamilyTag> family)
    : coefficients_(std::move(coefficients)),
      initial_values_(std::move(initial_values)),
      family_(std::move(family)) {
  if (coefficients_.size() < 2) {
    throw Error(ErrorCode::invalid_spec, "recurrence order must be at least 2");
  }
  if (coefficients_.back() == 0) {
    throw Error(ErrorCode::invalid_spec, "alpha_k must be nonzero");
  }
  if (initial_values_.size() != coefficients_.size()) {
    throw Error(ErrorCode::invalid_spec, "expected " + std::to_string(coefficients_.size()) +
                                             " initial values, got " +
                                             std::to_string(initial_values_.size()));
  }
  for (auto& c : coefficients_) c.canonicalize();
  for (auto& v : initial_values_) v.canonicalize();
}

RecurrenceSpec RecurrenceSpec::with_default_start(std::vector<mpq_class> coefficients,
                                                  std::optional<FamilyTag> family) {
  auto start = default_initial_values(coefficients.size());
  return RecurrenceSpec(std::move(coefficients), std::move(start), std::move(family));
}

std::vector<mpq_class> RecurrenceSpec::default_initial_values(std::size_t order) {
  std::vector<mpq_class> values(order, mpq_class(0));
  if (order > 0) values.back() = 1;
  return values;
}

bool RecurrenceSpec::has_default_start() const {
  return initial_values_ == default_initial_values(order());
}

bool RecurrenceSpec::is_integral() const {
  auto integral = [](const mpq_class& q) { return q.get_den() == 1; };
  return std::all_of(coefficients_.begin(), coefficients_.end(), integral) &&
         std::all_of(initial_values_.begin(), initial_values_.end(), integral);
}

bool RecurrenceSpec::has_nonnegative_coefficients() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(),
                     [](const mpq_class& q) { return sgn(q) >= 0; });
}

TermWindow::TermWindow(RecurrenceSpec spec, std::size_t first, std::vector<mpq_class> terms)
    : spec_(std::move(spec)), first_(first), terms_(std::move(terms)) {
  if (terms_.empty()) throw Error(ErrorCode::invalid_spec, "term window must not be empty");
}

const mpq_class& TermWindow::operator[](std::size_t n) const {
  if (!contains(n)) {
    throw std::out_of_range("index " + std::to_string(n) + " outside term window [" +
                            std::to_string(first_) + ", " + std::to_string(last_index()) + "]");
  }
  return terms_[n - first_];
}

TermWindow generate_terms(const RecurrenceSpec& spec, std::size_t n_max) {
  const std::size_t k = spec.order();
  if (n_max + 1 < k) {
    throw Error(ErrorCode::invalid_spec, "n_max must be at least k-1");
  }
  std::vector<mpq_class> terms(spec.initial_values());
  terms.reserve(n_max + 1);
  for (std::size_t n = k; n <= n_max; ++n) {
    mpq_class next = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (spec.alpha(i) != 0) next += spec.alpha(i) * terms[n - i];
    }
    terms.push_back(std::move(next));
  }
  return TermWindow(spec, 0, std::move(terms));
}

mpq_class tilings_oracle(const RecurrenceSpec& spec, std::size_t n) {
  if (!spec.has_default_start()) {
    throw Error(ErrorCode::nondefault_initial_values,
                "the tiling interpretation needs the default start 0,...,0,1");
  }
  if (n + 1 < spec.order()) {
    throw Error(ErrorCode::invalid_spec, "tilings_oracle needs n >= k-1");
  }
  mpq_class total = 0;
  enumerate_tilings(spec, n + 1 - spec.order(), mpq_class(1), total);
  return total;
}

std::size_t support_gcd(const RecurrenceSpec& spec) {
  std::size_t d = 0;
  for (std::size_t i = 1; i <= spec.order(); ++i) {
    if (spec.alpha(i) != 0) d = std::gcd(d, i);
  }
  return d;
}

RecurrenceSpec reduce_support(const RecurrenceSpec& spec) {
  if (!spec.has_default_start()) {
    throw Error(ErrorCode::nondefault_initial_values, "reduction needs the default start 0,...,0,1");
  }
  const std::size_t d = support_gcd(spec);
  if (d == 1) throw Error(ErrorCode::irreducible, "support gcd is 1; nothing to reduce");
  std::vector<mpq_class> reduced;
  for (std::size_t i = d; i <= spec.order(); i += d) reduced.push_back(spec.alpha(i));
  return RecurrenceSpec::with_default_start(std::move(reduced));
}

bool ratio_decreasing_exact(const TermWindow& window, std::size_t n, std::size_t index_cap) {
  if (n < 2) throw Error(ErrorCode::invalid_spec, "R_n comparison needs n >= 2");
  if (n > index_cap) {
    throw Error(ErrorCode::exact_check_too_large,
                "exact-check-too-large: n=" + std::to_string(n) + " exceeds cap " + std::to_string(index_cap));
  }
  const mpq_class& previous = positive_term(window, n - 1);
  const mpq_class& current = positive_term(window, n);
  const mpq_class& next = positive_term(window, n + 1);
  const unsigned long m = n;
  return product_greater({{&current, 2 * (m * m - 1)}},
                         {{&previous, m * (m + 1)}, {&next, m * (m - 1)}});
}

bool nthroot_increasing_exact(const TermWindow& window, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::invalid_spec, "root comparison needs n >= 1");
  const mpq_class& current = positive_term(window, n);
  const mpq_class& next = positive_term(window, n + 1);
  return product_greater({{&next, n}}, {{&current, n + 1}});
}

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::undefined: return "undefined";
  }
  return "undefined";
}

Verdict ratio_decrease_verdict(const TermWindow& window, std::size_t n, std::size_t index_cap) {
  if (n < 2) return Verdict::undefined;
  for (std::size_t i = n - 1; i <= n + 1; ++i) {
    if (sgn(window[i]) <= 0) return Verdict::undefined;
  }
  return ratio_decreasing_exact(window, n, index_cap) ? Verdict::holds : Verdict::fails;
}

Verdict nthroot_increase_verdict(const TermWindow& window, std::size_t n) {
  if (n < 1 || sgn(window[n]) <= 0 || sgn(window[n + 1]) <= 0) return Verdict::undefined;
  return nthroot_increasing_exact(window, n) ? Verdict::holds : Verdict::fails;
}

}  // namespace logconc
