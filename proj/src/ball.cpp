#include "logconc/ball.hpp"

#include <cstdlib>
#include <string>
#include <utility>

#include "logconc/error.hpp"

namespace logconc {

Mpfr::Mpfr(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

namespace {

// After an inexact round-to-nearest into p bits, |exact - mid| <= |mid| 2^-p.
void add_rounding_error(Mpfr& rad, const Mpfr& mid, int ternary) {
  if (ternary == 0) return;
  Mpfr err(kRadiusBits);
  mpfr_abs(err.get(), mid.get(), MPFR_RNDU);
  mpfr_mul_2si(err.get(), err.get(), -static_cast<long>(mid.precision()), MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), err.get(), MPFR_RNDU);
}

Mpfr abs_up(const Mpfr& x) {
  Mpfr out(kRadiusBits);
  mpfr_abs(out.get(), x.get(), MPFR_RNDU);
  return out;
}

Mpfr abs_down(const Mpfr& x) {
  Mpfr out(kRadiusBits);
  mpfr_abs(out.get(), x.get(), MPFR_RNDD);
  return out;
}

const Mpfr& max_of(const Mpfr& a, const Mpfr& b) { return mpfr_cmp(a.get(), b.get()) >= 0 ? a : b; }
const Mpfr& min_of(const Mpfr& a, const Mpfr& b) { return mpfr_cmp(a.get(), b.get()) <= 0 ? a : b; }

// |x - y| rounded into a radius-precision number, in either direction.
Mpfr distance_rounded(const Mpfr& x, const Mpfr& y, mpfr_rnd_t rnd) {
  Mpfr out(kRadiusBits);
  mpfr_sub(out.get(), max_of(x, y).get(), min_of(x, y).get(), rnd);
  return out;
}

Mpfr distance_up(const Mpfr& x, const Mpfr& y) { return distance_rounded(x, y, MPFR_RNDU); }
Mpfr distance_down(const Mpfr& x, const Mpfr& y) { return distance_rounded(x, y, MPFR_RNDD); }

std::string format_mpfr(mpfr_srcptr x, size_t digits, mpfr_rnd_t rnd) {
  if (mpfr_nan_p(x)) return "nan";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(x)) return "0";
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, digits, x, rnd);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();
  std::string out = sign + mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  out += "e" + std::to_string(static_cast<long>(exponent) - 1);
  return out;
}

Mpfr parse_mpfr(std::string_view text, Precision prec, int* ternary) {
  std::string buffer(text);
  Mpfr out(prec);
  char* end = nullptr;
  int t = mpfr_strtofr(out.get(), buffer.c_str(), &end, 10, MPFR_RNDN);
  if (buffer.empty() || end != buffer.c_str() + buffer.size()) {
    throw Error(ErrorCode::parse_error, "malformed decimal number '" + buffer + "'");
  }
  if (ternary != nullptr) *ternary = t;
  return out;
}

template <typename Fn>
Ball apply_increasing(const Ball& a, Fn fn) {
  const Precision prec = a.precision();
  Mpfr lo(prec), hi(prec);
  fn(lo.get(), a.lower().get(), MPFR_RNDD);
  fn(hi.get(), a.upper().get(), MPFR_RNDU);
  return Ball::from_endpoints(lo, hi, prec);
}

}  // namespace

Ball::Ball(Precision prec) : mid_(prec), rad_(kRadiusBits) {}

Ball Ball::from_int(long value, Precision prec) {
  Ball out(prec);
  int t = mpfr_set_si(out.mid_.get(), value, MPFR_RNDN);
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

Ball Ball::from_double(double value, Precision prec) {
  Ball out(prec);
  int t = mpfr_set_d(out.mid_.get(), value, MPFR_RNDN);
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

Ball Ball::from_integer(const mpz_class& value, Precision prec) {
  Ball out(prec);
  int t = mpfr_set_z(out.mid_.get(), value.get_mpz_t(), MPFR_RNDN);
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

Ball Ball::from_rational(const mpq_class& value, Precision prec) {
  Ball out(prec);
  int t = mpfr_set_q(out.mid_.get(), value.get_mpq_t(), MPFR_RNDN);
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

Ball Ball::from_decimal(std::string_view text, Precision prec) {
  Ball out(prec);
  int t = 0;
  out.mid_ = parse_mpfr(text, prec, &t);
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

Ball Ball::from_endpoints(const Mpfr& lo, const Mpfr& hi, Precision prec) {
  Ball out(prec);
  mpfr_add(out.mid_.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(out.mid_.get(), out.mid_.get(), 1, MPFR_RNDN);
  Mpfr above(kRadiusBits), below(kRadiusBits);
  mpfr_sub(above.get(), hi.get(), out.mid_.get(), MPFR_RNDU);
  mpfr_sub(below.get(), out.mid_.get(), lo.get(), MPFR_RNDU);
  out.rad_ = max_of(above, below);
  if (out.rad_.sign() < 0) mpfr_set_zero(out.rad_.get(), 1);
  return out;
}

Ball Ball::from_strings(std::string_view mid, std::string_view rad, Precision prec) {
  Ball out(prec);
  out.mid_ = parse_mpfr(mid, prec, nullptr);
  out.rad_ = parse_mpfr(rad, kRadiusBits, nullptr);
  if (out.rad_.sign() < 0 || mpfr_nan_p(out.rad_.get())) {
    throw Error(ErrorCode::parse_error, "ball radius must be nonnegative");
  }
  return out;
}

Mpfr Ball::lower() const {
  Mpfr out(precision());
  mpfr_sub(out.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return out;
}

Mpfr Ball::upper() const {
  Mpfr out(precision());
  mpfr_add(out.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return out;
}

double Ball::lower_double() const { return lower().to_double(MPFR_RNDD); }
double Ball::upper_double() const { return upper().to_double(MPFR_RNDU); }

bool Ball::is_finite() const noexcept {
  return mpfr_number_p(mid_.get()) != 0 && mpfr_number_p(rad_.get()) != 0;
}

bool Ball::is_positive() const noexcept {
  return is_finite() && mpfr_cmp(mid_.get(), rad_.get()) > 0;
}

bool Ball::is_negative() const noexcept {
  return is_finite() && mid_.sign() < 0 && mpfr_cmpabs(mid_.get(), rad_.get()) > 0;
}

bool Ball::contains_zero() const noexcept {
  return !is_finite() || mpfr_cmpabs(mid_.get(), rad_.get()) <= 0;
}

bool Ball::contains(const Ball& inner) const {
  if (!is_finite() || !inner.is_finite()) return false;
  Mpfr reach = distance_up(mid_, inner.mid_);
  mpfr_add(reach.get(), reach.get(), inner.rad_.get(), MPFR_RNDU);
  return mpfr_cmp(reach.get(), rad_.get()) <= 0;
}

Ball Ball::midpoint() const {
  Ball out(precision());
  out.mid_ = mid_;
  return out;
}

Ball Ball::with_precision(Precision prec) const {
  Ball out(prec);
  int t = mpfr_set(out.mid_.get(), mid_.get(), MPFR_RNDN);
  out.rad_ = rad_;
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

void Ball::add_error(const Mpfr& err) {
  Mpfr magnitude = abs_up(err);
  mpfr_add(rad_.get(), rad_.get(), magnitude.get(), MPFR_RNDU);
}

std::string Ball::mid_string() const {
  return format_mpfr(mid_.get(), mpfr_get_str_ndigits(10, precision()), MPFR_RNDN);
}

std::string Ball::rad_string() const {
  // Two guard digits keep the upward-rounded decimal within half a binary ulp,
  // so parsing it back to nearest returns the stored radius exactly.
  return format_mpfr(rad_.get(), mpfr_get_str_ndigits(10, kRadiusBits) + 2, MPFR_RNDU);
}

std::string Ball::display(std::size_t digits) const {
  return format_mpfr(mid_.get(), digits, MPFR_RNDN) + " +/- " + format_mpfr(rad_.get(), 2, MPFR_RNDU);
}

Ball operator-(const Ball& a) {
  Ball out(a.precision());
  mpfr_neg(out.mid_.get(), a.mid_.get(), MPFR_RNDN);
  out.rad_ = a.rad_;
  return out;
}

Ball operator+(const Ball& a, const Ball& b) {
  Ball out(std::max(a.precision(), b.precision()));
  int t = mpfr_add(out.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(out.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

Ball operator-(const Ball& a, const Ball& b) {
  Ball out(std::max(a.precision(), b.precision()));
  int t = mpfr_sub(out.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(out.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

Ball operator*(const Ball& a, const Ball& b) {
  Ball out(std::max(a.precision(), b.precision()));
  int t = mpfr_mul(out.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  Mpfr term(kRadiusBits);
  // |a.mid| b.rad + |b.mid| a.rad + a.rad b.rad
  mpfr_mul(out.rad_.get(), abs_up(a.mid_).get(), b.rad_.get(), MPFR_RNDU);
  mpfr_mul(term.get(), abs_up(b.mid_).get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(out.rad_.get(), out.rad_.get(), term.get(), MPFR_RNDU);
  mpfr_mul(term.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(out.rad_.get(), out.rad_.get(), term.get(), MPFR_RNDU);
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

Ball operator/(const Ball& a, const Ball& b) {
  if (b.contains_zero()) {
    throw Error(ErrorCode::unresolved, "division by a ball containing zero");
  }
  Ball out(std::max(a.precision(), b.precision()));
  int t = mpfr_div(out.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  // (|a.mid| b.rad + |b.mid| a.rad) / (|b.mid| (|b.mid| - b.rad))
  Mpfr numerator(kRadiusBits), term(kRadiusBits), denominator(kRadiusBits);
  mpfr_mul(numerator.get(), abs_up(a.mid_).get(), b.rad_.get(), MPFR_RNDU);
  mpfr_mul(term.get(), abs_up(b.mid_).get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(numerator.get(), numerator.get(), term.get(), MPFR_RNDU);
  Mpfr b_abs = abs_down(b.mid_);
  mpfr_sub(denominator.get(), b_abs.get(), b.rad_.get(), MPFR_RNDD);
  mpfr_mul(denominator.get(), denominator.get(), b_abs.get(), MPFR_RNDD);
  mpfr_div(out.rad_.get(), numerator.get(), denominator.get(), MPFR_RNDU);
  add_rounding_error(out.rad_, out.mid_, t);
  return out;
}

Ball operator*(const Ball& a, long b) { return a * Ball::from_int(b, a.precision()); }
Ball operator+(const Ball& a, long b) { return a + Ball::from_int(b, a.precision()); }
Ball operator-(const Ball& a, long b) { return a - Ball::from_int(b, a.precision()); }

Ball abs(const Ball& a) {
  if (a.is_negative()) return -a;
  if (!a.contains_zero()) return a;
  const Precision prec = a.precision();
  Mpfr lo(prec);
  Mpfr hi(prec);
  mpfr_abs(hi.get(), a.lower().get(), MPFR_RNDU);
  hi = max_of(hi, a.upper());
  return Ball::from_endpoints(lo, hi, prec);
}

Ball sqr(const Ball& a) {
  const Precision prec = a.precision();
  Mpfr lo(prec), hi(prec);
  Mpfr lower = a.lower();
  Mpfr upper = a.upper();
  mpfr_abs(lower.get(), lower.get(), MPFR_RNDN);
  mpfr_abs(upper.get(), upper.get(), MPFR_RNDN);
  const Mpfr& far = max_of(lower, upper);
  const Mpfr& near = min_of(lower, upper);
  mpfr_sqr(hi.get(), far.get(), MPFR_RNDU);
  if (!a.contains_zero()) mpfr_sqr(lo.get(), near.get(), MPFR_RNDD);
  return Ball::from_endpoints(lo, hi, prec);
}

Ball sqrt(const Ball& a) {
  const Precision prec = a.precision();
  Mpfr lo = a.lower();
  Mpfr hi = a.upper();
  if (hi.sign() < 0) throw Error(ErrorCode::unresolved, "square root of a negative ball");
  if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
  Mpfr out_lo(prec), out_hi(prec);
  mpfr_sqrt(out_lo.get(), lo.get(), MPFR_RNDD);
  mpfr_sqrt(out_hi.get(), hi.get(), MPFR_RNDU);
  return Ball::from_endpoints(out_lo, out_hi, prec);
}

Ball log(const Ball& a) {
  if (!a.is_positive()) {
    throw Error(ErrorCode::unresolved, "logarithm of a ball that is not strictly positive");
  }
  return apply_increasing(a, [](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) { mpfr_log(out, in, rnd); });
}

Ball exp(const Ball& a) {
  return apply_increasing(a, [](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) { mpfr_exp(out, in, rnd); });
}

Ball pow(const Ball& base, unsigned long exponent) {
  Ball result = Ball::from_int(1, base.precision());
  Ball square = base;
  while (exponent > 0) {
    if (exponent & 1UL) result = result * square;
    exponent >>= 1;
    if (exponent > 0) square = sqr(square);
  }
  return result;
}

Ball max(const Ball& a, const Ball& b) {
  const Precision prec = std::max(a.precision(), b.precision());
  return Ball::from_endpoints(max_of(a.lower(), b.lower()), max_of(a.upper(), b.upper()), prec);
}

Ball min(const Ball& a, const Ball& b) {
  const Precision prec = std::max(a.precision(), b.precision());
  return Ball::from_endpoints(min_of(a.lower(), b.lower()), min_of(a.upper(), b.upper()), prec);
}

std::optional<Ball> intersect(const Ball& a, const Ball& b) {
  const Precision prec = std::max(a.precision(), b.precision());
  Mpfr lo = max_of(a.lower(), b.lower());
  Mpfr hi = min_of(a.upper(), b.upper());
  if (mpfr_cmp(lo.get(), hi.get()) > 0) return std::nullopt;
  return Ball::from_endpoints(lo, hi, prec);
}

bool overlaps(const Ball& a, const Ball& b) {
  if (!a.is_finite() || !b.is_finite()) return true;
  Mpfr gap = distance_down(a.mid(), b.mid());
  Mpfr reach(kRadiusBits);
  mpfr_add(reach.get(), a.rad().get(), b.rad().get(), MPFR_RNDU);
  return mpfr_cmp(gap.get(), reach.get()) <= 0;
}

bool definitely_less(const Ball& a, const Ball& b) { return (b - a).is_positive(); }

ComplexBall::ComplexBall(Ball real) : re(std::move(real)), im(re.precision()) {}

ComplexBall ComplexBall::with_precision(Precision prec) const {
  return {re.with_precision(prec), im.with_precision(prec)};
}

ComplexBall operator-(const ComplexBall& a) { return {-a.re, -a.im}; }
ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) { return {a.re + b.re, a.im + b.im}; }
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) { return {a.re - b.re, a.im - b.im}; }

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  Ball denominator = norm(b);
  ComplexBall numerator = a * b.conj();
  return {numerator.re / denominator, numerator.im / denominator};
}

ComplexBall operator*(const ComplexBall& a, const Ball& b) { return {a.re * b, a.im * b}; }
ComplexBall operator*(const ComplexBall& a, long b) { return {a.re * b, a.im * b}; }

Ball norm(const ComplexBall& z) { return sqr(z.re) + sqr(z.im); }

Ball abs(const ComplexBall& z) {
  if (z.im.is_exact() && z.im.mid().sign() == 0) return abs(z.re);
  return sqrt(norm(z));
}

ComplexBall pow(const ComplexBall& base, unsigned long exponent) {
  ComplexBall result(Ball::from_int(1, base.precision()));
  ComplexBall square = base;
  while (exponent > 0) {
    if (exponent & 1UL) result = result * square;
    exponent >>= 1;
    if (exponent > 0) square = square * square;
  }
  return result;
}

bool overlaps(const ComplexBall& a, const ComplexBall& b) {
  return overlaps(a.re, b.re) && overlaps(a.im, b.im);
}

std::optional<ComplexBall> intersect(const ComplexBall& a, const ComplexBall& b) {
  auto re = intersect(a.re, b.re);
  auto im = intersect(a.im, b.im);
  if (!re || !im) return std::nullopt;
  return ComplexBall(std::move(*re), std::move(*im));
}

}  // namespace logconc
