#ifndef LOGCONC_BALL_HPP
#define LOGCONC_BALL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>

namespace logconc {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 128;
// Radii are stored at a fixed, small precision and always rounded upward.
inline constexpr Precision kRadiusBits = 64;

/// Owning RAII wrapper around an mpfr_t. Copies keep the source precision.
class Mpfr {
 public:
  explicit Mpfr(Precision prec = 53);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }

  Precision precision() const noexcept { return mpfr_get_prec(value_); }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  int sign() const noexcept { return mpfr_sgn(value_); }

 private:
  mpfr_t value_;
};

/// Real midpoint-radius ball: the represented real lies in [mid - rad, mid + rad].
///
/// Every operation rounds the midpoint to nearest and then widens the radius
/// by the propagated input radii plus a bound on the rounding error, so the
/// result encloses every value the exact operation could take on the inputs.
class Ball {
 public:
  explicit Ball(Precision prec = kDefaultPrecision);

  static Ball from_int(long value, Precision prec = kDefaultPrecision);
  static Ball from_double(double value, Precision prec = kDefaultPrecision);
  static Ball from_integer(const mpz_class& value, Precision prec = kDefaultPrecision);
  static Ball from_rational(const mpq_class& value, Precision prec = kDefaultPrecision);
  // Decimal literal such as "0.19" or "3.86e0"; the radius covers the conversion.
  static Ball from_decimal(std::string_view text, Precision prec = kDefaultPrecision);
  // Smallest-radius ball (up to rounding) covering [lo, hi].
  static Ball from_endpoints(const Mpfr& lo, const Mpfr& hi, Precision prec);
  // Inverse of mid_string()/rad_string(); the binary values are recovered exactly.
  static Ball from_strings(std::string_view mid, std::string_view rad, Precision prec);

  Precision precision() const noexcept { return mid_.precision(); }
  const Mpfr& mid() const noexcept { return mid_; }
  const Mpfr& rad() const noexcept { return rad_; }

  Mpfr lower() const;
  Mpfr upper() const;
  double mid_double() const { return mid_.to_double(); }
  double lower_double() const;
  double upper_double() const;

  bool is_exact() const noexcept { return mpfr_zero_p(rad_.get()) != 0; }
  bool is_finite() const noexcept;
  bool is_positive() const noexcept;
  bool is_negative() const noexcept;
  bool contains_zero() const noexcept;
  bool contains(const Ball& inner) const;

  // Midpoint only, radius dropped. Not an enclosure; used by iterative solvers.
  Ball midpoint() const;
  Ball with_precision(Precision prec) const;
  void add_error(const Mpfr& err);

  std::string mid_string() const;
  std::string rad_string() const;
  // Short human-readable form, e.g. "1.83928675521e0 +/- 4.2e-48".
  std::string display(std::size_t digits = 12) const;

  friend Ball operator-(const Ball& a);
  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  friend Ball operator/(const Ball& a, const Ball& b);

 private:
  Mpfr mid_;
  Mpfr rad_;
};

Ball operator*(const Ball& a, long b);
Ball operator+(const Ball& a, long b);
Ball operator-(const Ball& a, long b);

Ball abs(const Ball& a);
Ball sqr(const Ball& a);
Ball sqrt(const Ball& a);
Ball log(const Ball& a);
Ball exp(const Ball& a);
Ball pow(const Ball& base, unsigned long exponent);
Ball max(const Ball& a, const Ball& b);
Ball min(const Ball& a, const Ball& b);
std::optional<Ball> intersect(const Ball& a, const Ball& b);

/// True when the two enclosures share at least one point (conservatively).
bool overlaps(const Ball& a, const Ball& b);
/// True only when every point of a is strictly below every point of b.
bool definitely_less(const Ball& a, const Ball& b);

/// Rectangular complex ball: independent real balls for both parts.
struct ComplexBall {
  Ball re;
  Ball im;

  explicit ComplexBall(Precision prec = kDefaultPrecision) : re(prec), im(prec) {}
  ComplexBall(Ball real, Ball imag) : re(std::move(real)), im(std::move(imag)) {}
  explicit ComplexBall(Ball real);

  Precision precision() const { return std::max(re.precision(), im.precision()); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool is_real() const { return im.is_exact() && mpfr_zero_p(im.mid().get()); }
  ComplexBall midpoint() const { return {re.midpoint(), im.midpoint()}; }
  ComplexBall conj() const { return {re, -im}; }
  ComplexBall with_precision(Precision prec) const;

  friend ComplexBall operator-(const ComplexBall& a);
  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
};

ComplexBall operator*(const ComplexBall& a, const Ball& b);
ComplexBall operator*(const ComplexBall& a, long b);
Ball abs(const ComplexBall& z);
Ball norm(const ComplexBall& z);  // |z|^2
ComplexBall pow(const ComplexBall& base, unsigned long exponent);
bool overlaps(const ComplexBall& a, const ComplexBall& b);
std::optional<ComplexBall> intersect(const ComplexBall& a, const ComplexBall& b);

}  // namespace logconc

#endif  // LOGCONC_BALL_HPP
