#include <gtest/gtest.h>

#include <random>

#include "logconc/ball.hpp"
#include "logconc/error.hpp"

using namespace logconc;

namespace {

// Exact rational membership test: lower <= q <= upper.
bool encloses(const Ball& b, const mpq_class& q) {
  mpq_class lo, hi;
  mpfr_get_q(lo.get_mpq_t(), b.lower().get());
  mpfr_get_q(hi.get_mpq_t(), b.upper().get());
  return lo <= q && q <= hi;
}

mpq_class random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-100000, 100000);
  std::uniform_int_distribution<long> den(1, 99999);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

TEST(Ball, RationalConversionEncloses) {
  const mpq_class third(1, 3);
  const Ball b = Ball::from_rational(third, 64);
  EXPECT_TRUE(encloses(b, third));
  EXPECT_FALSE(b.is_exact());
  EXPECT_TRUE(Ball::from_int(7).is_exact());
}

TEST(Ball, ArithmeticEnclosesExactRationalResults) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    const mpq_class x = random_rational(rng);
    const mpq_class y = random_rational(rng);
    const Ball bx = Ball::from_rational(x, 53);
    const Ball by = Ball::from_rational(y, 53);
    EXPECT_TRUE(encloses(bx + by, x + y));
    EXPECT_TRUE(encloses(bx - by, x - y));
    EXPECT_TRUE(encloses(bx * by, x * y));
    if (y != 0) EXPECT_TRUE(encloses(bx / by, x / y));
    EXPECT_TRUE(encloses(sqr(bx), x * x));
    EXPECT_TRUE(encloses(abs(bx), abs(x)));
    mpq_class cube = x * x * x;
    EXPECT_TRUE(encloses(pow(bx, 3), cube));
  }
}

TEST(Ball, HigherPrecisionGivesSubEnclosure) {
  const mpq_class x(22, 7);
  const Ball low = log(Ball::from_rational(x, 64)) * Ball::from_rational(mpq_class(5, 3), 64);
  const Ball high = log(Ball::from_rational(x, 256)) * Ball::from_rational(mpq_class(5, 3), 256);
  EXPECT_TRUE(overlaps(low, high));
  EXPECT_TRUE(low.contains(high));
  EXPECT_LT(mpfr_cmp(high.rad().get(), low.rad().get()), 0);
}

TEST(Ball, TranscendentalValues) {
  const Ball two = Ball::from_int(2, 128);
  const Ball s = sqrt(two);
  EXPECT_TRUE(overlaps(sqr(s), two));
  EXPECT_NEAR(exp(log(two)).mid_double(), 2.0, 1e-30);
  EXPECT_NEAR(log(Ball::from_decimal("0.19")).mid_double(), -1.6607312068216509, 1e-15);
}

TEST(Ball, ComparisonsAreConservative) {
  const Ball a = Ball::from_decimal("0.41");
  const Ball b = Ball::from_decimal("0.410000000000000000000000000000000000001", 256);
  EXPECT_TRUE(definitely_less(Ball::from_int(1), Ball::from_int(2)));
  EXPECT_FALSE(definitely_less(Ball::from_int(2), Ball::from_int(2)));
  EXPECT_TRUE(overlaps(a, a));
  // At 128 bits 0.41 cannot be told apart from 0.41 + 1e-39.
  EXPECT_FALSE(definitely_less(a, b.with_precision(128)));
}

TEST(Ball, DivisionByZeroEnclosureIsUnresolved) {
  const Ball around_zero = Ball::from_rational(mpq_class(1, 3), 64) - Ball::from_rational(mpq_class(1, 3), 64);
  EXPECT_TRUE(around_zero.contains_zero());
  try {
    (void)(Ball::from_int(1) / around_zero);
    FAIL() << "expected unresolved";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unresolved);
  }
  EXPECT_THROW((void)log(around_zero), Error);
}

TEST(Ball, StringRoundTripIsExact) {
  std::mt19937_64 rng(7);
  for (Precision prec : {53, 128, 333, 1024}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Ball b = log(Ball::from_rational(abs(random_rational(rng)) + 1, prec));
      const Ball back = Ball::from_strings(b.mid_string(), b.rad_string(), prec);
      EXPECT_EQ(mpfr_cmp(b.mid().get(), back.mid().get()), 0);
      EXPECT_EQ(mpfr_cmp(b.rad().get(), back.rad().get()), 0);
      EXPECT_EQ(back.mid_string(), b.mid_string());
      EXPECT_EQ(back.rad_string(), b.rad_string());
    }
  }
  EXPECT_THROW(Ball::from_strings("1.5x", "0", 64), Error);
  EXPECT_THROW(Ball::from_strings("1.5", "-1", 64), Error);
}

TEST(Ball, IntersectionAndEndpoints) {
  Mpfr lo(64), hi(64);
  mpfr_set_d(lo.get(), 1.0, MPFR_RNDN);
  mpfr_set_d(hi.get(), 2.0, MPFR_RNDN);
  const Ball span = Ball::from_endpoints(lo, hi, 64);
  EXPECT_TRUE(encloses(span, 1));
  EXPECT_TRUE(encloses(span, 2));
  const auto both = intersect(span, Ball::from_decimal("1.9"));
  ASSERT_TRUE(both.has_value());
  EXPECT_TRUE(encloses(*both, mpq_class(19, 10)));
  EXPECT_FALSE(intersect(span, Ball::from_int(5)).has_value());
}

TEST(ComplexBall, ArithmeticEnclosesExactValues) {
  // (1/3 + i/7) * (2 - i/5) and its quotient, checked on both parts.
  const ComplexBall a(Ball::from_rational(mpq_class(1, 3)), Ball::from_rational(mpq_class(1, 7)));
  const ComplexBall b(Ball::from_int(2), Ball::from_rational(mpq_class(-1, 5)));
  const ComplexBall p = a * b;
  EXPECT_TRUE(encloses(p.re, mpq_class(1, 3) * 2 + mpq_class(1, 35)));
  EXPECT_TRUE(encloses(p.im, mpq_class(2, 7) - mpq_class(1, 15)));
  const ComplexBall q = p / b;
  EXPECT_TRUE(overlaps(q, a));
  EXPECT_TRUE(encloses(norm(b), mpq_class(4) + mpq_class(1, 25)));
  EXPECT_TRUE(ComplexBall(Ball::from_int(3)).is_real());
  EXPECT_FALSE(a.is_real());
}
