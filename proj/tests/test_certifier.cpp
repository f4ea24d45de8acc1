#include <gtest/gtest.h>

#include <cmath>

#include "logconc/catalog.hpp"
#include "logconc/certifier.hpp"
#include "oracles.hpp"

using namespace logconc;

namespace {

RecurrenceSpec make(std::initializer_list<long> alpha) {
  std::vector<mpq_class> c;
  for (long a : alpha) c.emplace_back(a);
  return RecurrenceSpec::with_default_start(std::move(c));
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::precision_failure;
}

TailBound constants(const char* scale, const char* ratio) {
  return TailBound{Ball::from_decimal(scale), Ball::from_decimal(ratio), 0};
}

// The three tail conditions in plain double arithmetic; used to cross-check
// the ball search away from ties.
bool tail_conditions_double(double C, double r, double c1, int N) {
  const double m = C * std::pow(r, N);
  const double m_prev = C * std::pow(r, N - 1);
  const double a = m < 0.5 && m + m * m < -std::log(c1) / (3.0 * (N * N - 1));
  const double b = m_prev < -2 * std::log(c1) / (3.0 * N * (N + 1)) && m_prev < 1;
  const double c = r <= static_cast<double>(N * N - 1) / (N * N + 2 * N);
  return a && b && c;
}

const RecurrenceSpec kTribonacci = make({1, 1, 1});
const RecurrenceSpec kThreeBonacci = make({1, 0, 1});
const RecurrenceSpec kFibonacci = make({1, 1});

}  // namespace

TEST(DominanceCondition, Examples) {
  const auto t = compute_root_profile(kTribonacci);
  EXPECT_TRUE(dominance_condition(t));
  EXPECT_NEAR(t.derivative_at_dominant.mid_double(), 1 / 0.182803, 1e-4);
  const auto r = compute_root_profile(kThreeBonacci);
  EXPECT_TRUE(dominance_condition(r));
  EXPECT_NEAR(r.derivative_at_dominant.mid_double(), 3.513, 1e-3);
  for (int k = 2; k <= 10; ++k) EXPECT_TRUE(dominance_condition(compute_root_profile(family_spec(k_bonacci(k)))));
}

TEST(DominanceCondition, FalseAndStraddling) {
  // x^2 - x/4 - 1/8 = (x - 1/2)(x + 1/4): f'(1/2) = 3/4 < 1.
  const auto spec = RecurrenceSpec::with_default_start({mpq_class(1, 4), mpq_class(1, 8)});
  EXPECT_FALSE(dominance_condition(compute_root_profile(spec)));
  auto profile = compute_root_profile(kTribonacci);
  profile.derivative_at_dominant = Ball::from_int(1) + (Ball::from_rational(mpq_class(1, 3), 64) -
                                                        Ball::from_rational(mpq_class(1, 3), 64));
  EXPECT_EQ(code_of([&] { dominance_condition(profile); }), ErrorCode::unresolved);
}

TEST(TailThreshold, PaperConstantsTribonacci) {
  const auto tail = tail_threshold(Ball::from_decimal("0.19"), constants("3.86", "0.41"));
  EXPECT_EQ(tail.index, 7u);
  EXPECT_LE(tail.index, 10u);
  // N = 6 fails (B) since M_5 = 0.04472 exceeds -2 log(0.19)/126; N = 7
  // passes with M_6 = 0.01834 below -2 log(0.19)/168.
  EXPECT_NEAR(3.86 * std::pow(0.41, 5), 0.04472, 1e-5);
  EXPECT_GT(3.86 * std::pow(0.41, 5), -2 * std::log(0.19) / 126);
  EXPECT_NEAR(tail.m_before.mid_double(), 0.01834, 1e-5);
  EXPECT_NEAR(tail.rhs_b.mid_double(), -2 * std::log(0.19) / 168, 1e-15);
  EXPECT_LT(tail.m_before.upper_double(), tail.rhs_b.lower_double());
  EXPECT_FALSE(tail_conditions_double(3.86, 0.41, 0.19, 6));
  EXPECT_TRUE(tail_conditions_double(3.86, 0.41, 0.19, 7));
}

TEST(TailThreshold, PaperConstantsThreeBonacci) {
  const auto tail = tail_threshold(Ball::from_decimal("0.29"), constants("2.37", "0.57"));
  EXPECT_LE(tail.index, 18u);
  for (int N = 2; N < static_cast<int>(tail.index); ++N) EXPECT_FALSE(tail_conditions_double(2.37, 0.57, 0.29, N));
  EXPECT_TRUE(tail_conditions_double(2.37, 0.57, 0.29, static_cast<int>(tail.index)));
}

TEST(TailThreshold, NoThreshold) {
  EXPECT_EQ(code_of([] { tail_threshold(Ball::from_decimal("0.19"), constants("1", "1")); }), ErrorCode::no_threshold);
  EXPECT_EQ(code_of([] { tail_threshold(Ball::from_decimal("0.19"), constants("1", "0.9999999")); }),
            ErrorCode::no_threshold);
  EXPECT_EQ(code_of([] { tail_threshold(Ball::from_decimal("0.19"), constants("100", "0.5"), 5); }),
            ErrorCode::no_threshold);
  EXPECT_EQ(code_of([] { tail_threshold(Ball::from_decimal("1.5"), constants("1", "0.5")); }),
            ErrorCode::dominance_condition_false);
}

TEST(TailThreshold, MatchesDoubleSearchOnCatalog) {
  for (int k = 2; k <= 8; ++k) {
    for (auto family : {FamilyKind::k_fibonacci, FamilyKind::k_bonacci}) {
      const auto profile = compute_root_profile(family_spec(FamilyId{family, k, {}}));
      const auto bound = tail_constants(profile, k);
      const auto tail = tail_threshold(profile.c1(), bound);
      const double C = bound.scale.mid_double(), r = bound.ratio.mid_double(), c1 = profile.c1().mid_double();
      int expected = 2;
      while (!tail_conditions_double(C, r, c1, expected)) ++expected;
      EXPECT_EQ(tail.index, static_cast<std::size_t>(expected)) << "k=" << k;
    }
  }
}

TEST(VerifyPrefix, Examples) {
  EXPECT_EQ(verify_prefix(kTribonacci, 3, 9), (std::vector<bool>{false, true, true, true, true, true, true}));
  EXPECT_EQ(verify_prefix(kThreeBonacci, 8, 17), std::vector<bool>(10, true));
  const auto fib = verify_prefix(kFibonacci, 3, 6);
  EXPECT_FALSE(fib[1]);
  EXPECT_TRUE(fib[2]);
  EXPECT_TRUE(fib[3]);
  EXPECT_EQ(code_of([] { verify_prefix(kTribonacci, 2, 5); }), ErrorCode::nonpositive_term);
}

TEST(FindMinN, PaperThresholds) {
  const std::vector<std::pair<RecurrenceSpec, std::size_t>> cases{
      {kTribonacci, 4}, {kThreeBonacci, 8}, {make({1, 1, 1, 1}), 5}, {make({1, 0, 0, 1}), 11}, {kFibonacci, 5}};
  for (const auto& [spec, expected] : cases) {
    const Certificate cert = find_min_N(spec);
    ASSERT_TRUE(cert.certified()) << cert.reason;
    EXPECT_EQ(*cert.decrease.minimal, expected);
    EXPECT_GE(*cert.decrease.minimal, *cert.decrease.n_first);
  }
}

TEST(FindMinN, FailuresKeepPartialData) {
  const Certificate reducible = find_min_N(make({0, 1, 0, 1}));
  EXPECT_FALSE(reducible.certified());
  EXPECT_EQ(reducible.failure, ErrorCode::reducible);
  EXPECT_NE(reducible.reason.find("run reduce first"), std::string::npos);

  CertifyOptions tight;
  tight.prefix_cap = 10;
  const Certificate capped = find_min_N(kThreeBonacci, tight);
  EXPECT_EQ(capped.failure, ErrorCode::exact_check_too_large);
  ASSERT_TRUE(capped.profile.has_value());
  ASSERT_TRUE(capped.decrease.tail.has_value());
  EXPECT_EQ(capped.decrease.tail->index, 12u);

  const Certificate odd_start = find_min_N(RecurrenceSpec({1, 1}, {2, 1}));
  EXPECT_EQ(odd_start.failure, ErrorCode::nondefault_initial_values);

  const Certificate weak = find_min_N(RecurrenceSpec::with_default_start({mpq_class(1, 4), mpq_class(1, 8)}));
  EXPECT_EQ(weak.failure, ErrorCode::dominance_condition_false);

  EXPECT_EQ(find_min_N(make({1, -1})).failure, ErrorCode::not_dominant);
  EXPECT_EQ(find_min_N(make({0, 3, -2})).failure, ErrorCode::cluster_unresolved);
}

TEST(FindMinN, MixedSignSpecIsCertifiedNumerically) {
  // a_n = 3a_{n-1} - a_{n-2}: every other Fibonacci number, a_n = F_{2n}.
  const auto spec = make({3, -1});
  ASSERT_EQ(dominant_zero_hypotheses(spec).status, HypothesisStatus::unknown);
  const Certificate cert = find_min_N(spec);
  ASSERT_TRUE(cert.certified()) << cert.reason;
  const auto w = generate_terms(spec, cert.decrease.tail->index + 60);
  for (std::size_t n = *cert.decrease.minimal; n <= cert.decrease.tail->index + 50; ++n) {
    EXPECT_TRUE(ratio_decreasing_exact(w, n));
  }
  EXPECT_NE(ratio_decrease_verdict(w, *cert.decrease.minimal - 1), Verdict::holds);
}

TEST(CertifyIncreasing, Examples) {
  EXPECT_EQ(certify_increasing_from(kTribonacci), 3u);
  EXPECT_LE(certify_increasing_from(kThreeBonacci), 5u);
  EXPECT_EQ(certify_increasing_from(kFibonacci), 2u);
  EXPECT_EQ(code_of([] { certify_increasing_from(make({0, 1, 0, 1})); }), ErrorCode::reducible);
}

// Two-phase consistency, minimality and the tail-bound audit over both
// families for k = 2..8.
TEST(Properties, TwoPhaseConsistencyMinimalityAndTailAudit) {
  for (int k = 2; k <= 8; ++k) {
    for (auto family : {FamilyKind::k_fibonacci, FamilyKind::k_bonacci}) {
      const auto spec = family_spec(FamilyId{family, k, {}});
      const Certificate cert = find_min_N(spec);
      ASSERT_TRUE(cert.certified()) << cert.reason;
      const std::size_t n_tail = cert.decrease.tail->index;
      const std::size_t n_min = *cert.decrease.minimal;
      const auto w = generate_terms(spec, n_tail + 101);
      for (std::size_t n = n_min; n <= n_tail + 50; ++n) EXPECT_TRUE(ratio_decreasing_exact(w, n)) << k << " " << n;
      if (n_min > 2) EXPECT_NE(ratio_decrease_verdict(w, n_min - 1), Verdict::holds);
      for (int s = 0; s < 30; ++s) {
        const std::size_t n = (n_tail + 100) * static_cast<std::size_t>(s) / 29;
        const Ball e = abs(e_n_value(w[n], *cert.profile, n));
        const Ball bound = cert.bound->bound_at(n);
        // k = 2 attains the bound with equality, so only a contradiction can be ruled out.
        const Mpfr e_side = k == 2 ? e.lower() : e.upper();
        EXPECT_LE(mpfr_cmp(e_side.get(), bound.upper().get()), 0) << "k=" << k << " n=" << n;
      }
    }
  }
}

// |R_n - 1| <= (-log c_1 + 2(n+2) M_{n-1}) / (n-1) for n >= N_tail.
TEST(Properties, LimitEnvelope) {
  for (const auto& spec : {kTribonacci, kThreeBonacci, kFibonacci}) {
    const Certificate cert = find_min_N(spec);
    ASSERT_TRUE(cert.certified());
    const std::size_t n_tail = cert.decrease.tail->index;
    const auto w = generate_terms(spec, n_tail + 200);
    const Ball neg_log_c1 = -log(cert.profile->c1());
    for (int s = 0; s < 10; ++s) {
      const std::size_t n = n_tail + 20 * static_cast<std::size_t>(s);
      // log R_n = log a_n / n - log a_{n-1} / (n-1), enclosed in balls.
      const Ball log_r = log(Ball::from_rational(w[n], 256)) / Ball::from_int(static_cast<long>(n), 256) -
                         log(Ball::from_rational(w[n - 1], 256)) / Ball::from_int(static_cast<long>(n - 1), 256);
      const Ball deviation = abs(exp(log_r) - 1);
      const Ball envelope = (neg_log_c1 + cert.bound->bound_at(n - 1) * static_cast<long>(2 * (n + 2))) /
                            Ball::from_int(static_cast<long>(n - 1));
      EXPECT_LE(deviation.upper_double(), envelope.lower_double()) << "n=" << n;
    }
  }
}

TEST(Properties, PrecisionStability) {
  for (const auto& spec : {kTribonacci, kThreeBonacci, make({1, 1, 1, 1}), make({1, 0, 0, 1}), kFibonacci}) {
    CertifyOptions high;
    high.numeric.precision = 256;
    const Certificate a = find_min_N(spec);
    const Certificate b = find_min_N(spec, high);
    ASSERT_TRUE(a.certified() && b.certified());
    EXPECT_EQ(*a.decrease.minimal, *b.decrease.minimal);
    EXPECT_EQ(b.precision, 256);
  }
}
