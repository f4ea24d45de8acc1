#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "logconc/catalog.hpp"
#include "logconc/charpoly.hpp"
#include "logconc/error.hpp"
#include "oracles.hpp"

using namespace logconc;

namespace {

RecurrenceSpec make(std::initializer_list<long> alpha) {
  std::vector<mpq_class> c;
  for (long a : alpha) c.emplace_back(a);
  return RecurrenceSpec::with_default_start(std::move(c));
}

bool near(const Ball& b, double value, double tol) {
  return b.lower_double() >= value - tol && b.upper_double() <= value + tol;
}

bool near(const ComplexBall& z, double re, double im, double tol) { return near(z.re, re, tol) && near(z.im, im, tol); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::precision_failure;
}

const RecurrenceSpec kTribonacci = make({1, 1, 1});
const RecurrenceSpec kThreeBonacci = make({1, 0, 1});
const RecurrenceSpec kFibonacci = make({1, 1});
const double kPhi = (1 + std::sqrt(5.0)) / 2;

}  // namespace

TEST(CharPoly, BuildAndPrint) {
  EXPECT_EQ(build_charpoly(kTribonacci).to_string(), "x^3 - x^2 - x - 1");
  EXPECT_EQ(build_charpoly(kThreeBonacci).to_string(), "x^3 - x^2 - 1");
  EXPECT_EQ(build_charpoly(kFibonacci).to_string(), "x^2 - x - 1");
  EXPECT_EQ(build_charpoly(RecurrenceSpec::with_default_start({mpq_class(3, 2), -2})).to_string(),
            "x^2 - 3/2*x + 2");
  EXPECT_EQ(build_charpoly(kTribonacci).evaluate(mpq_class(2)), 1);
  EXPECT_EQ(code_of([] { CharPoly({2, 1}); }), ErrorCode::invalid_spec);
}

TEST(CharPoly, DescartesCount) {
  EXPECT_EQ(descartes_positive_count(build_charpoly(kTribonacci)), 1);
  EXPECT_EQ(descartes_positive_count(CharPoly({1, 0, 1})), 0);
  EXPECT_EQ(descartes_positive_count(build_charpoly(kThreeBonacci)), 1);
  EXPECT_EQ(descartes_positive_count(CharPoly({1, -1, 1})), 2);
}

TEST(Hypotheses, Examples) {
  EXPECT_EQ(dominant_zero_hypotheses(kTribonacci).status, HypothesisStatus::holds);
  const auto reducible = dominant_zero_hypotheses(make({0, 1, 0, 1}));
  EXPECT_EQ(reducible.status, HypothesisStatus::reducible);
  EXPECT_EQ(reducible.support_gcd, 2u);
  EXPECT_EQ(hypotheses_name(reducible), "reducible(2)");
  EXPECT_EQ(dominant_zero_hypotheses(make({1, -1})).status, HypothesisStatus::unknown);
}

TEST(IsolateDominantRoot, PaperAndHandValues) {
  const Ball t = isolate_dominant_root(build_charpoly(kTribonacci), 128);
  EXPECT_TRUE(near(t, 1.839286, 1e-6));
  EXPECT_TRUE(near(isolate_dominant_root(build_charpoly(kThreeBonacci), 128), 1.465571, 1e-6));
  const Ball phi = isolate_dominant_root(build_charpoly(kFibonacci), 128);
  EXPECT_TRUE(near(phi, 1.6180339887, 1e-9));
  // Radius at most 2^-128 times the midpoint.
  EXPECT_LE(mpfr_get_d(phi.rad().get(), MPFR_RNDU), std::ldexp(phi.mid_double(), -128));
  EXPECT_TRUE(build_charpoly(kFibonacci).evaluate(phi).contains_zero());
}

TEST(IsolateDominantRoot, SmallAndRationalRoots) {
  // x^2 - x/8 - 1/64 has roots (1 +- sqrt 5)/16; the positive one is below 1.
  const CharPoly small({1, mpq_class(-1, 8), mpq_class(-1, 64)});
  EXPECT_TRUE(near(isolate_dominant_root(small, 128), (1 + std::sqrt(5.0)) / 16, 1e-12));
  // Exact dyadic root 1/2 of x^2 + x/2 - 1/2.
  const Ball half = isolate_dominant_root(CharPoly({1, mpq_class(1, 2), mpq_class(-1, 2)}), 64);
  EXPECT_TRUE(half.contains(Ball::from_rational(mpq_class(1, 2))));
  EXPECT_EQ(code_of([] { isolate_dominant_root(CharPoly({1, 0, 1}), 64); }), ErrorCode::no_sign_change);
}

TEST(IsolateDominantRoot, AgreesWithNewtonOracle) {
  for (const auto& alpha : std::vector<std::vector<long>>{{1, 1, 1, 1, 1}, {1, 0, 0, 0, 1}, {2, 0, 3}, {5, 1}}) {
    std::vector<mpq_class> c(alpha.begin(), alpha.end());
    const Ball root = isolate_dominant_root(build_charpoly(RecurrenceSpec::with_default_start(c)), 128);
    EXPECT_TRUE(near(root, oracle::positive_root(alpha), 1e-14));
  }
}

TEST(AllRoots, PaperValues) {
  const auto t = all_roots(build_charpoly(kTribonacci), 128);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_TRUE(near(t[0], 1.839286, 0, 1e-6));
  EXPECT_TRUE(t[0].is_real());
  EXPECT_TRUE(near(t[1], -0.419643, 0.606290, 1e-6));
  EXPECT_TRUE(near(t[2], -0.419643, -0.606290, 1e-6));
  const auto r = all_roots(build_charpoly(kThreeBonacci), 128);
  EXPECT_TRUE(near(r[0], 1.465571, 0, 1e-6));
  EXPECT_TRUE(near(r[1], -0.232785, 0.792551, 1e-6));
  const auto f = all_roots(build_charpoly(kFibonacci), 128);
  EXPECT_TRUE(near(f[0], 1.618034, 0, 1e-6));
  EXPECT_TRUE(near(f[1], -0.618034, 0, 1e-6));
  EXPECT_TRUE(f[1].is_real());
}

TEST(AllRoots, AgreesWithDurandKernerOracle) {
  for (int k = 2; k <= 10; ++k) {
    for (auto family : {FamilyKind::k_fibonacci, FamilyKind::k_bonacci}) {
      const auto spec = family_spec(FamilyId{family, k, {}});
      const CharPoly poly = build_charpoly(spec);
      std::vector<long double> coeffs;
      for (const auto& c : poly.coefficients()) coeffs.push_back(c.get_d());
      const auto reference = oracle::roots(coeffs);
      const auto certified = all_roots(poly, 128);
      for (const auto& z : reference) {
        int hits = 0;
        for (const auto& box : certified) {
          if (near(box, static_cast<double>(z.real()), static_cast<double>(z.imag()), 1e-12)) ++hits;
        }
        EXPECT_EQ(hits, 1) << "k=" << k << " root " << static_cast<double>(z.real()) << "," << static_cast<double>(z.imag());
      }
    }
  }
}

TEST(AllRoots, RepeatedRootIsClusterUnresolved) {
  // (x - 1)^2 (x + 2) = x^3 - 3x + 2.
  EXPECT_EQ(code_of([] { all_roots(CharPoly({1, 0, -3, 2}), 128); }), ErrorCode::cluster_unresolved);
  // With escalation the failure persists up to the cap.
  const auto spec = RecurrenceSpec::with_default_start({0, 3, -2});
  EXPECT_EQ(code_of([&] { compute_root_profile(spec, {128, 512}); }), ErrorCode::cluster_unresolved);
}

TEST(ClosedFormCoeffs, Values) {
  const auto t = compute_root_profile(kTribonacci);
  EXPECT_TRUE(near(t.coefficients[0], 0.182803, 0, 1e-6));
  EXPECT_TRUE(near(t.coefficients[1], -0.091401, 0.340546, 1e-6));
  EXPECT_TRUE(near(compute_root_profile(kThreeBonacci).c1(), 0.284693, 1e-6));
  EXPECT_TRUE(near(compute_root_profile(kFibonacci).c1(), 1 / std::sqrt(5.0), 1e-6));
}

TEST(ClosedFormCoeffs, OverlappingRootsRefused) {
  const ComplexBall a(Ball::from_int(1), Ball(128));
  EXPECT_EQ(code_of([&] { closed_form_coeffs(std::vector<ComplexBall>{a, a}, CharPoly({1, -2, 1})); }),
            ErrorCode::distinctness_required);
}

TEST(RootProfile, MixedSignCoefficients) {
  // x^2 - x + 1: roots on the unit circle, a conjugate pair.
  EXPECT_EQ(code_of([] { compute_root_profile(make({1, -1})); }), ErrorCode::not_dominant);
  // x^2 + x - 6 = (x + 3)(x - 2): dominant zero is negative.
  EXPECT_EQ(code_of([] { compute_root_profile(make({-1, 6})); }), ErrorCode::not_dominant);
  // x^2 - 3x + 2 = (x - 1)(x - 2): established numerically, hypotheses unknown.
  const auto profile = compute_root_profile(make({3, -2}));
  EXPECT_TRUE(near(profile.dominant_root, 2.0, 1e-30));
  EXPECT_TRUE(near(profile.dominance_ratio, 0.5, 1e-30));
}

TEST(ResidualCheck, ReconstructsTerms) {
  EXPECT_LT(residual_check(kTribonacci, compute_root_profile(kTribonacci), 40).upper_double(), 1e-20);
  EXPECT_LT(residual_check(kFibonacci, compute_root_profile(kFibonacci), 30).upper_double(), 1e-20);
  for (const auto& spec : {kTribonacci, kThreeBonacci, make({1, 1, 1, 1})}) {
    const auto profile = compute_root_profile(spec);
    EXPECT_TRUE(residual_check(spec, profile, spec.order() - 1).contains_zero() ||
                residual_check(spec, profile, spec.order() - 1).upper_double() < 1e-30);
  }
  EXPECT_EQ(code_of([] {
              const RecurrenceSpec odd({1, 1}, {1, 1});
              residual_check(odd, compute_root_profile(kFibonacci), 5);
            }),
            ErrorCode::nondefault_initial_values);
}

TEST(EnValue, Examples) {
  const auto t = compute_root_profile(kTribonacci);
  EXPECT_TRUE(near(e_n_value(kTribonacci, t, 2), 0.6167, 1e-3));
  EXPECT_LT(abs(e_n_value(kTribonacci, t, 30)).upper_double(), 3.86 * std::pow(0.41, 30));
  EXPECT_LT(abs(e_n_value(kTribonacci, t, 30)).upper_double(), 1e-11);
  const auto f = compute_root_profile(kFibonacci);
  EXPECT_TRUE(near(e_n_value(kFibonacci, f, 1), std::sqrt(5.0) / kPhi - 1, 1e-9));
}

TEST(TailConstants, Examples) {
  const auto t = tail_constants(compute_root_profile(kTribonacci), 3);
  EXPECT_LE(t.scale.upper_double(), 3.86);
  EXPECT_LE(t.ratio.upper_double(), 0.41);
  const auto r = tail_constants(compute_root_profile(kThreeBonacci), 3);
  EXPECT_LE(r.scale.upper_double(), 2.37);
  EXPECT_LE(r.ratio.upper_double(), 0.57);
  const auto f = tail_constants(compute_root_profile(kFibonacci), 2);
  // C is exactly 1 for Fibonacci.
  EXPECT_TRUE(overlaps(f.scale, Ball::from_int(1)));
  EXPECT_LT(mpfr_get_d(f.scale.rad().get(), MPFR_RNDU), 1e-30);
  EXPECT_TRUE(near(f.ratio, (kPhi - 1) / kPhi, 1e-12));
  EXPECT_EQ(f.start, 0u);
}

TEST(TailConstants, RatioTouchingOneIsNotDominant) {
  auto profile = compute_root_profile(kFibonacci);
  profile.dominance_ratio = Ball::from_int(1);
  EXPECT_EQ(code_of([&] { tail_constants(profile, 2); }), ErrorCode::not_dominant);
}

TEST(SeparationMin, Examples) {
  EXPECT_TRUE(near(separation_min(compute_root_profile(kFibonacci)), std::sqrt(5.0), 1e-6));
  const auto t = compute_root_profile(kTribonacci);
  EXPECT_TRUE(near(separation_min(t), 2.8355, 1e-3));
  const double c2_modulus = std::hypot(0.091401, 0.340546);
  EXPECT_NEAR(separation_min(t).mid_double(), 1 / c2_modulus, 1e-4);
  const Ball m5 = separation_min(compute_root_profile(family_spec(k_fibonacci(5))));
  EXPECT_GT(m5.lower_double(), 0.5);
}

TEST(Properties, RootCertificateAndCiIdentity) {
  for (int k = 2; k <= 8; ++k) {
    for (auto family : {FamilyKind::k_fibonacci, FamilyKind::k_bonacci}) {
      const auto spec = family_spec(FamilyId{family, k, {}});
      const CharPoly poly = build_charpoly(spec);
      const auto profile = compute_root_profile(spec);
      for (std::size_t i = 0; i < profile.order(); ++i) {
        EXPECT_TRUE(poly.evaluate(profile.roots[i]).contains_zero()) << "k=" << k << " i=" << i;
        const ComplexBall product = profile.coefficients[i] * poly.derivative(profile.roots[i]);
        EXPECT_TRUE(overlaps(product, ComplexBall(Ball::from_int(1)))) << "k=" << k << " i=" << i;
      }
    }
  }
}

TEST(Properties, LemmaZeroAndSumRules) {
  for (int k = 2; k <= 6; ++k) {
    for (auto family : {FamilyKind::k_fibonacci, FamilyKind::k_bonacci}) {
      const auto spec = family_spec(FamilyId{family, k, {}});
      ASSERT_EQ(dominant_zero_hypotheses(spec).status, HypothesisStatus::holds);
      const auto profile = compute_root_profile(spec);
      EXPECT_TRUE(profile.dominant_root.is_positive());
      EXPECT_TRUE(profile.derivative_at_dominant.is_positive());
      EXPECT_TRUE(profile.c1().is_positive());
      EXPECT_LT(residual_check(spec, profile, 40).upper_double(), 1e-20);
    }
  }
}

TEST(Properties, DominanceOfBothFamilies) {
  for (int k = 2; k <= 10; ++k) {
    for (auto family : {FamilyKind::k_fibonacci, FamilyKind::k_bonacci}) {
      const auto profile = compute_root_profile(family_spec(FamilyId{family, k, {}}));
      EXPECT_LT(profile.dominance_ratio.upper_double(), 1.0) << k;
      EXPECT_GT(profile.derivative_at_dominant.lower_double(), 1.0) << k;
    }
  }
}

TEST(Properties, PrecisionRefinesEnclosures) {
  const auto low = compute_root_profile(kThreeBonacci, {128, 4096});
  const auto high = compute_root_profile(kThreeBonacci, {512, 4096});
  EXPECT_TRUE(low.dominant_root.contains(high.dominant_root));
  EXPECT_TRUE(low.c1().contains(high.c1()));
  EXPECT_LT(mpfr_get_d(high.dominant_root.rad().get(), MPFR_RNDU), mpfr_get_d(low.dominant_root.rad().get(), MPFR_RNDU));
}
