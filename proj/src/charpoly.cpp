#include "logconc/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "logconc/error.hpp"

namespace logconc {

namespace {

std::vector<Ball> ball_coefficients(const CharPoly& poly, Precision prec) {
  std::vector<Ball> out;
  out.reserve(poly.coefficients().size());
  for (const auto& c : poly.coefficients()) out.push_back(Ball::from_rational(c, prec));
  return out;
}

template <typename Value>
Value horner(const std::vector<Ball>& coefficients, const Value& x) {
  Value acc(coefficients.front());
  for (std::size_t i = 1; i < coefficients.size(); ++i) acc = acc * x + Value(coefficients[i]);
  return acc;
}

template <typename Value>
Value horner_derivative(const std::vector<Ball>& coefficients, const Value& x) {
  const std::size_t k = coefficients.size() - 1;
  Value acc(coefficients.front() * static_cast<long>(k));
  for (std::size_t i = 1; i < k; ++i) {
    acc = acc * x + Value(coefficients[i] * static_cast<long>(k - i));
  }
  return acc;
}

// Sign of 2^{e k} D f(m / 2^e), where g = D f has integer coefficients.
int sign_at_dyadic(const std::vector<mpz_class>& g, const mpz_class& m, unsigned long e) {
  mpz_class acc = g.front();
  mpz_class shifted;
  for (std::size_t i = 1; i < g.size(); ++i) {
    acc *= m;
    mpz_mul_2exp(shifted.get_mpz_t(), g[i].get_mpz_t(), e * i);
    acc += shifted;
  }
  return sgn(acc);
}

Mpfr dyadic_to_mpfr(const mpz_class& m, unsigned long e) {
  Mpfr out(static_cast<Precision>(std::max<std::size_t>(mpz_sizeinbase(m.get_mpz_t(), 2), 2)));
  mpfr_set_z(out.get(), m.get_mpz_t(), MPFR_RNDN);  // exact at this precision
  mpfr_div_2ui(out.get(), out.get(), e, MPFR_RNDN);
  return out;
}

bool relative_step_small(const ComplexBall& step, const ComplexBall& z, Precision bits) {
  Ball step_norm = norm(step.midpoint()).midpoint();
  Ball z_norm = norm(z.midpoint()).midpoint();
  Mpfr threshold = z_norm.mid();
  mpfr_mul_2si(threshold.get(), threshold.get(), -2 * static_cast<long>(bits), MPFR_RNDN);
  return mpfr_cmp(step_norm.mid().get(), threshold.get()) <= 0;
}

// Gauss-Seidel Aberth iteration on midpoints. Returns false if a step
// divided by zero (coinciding approximations); the caller certifies anyway.
bool aberth_refine(const CharPoly& poly, std::vector<ComplexBall>& z, Precision wp, int max_iterations) {
  const auto coefficients = ball_coefficients(poly, wp);
  for (auto& zi : z) zi = zi.with_precision(wp).midpoint();
  const ComplexBall one(Ball::from_int(1, wp));
  int settled = 0;
  for (int iteration = 0; iteration < max_iterations && settled < 2; ++iteration) {
    bool converged = true;
    try {
      for (std::size_t i = 0; i < z.size(); ++i) {
        ComplexBall value = horner(coefficients, z[i]).midpoint();
        if (value.re.mid().sign() == 0 && value.im.mid().sign() == 0) continue;
        ComplexBall slope = horner_derivative(coefficients, z[i]).midpoint();
        ComplexBall newton = (value / slope).midpoint();
        ComplexBall repulsion(wp);
        for (std::size_t j = 0; j < z.size(); ++j) {
          if (j != i) repulsion = (repulsion + one / (z[i] - z[j]).midpoint()).midpoint();
        }
        ComplexBall step = (newton / (one - newton * repulsion).midpoint()).midpoint();
        z[i] = (z[i] - step).midpoint();
        if (!relative_step_small(step, z[i], wp - 8)) converged = false;
      }
    } catch (const Error&) {
      return false;
    }
    settled = converged ? settled + 1 : 0;
  }
  return true;
}

std::vector<ComplexBall> initial_guesses(const CharPoly& poly) {
  const std::size_t k = poly.degree();
  // Fujiwara's bound 2 max |a_i|^{1/i} on the root moduli.
  double bound = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    double magnitude = std::abs(poly.coefficients()[i].get_d());
    if (magnitude > 0) bound = std::max(bound, std::pow(magnitude, 1.0 / static_cast<double>(i)));
  }
  const double radius = std::max(bound, 0.5);
  std::vector<ComplexBall> z;
  for (std::size_t j = 0; j < k; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k) + 0.4;
    z.emplace_back(Ball::from_double(radius * std::cos(angle), 64), Ball::from_double(radius * std::sin(angle), 64));
  }
  return z;
}

bool less_in_modulus(const ComplexBall& a, const ComplexBall& b) {
  // Orders by decreasing midpoint modulus, then decreasing imaginary part.
  const int by_norm = mpfr_cmp(norm(a.midpoint()).mid().get(), norm(b.midpoint()).mid().get());
  if (by_norm != 0) return by_norm > 0;
  return mpfr_cmp(a.im.mid().get(), b.im.mid().get()) > 0;
}

Ball fold_max(const std::vector<Ball>& values) {
  Ball out = values.front();
  for (std::size_t i = 1; i < values.size(); ++i) out = max(out, values[i]);
  return out;
}

Ball fold_min(const std::vector<Ball>& values) {
  Ball out = values.front();
  for (std::size_t i = 1; i < values.size(); ++i) out = min(out, values[i]);
  return out;
}

ComplexBall product_of_differences(std::span<const ComplexBall> roots, std::size_t i) {
  ComplexBall product(Ball::from_int(1, roots[i].precision()));
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (j != i) product = product * (roots[i] - roots[j]);
  }
  return product;
}

[[noreturn]] void unresolved(const std::string& what) { throw Error(ErrorCode::unresolved, "unresolved: " + what); }

}  // namespace

CharPoly::CharPoly(std::vector<mpq_class> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.size() < 2 || coefficients_.front() != 1) {
    throw Error(ErrorCode::invalid_spec, "characteristic polynomial must be monic of degree >= 1");
  }
  if (coefficients_.back() == 0) {
    throw Error(ErrorCode::invalid_spec, "characteristic polynomial must have a nonzero constant term");
  }
}

mpq_class CharPoly::evaluate(const mpq_class& x) const {
  mpq_class acc = coefficients_.front();
  for (std::size_t i = 1; i < coefficients_.size(); ++i) acc = acc * x + coefficients_[i];
  return acc;
}

Ball CharPoly::evaluate(const Ball& x) const { return horner(ball_coefficients(*this, x.precision()), x); }

ComplexBall CharPoly::evaluate(const ComplexBall& x) const {
  return horner(ball_coefficients(*this, x.precision()), x);
}

Ball CharPoly::derivative(const Ball& x) const {
  return horner_derivative(ball_coefficients(*this, x.precision()), x);
}

ComplexBall CharPoly::derivative(const ComplexBall& x) const {
  return horner_derivative(ball_coefficients(*this, x.precision()), x);
}

std::string CharPoly::to_string() const {
  std::ostringstream out;
  const std::size_t k = degree();
  bool first = true;
  for (std::size_t i = 0; i <= k; ++i) {
    const mpq_class& c = coefficients_[i];
    if (c == 0) continue;
    const std::size_t power = k - i;
    mpq_class magnitude = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (magnitude != 1 || power == 0) {
      out << magnitude.get_str();
      if (power > 0) out << "*";
    }
    if (power >= 1) out << "x";
    if (power >= 2) out << "^" << power;
  }
  return out.str();
}

CharPoly build_charpoly(const RecurrenceSpec& spec) {
  std::vector<mpq_class> coefficients{mpq_class(1)};
  for (const auto& alpha : spec.coefficients()) coefficients.push_back(-alpha);
  return CharPoly(std::move(coefficients));
}

int descartes_positive_count(const CharPoly& poly) {
  int changes = 0;
  int previous = 0;
  for (const auto& c : poly.coefficients()) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++changes;
    previous = s;
  }
  return changes;
}

std::string hypotheses_name(const DominantZeroHypotheses& h) {
  switch (h.status) {
    case HypothesisStatus::holds: return "holds";
    case HypothesisStatus::reducible: return "reducible(" + std::to_string(h.support_gcd) + ")";
    case HypothesisStatus::unknown: return "unknown";
  }
  return "unknown";
}

DominantZeroHypotheses dominant_zero_hypotheses(const RecurrenceSpec& spec) {
  DominantZeroHypotheses out;
  out.support_gcd = support_gcd(spec);
  if (out.support_gcd > 1) {
    out.status = HypothesisStatus::reducible;
  } else if (!spec.has_nonnegative_coefficients()) {
    out.status = HypothesisStatus::unknown;
  } else {
    out.status = HypothesisStatus::holds;
  }
  return out;
}

Ball isolate_dominant_root(const CharPoly& poly, Precision precision) {
  if (descartes_positive_count(poly) != 1) {
    throw Error(ErrorCode::no_sign_change, "no-sign-change: f does not have exactly one sign change");
  }
  // Integer multiple of f so that signs at dyadic points are exact integers.
  mpz_class common = 1;
  for (const auto& c : poly.coefficients()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> g;
  for (const auto& c : poly.coefficients()) g.push_back(mpz_class(c * common));

  // Upper end: the classical bound 1 + max |alpha_i|, rounded up to an integer.
  mpq_class largest = 0;
  for (std::size_t i = 1; i < poly.coefficients().size(); ++i) largest = std::max(largest, mpq_class(abs(poly.coefficients()[i])));
  mpz_class upper = 1 + largest.get_num() / largest.get_den() + 1;

  // Lower end: largest power of two below the root, found by doubling from 1.
  mpz_class lo_m = 1;
  unsigned long e = 0;
  if (sign_at_dyadic(g, lo_m, e) < 0) {
    while (lo_m * 2 < upper && sign_at_dyadic(g, lo_m * 2, 0) < 0) lo_m *= 2;
  } else {
    constexpr unsigned long kMaxHalvings = 4096;
    while (sign_at_dyadic(g, lo_m, e) >= 0) {
      if (sign_at_dyadic(g, lo_m, e) == 0) {
        return Ball::from_endpoints(dyadic_to_mpfr(lo_m, e), dyadic_to_mpfr(lo_m, e), precision + 4);
      }
      if (++e > kMaxHalvings) {
        throw Error(ErrorCode::no_sign_change, "no-sign-change: could not find a point with f < 0");
      }
    }
  }
  mpz_class hi_m = upper << e;
  if (sign_at_dyadic(g, hi_m, e) <= 0) {
    throw Error(ErrorCode::no_sign_change, "no-sign-change: f is not positive at the upper bound");
  }

  // Bisect until the width is at most 2^-(precision+3) times the lower end.
  const long lo_bits = static_cast<long>(mpz_sizeinbase(lo_m.get_mpz_t(), 2)) - static_cast<long>(e);
  const long target = lo_bits - 1 - static_cast<long>(precision) - 3;
  for (;;) {
    mpz_class width = hi_m - lo_m;
    const long width_bits = static_cast<long>(mpz_sizeinbase(width.get_mpz_t(), 2)) - static_cast<long>(e);
    if (width_bits <= target) break;
    lo_m <<= 1;
    hi_m <<= 1;
    ++e;
    mpz_class mid = (lo_m + hi_m) / 2;
    const int s = sign_at_dyadic(g, mid, e);
    if (s == 0) return Ball::from_endpoints(dyadic_to_mpfr(mid, e), dyadic_to_mpfr(mid, e), precision + 4);
    if (s < 0) {
      lo_m = mid;
    } else {
      hi_m = mid;
    }
  }
  return Ball::from_endpoints(dyadic_to_mpfr(lo_m, e), dyadic_to_mpfr(hi_m, e), precision + 4);
}

std::vector<ComplexBall> all_roots(const CharPoly& poly, Precision precision) {
  const std::size_t k = poly.degree();
  const Precision wp = precision + 32;
  std::vector<ComplexBall> z = initial_guesses(poly);
  aberth_refine(poly, z, 64, 500);
  aberth_refine(poly, z, wp, 64 + static_cast<int>(wp / 4));

  // Gerschgorin disks of the companion-like matrix diag(z) - w 1^T: with
  // Weierstrass corrections w_i = f(z_i) / prod_{j != i}(z_i - z_j), the disks
  // centred at z_i - w_i of radius (k-1)|w_i| contain all roots, and each disk
  // disjoint from the others contains exactly one.
  const auto coefficients = ball_coefficients(poly, wp);
  std::vector<ComplexBall> boxes;
  boxes.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    ComplexBall denominator(Ball::from_int(1, wp));
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i) denominator = denominator * (z[i] - z[j]);
    }
    if (denominator.contains_zero()) {
      throw Error(ErrorCode::cluster_unresolved, "cluster-unresolved: coinciding root approximations");
    }
    ComplexBall correction = horner(coefficients, z[i]) / denominator;
    ComplexBall box = z[i] - correction;
    Mpfr reach = (abs(correction) * static_cast<long>(k - 1)).upper();
    box.re.add_error(reach);
    box.im.add_error(reach);
    boxes.push_back(std::move(box));
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (overlaps(boxes[i], boxes[j])) {
        throw Error(ErrorCode::cluster_unresolved,
                    "cluster-unresolved: root enclosures overlap at " + std::to_string(precision) + " bits");
      }
    }
  }
  // A box whose mirror image meets no other box holds a root equal to its own
  // conjugate, i.e. a real root.
  std::vector<bool> real(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    if (!boxes[i].im.contains_zero()) continue;
    const ComplexBall mirror = boxes[i].conj();
    bool alone = true;
    for (std::size_t j = 0; j < k && alone; ++j) {
      if (j != i && overlaps(mirror, boxes[j])) alone = false;
    }
    real[i] = alone;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (real[i]) boxes[i].im = Ball(boxes[i].im.precision());
  }
  std::sort(boxes.begin(), boxes.end(), less_in_modulus);
  return boxes;
}

std::vector<ComplexBall> closed_form_coeffs(std::span<const ComplexBall> roots, const CharPoly& poly) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (overlaps(roots[i], roots[j])) {
        throw Error(ErrorCode::distinctness_required, "distinctness-required: root enclosures overlap");
      }
    }
  }
  std::vector<ComplexBall> out;
  out.reserve(roots.size());
  const ComplexBall one(Ball::from_int(1, roots.front().precision()));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    ComplexBall by_product = one / product_of_differences(roots, i);
    ComplexBall by_derivative = one / poly.derivative(roots[i]);
    auto both = intersect(by_product, by_derivative);
    if (!both) {
      throw Error(ErrorCode::precision_failure, "product and derivative forms of c_" + std::to_string(i + 1) +
                                                    " do not intersect");
    }
    out.push_back(std::move(*both));
  }
  return out;
}

RootProfile root_profile_at(const RecurrenceSpec& spec, Precision precision) {
  const CharPoly poly = build_charpoly(spec);
  std::vector<ComplexBall> roots = all_roots(poly, precision);
  const std::size_t k = roots.size();

  std::vector<Ball> moduli;
  for (const auto& root : roots) moduli.push_back(abs(root));
  // roots[0] has the largest midpoint modulus; it must beat every other root.
  auto strictly_largest = [&](std::size_t candidate, std::size_t ignore) {
    for (std::size_t j = 0; j < k; ++j) {
      if (j == candidate || j == ignore) continue;
      if (!definitely_less(moduli[j], moduli[candidate])) return false;
    }
    return true;
  };
  if (!roots[0].is_real()) {
    // Its conjugate has the same modulus; if nothing else can reach it there
    // is provably no dominant zero.
    std::size_t partner = k;
    for (std::size_t j = 1; j < k; ++j) {
      if (overlaps(roots[0].conj(), roots[j])) partner = j;
    }
    if (partner < k && strictly_largest(0, partner)) {
      throw Error(ErrorCode::not_dominant, "not-dominant: the largest roots form a complex-conjugate pair");
    }
    unresolved("no real root separates in modulus from the others");
  }
  if (!strictly_largest(0, k)) unresolved("dominant root does not separate in modulus from the others");
  if (roots[0].re.is_negative()) {
    throw Error(ErrorCode::not_dominant, "not-dominant: the dominant zero is negative");
  }

  Ball dominant = roots[0].re;
  if (descartes_positive_count(poly) == 1) {
    auto refined = intersect(dominant, isolate_dominant_root(poly, precision));
    if (!refined) throw Error(ErrorCode::precision_failure, "bisection and root enclosure disagree");
    dominant = std::move(*refined);
    roots[0] = ComplexBall(dominant);
  }
  if (!dominant.is_positive()) unresolved("dominant root enclosure is not strictly positive");

  RootProfile profile;
  profile.coefficients = closed_form_coeffs(roots, poly);
  profile.derivative_at_dominant = poly.derivative(dominant);
  if (!profile.c1().is_positive() || !profile.derivative_at_dominant.is_positive()) {
    unresolved("c_1 or f'(lambda_1) is not certified positive");
  }
  std::vector<Ball> others(moduli.begin() + 1, moduli.end());
  profile.dominance_ratio = fold_max(others) / dominant;
  profile.dominant_root = std::move(dominant);
  profile.roots = std::move(roots);
  profile.distinct = true;
  profile.precision = precision;
  return profile;
}

RootProfile compute_root_profile(const RecurrenceSpec& spec, const NumericOptions& options) {
  for (Precision precision = options.precision;; precision *= 2) {
    try {
      return root_profile_at(spec, precision);
    } catch (const Error& e) {
      const bool retry = e.code() == ErrorCode::unresolved || e.code() == ErrorCode::cluster_unresolved ||
                         e.code() == ErrorCode::precision_failure;
      if (!retry || precision * 2 > options.precision_cap) throw;
    }
  }
}

Ball residual_check(const RecurrenceSpec& spec, const RootProfile& profile, std::size_t n_hi) {
  if (!spec.has_default_start()) {
    throw Error(ErrorCode::nondefault_initial_values, "closed form c_i = 1/f'(lambda_i) needs the default start");
  }
  const Precision prec = profile.roots.front().precision();
  const TermWindow window = generate_terms(spec, std::max(n_hi, spec.order() - 1));
  std::vector<ComplexBall> powers(profile.order(), ComplexBall(Ball::from_int(1, prec)));
  Ball worst(prec);
  for (std::size_t n = 0; n <= n_hi; ++n) {
    ComplexBall sum(prec);
    for (std::size_t i = 0; i < profile.order(); ++i) {
      sum = sum + profile.coefficients[i] * powers[i];
      powers[i] = powers[i] * profile.roots[i];
    }
    Ball residual = abs(ComplexBall(Ball::from_rational(window[n], prec)) - sum);
    worst = n == 0 ? residual : max(worst, residual);
  }
  return worst;
}

Ball e_n_value(const mpq_class& term, const RootProfile& profile, std::size_t n) {
  const Precision prec = profile.dominant_root.precision();
  Ball scale = profile.c1() * pow(profile.dominant_root, n);
  return Ball::from_rational(term, prec) / scale - 1;
}

Ball e_n_value(const RecurrenceSpec& spec, const RootProfile& profile, std::size_t n) {
  const TermWindow window = generate_terms(spec, std::max(n, spec.order() - 1));
  return e_n_value(window[n], profile, n);
}

TailBound tail_constants(const RootProfile& profile, std::size_t k) {
  if (!profile.distinct) throw Error(ErrorCode::distinctness_required, "distinctness-required");
  Mpfr one(profile.dominance_ratio.precision());
  mpfr_set_ui(one.get(), 1, MPFR_RNDN);
  if (mpfr_cmp(profile.dominance_ratio.upper().get(), one.get()) >= 0) {
    throw Error(ErrorCode::not_dominant, "not-dominant: dominance ratio enclosure reaches 1");
  }
  std::vector<Ball> magnitudes;
  for (std::size_t i = 1; i < profile.coefficients.size(); ++i) magnitudes.push_back(abs(profile.coefficients[i]));
  TailBound bound;
  bound.scale = fold_max(magnitudes) * static_cast<long>(k - 1) / profile.c1();
  bound.ratio = profile.dominance_ratio;
  bound.start = 0;
  return bound;
}

Ball separation_min(const RootProfile& profile) {
  if (!profile.distinct) throw Error(ErrorCode::distinctness_required, "distinctness-required");
  std::vector<Ball> products;
  for (std::size_t i = 1; i < profile.roots.size(); ++i) {
    products.push_back(abs(product_of_differences(profile.roots, i)));
  }
  return fold_min(products);
}

}  // namespace logconc
