#include "logconc/catalog.hpp"

#include <charconv>
#include <utility>

#include "logconc/error.hpp"

namespace logconc {

namespace {

struct Alias {
  std::string_view name;
  FamilyKind kind;
  int k;
};

constexpr Alias kAliases[] = {
    {"fibonacci", FamilyKind::k_fibonacci, 2},    {"tribonacci", FamilyKind::k_fibonacci, 3},
    {"tetranacci", FamilyKind::k_fibonacci, 4},   {"three_bonacci", FamilyKind::k_bonacci, 3},
    {"four_bonacci", FamilyKind::k_bonacci, 4},
};

FamilyId make(FamilyKind kind, int k) {
  if (k < 2) throw Error(ErrorCode::invalid_spec, "family parameter k must be at least 2, got " + std::to_string(k));
  return FamilyId{kind, k, {}};
}

}  // namespace

std::string_view family_kind_name(FamilyKind kind) {
  return kind == FamilyKind::k_fibonacci ? "kfib" : "kbon";
}

std::string FamilyId::canonical_name() const { return std::string(family_kind_name(kind)) + ":" + std::to_string(k); }

FamilyKind parse_family_kind(std::string_view text) {
  if (text == "kfib" || text == "k_fibonacci") return FamilyKind::k_fibonacci;
  if (text == "kbon" || text == "k_bonacci") return FamilyKind::k_bonacci;
  throw Error(ErrorCode::parse_error, "unknown family kind '" + std::string(text) + "'");
}

FamilyId parse_family(std::string_view text) {
  for (const auto& alias : kAliases) {
    if (text == alias.name) {
      FamilyId id = make(alias.kind, alias.k);
      id.alias = alias.name;
      return id;
    }
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::parse_error, "unknown family '" + std::string(text) + "'; expected e.g. kfib:5");
  }
  const FamilyKind kind = parse_family_kind(text.substr(0, colon));
  const std::string_view digits = text.substr(colon + 1);
  int k = 0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc() || end != digits.data() + digits.size()) {
    throw Error(ErrorCode::parse_error, "malformed family parameter in '" + std::string(text) + "'");
  }
  return make(kind, k);
}

FamilyId k_fibonacci(int k) { return make(FamilyKind::k_fibonacci, k); }
FamilyId k_bonacci(int k) { return make(FamilyKind::k_bonacci, k); }

RecurrenceSpec family_spec(const FamilyId& id) {
  const FamilyId checked = make(id.kind, id.k);
  std::vector<mpq_class> alpha(static_cast<std::size_t>(checked.k), mpq_class(0));
  if (checked.kind == FamilyKind::k_fibonacci) {
    for (auto& a : alpha) a = 1;
  } else {
    alpha.front() = 1;
    alpha.back() = 1;
  }
  return RecurrenceSpec::with_default_start(std::move(alpha), FamilyTag{std::string(family_kind_name(checked.kind)), checked.k});
}

Theorem2Audit theorem2_audit(const FamilyId& id, Precision precision) {
  Theorem2Audit audit;
  audit.id = id;
  const RecurrenceSpec spec = family_spec(id);
  const CharPoly poly = build_charpoly(spec);
  const long k = id.k;

  audit.hypotheses = dominant_zero_hypotheses(spec);
  if (audit.hypotheses.status != HypothesisStatus::holds) {
    audit.failures.push_back("dominant-zero hypotheses: " + hypotheses_name(audit.hypotheses));
  }
  audit.lambda = isolate_dominant_root(poly, precision);
  const Ball& lambda = audit.lambda;
  audit.derivative = poly.derivative(lambda);
  if (!definitely_less(Ball::from_int(1, precision), audit.derivative)) {
    audit.failures.push_back("f'(lambda) > 1 not certified");
  }

  if (id.kind == FamilyKind::k_fibonacci) {
    Ball sum = Ball::from_int(k, precision) / lambda;
    for (long j = 1; j <= k - 1; ++j) sum = sum + pow(lambda, static_cast<unsigned long>(k - 1 - j)) * j;
    audit.identity = std::move(sum);
  } else {
    audit.f_at_one = poly.evaluate(mpq_class(1));
    if (sgn(*audit.f_at_one) >= 0) audit.failures.push_back("f(1) < 0 fails");
    if (!definitely_less(Ball::from_int(1, precision), lambda)) audit.failures.push_back("lambda > 1 not certified");
    audit.identity = pow(lambda, static_cast<unsigned long>(k - 2)) * ((lambda - 1) * k + 1);
  }
  if (!overlaps(audit.identity, audit.derivative)) {
    audit.failures.push_back("closed form of f'(lambda) does not overlap the direct evaluation");
  }
  audit.passed = audit.failures.empty();
  return audit;
}

}  // namespace logconc
