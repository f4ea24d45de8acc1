#ifndef LOGCONC_CATALOG_HPP
#define LOGCONC_CATALOG_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logconc/ball.hpp"
#include "logconc/charpoly.hpp"
#include "logconc/exact_sequences.hpp"

namespace logconc {

enum class FamilyKind { k_fibonacci, k_bonacci };

/// k-Fibonacci: alpha_1 = ... = alpha_k = 1. k-bonacci: alpha_1 = alpha_k = 1,
/// the rest 0. Both give Fibonacci at k = 2.
struct FamilyId {
  FamilyKind kind = FamilyKind::k_fibonacci;
  int k = 2;
  std::string alias;  // "tribonacci" etc. when parsed from a name, else empty

  std::string canonical_name() const;  // "kfib:3"
};

std::string_view family_kind_name(FamilyKind kind);

/// "kfib", "kbon", "k_fibonacci", "k_bonacci".
FamilyKind parse_family_kind(std::string_view text);

/// Accepts "kfib:5", "kbon:3", "k_fibonacci:5", "k_bonacci:3", "fibonacci",
/// "tribonacci", "tetranacci", "three_bonacci", "four_bonacci".
FamilyId parse_family(std::string_view text);

FamilyId k_fibonacci(int k);
FamilyId k_bonacci(int k);

RecurrenceSpec family_spec(const FamilyId& id);

struct Theorem2Audit {
  FamilyId id;
  DominantZeroHypotheses hypotheses;
  Ball lambda;
  Ball derivative;            // f'(lambda) from the polynomial
  Ball identity;              // f'(lambda) from the family's closed form
  std::optional<mpq_class> f_at_one;  // k-bonacci only
  bool passed = false;
  std::vector<std::string> failures;
};

/// Dominant-zero hypotheses, f'(lambda) > 1, and the closed forms
///   k-Fibonacci: f'(lambda) = k/lambda + sum_{j=1}^{k-1} j lambda^{k-1-j},
///   k-bonacci:   f(1) < 0 and f'(lambda) = lambda^{k-2} (1 + k(lambda - 1)),
/// each closed form required to overlap the direct evaluation.
Theorem2Audit theorem2_audit(const FamilyId& id, Precision precision = kDefaultPrecision);

}  // namespace logconc

#endif  // LOGCONC_CATALOG_HPP
