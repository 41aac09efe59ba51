#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string_view>

#include "entcat/osc_vector.hpp"
#include "entcat/tolerance.hpp"

namespace entcat {

enum class Relation { MajorizedBy, Majorizes, Equivalent, Incomparable };

constexpr std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::MajorizedBy: return "MajorizedBy";
    case Relation::Majorizes: return "Majorizes";
    case Relation::Equivalent: return "Equivalent";
    case Relation::Incomparable: return "Incomparable";
  }
  return "Unknown";
}

/// Outcome of testing "a is majorized by b". first_violation is the 1-based
/// prefix length l of the first failing partial-sum inequality, present
/// exactly when a is not majorized by b.
struct MajorizationVerdict {
  Relation relation;
  std::optional<std::size_t> first_violation;

  /// a converts to b under LOCC.
  bool holds() const noexcept {
    return relation == Relation::MajorizedBy || relation == Relation::Equivalent;
  }

  friend bool operator==(const MajorizationVerdict&, const MajorizationVerdict&) = default;
};

/// Smallest l (1-based) with sum_{i<=l} a_i > sum_{i<=l} b_i + eps, or 0 if
/// none. Inputs are nonincreasing; the shorter one is implicitly zero-padded.
/// Partial sums are taken relative to each vector's own total so that inputs
/// normalized only to within eps_norm still compare equal at the end.
inline std::size_t first_majorization_violation(std::span<const double> a,
                                                std::span<const double> b, double eps) {
  const double total_a = std::accumulate(a.begin(), a.end(), 0.0);
  const double total_b = std::accumulate(b.begin(), b.end(), 0.0);
  const double inv_a = 1.0 / total_a;
  const double inv_b = 1.0 / total_b;
  const std::size_t n = std::max(a.size(), b.size());
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (std::size_t l = 0; l + 1 < n; ++l) {
    if (l < a.size()) sum_a += a[l];
    if (l < b.size()) sum_b += b[l];
    if (sum_a * inv_a > sum_b * inv_b + eps) return l + 1;
  }
  return 0;
}

/// a is majorized by b (a < b in the majorization preorder).
inline bool majorized_by(std::span<const double> a, std::span<const double> b, double eps) {
  return first_majorization_violation(a, b, eps) == 0;
}

inline bool majorized_by(const OscVector& a, const OscVector& b, const Tolerance& tol = {}) {
  return majorized_by(a.coeffs(), b.coeffs(), tol.eps_major);
}

inline MajorizationVerdict majorizes_check(const OscVector& a, const OscVector& b,
                                           const Tolerance& tol = {}) {
  const std::size_t forward = first_majorization_violation(a.coeffs(), b.coeffs(), tol.eps_major);
  const bool backward = majorized_by(b.coeffs(), a.coeffs(), tol.eps_major);
  if (forward == 0) {
    return {backward ? Relation::Equivalent : Relation::MajorizedBy, std::nullopt};
  }
  return {backward ? Relation::Majorizes : Relation::Incomparable, forward};
}

}  // namespace entcat
