#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string_view>

#include "entcat/error.hpp"
#include "entcat/majorization.hpp"
#include "entcat/osc_vector.hpp"
#include "entcat/spectrum.hpp"
#include "entcat/tolerance.hpp"

namespace entcat {

/// Source and target spectra of a requested transformation psi -> phi.
struct TransformQuery {
  OscVector psi;
  OscVector phi;

  std::size_t common_length() const noexcept { return std::max(psi.size(), phi.size()); }
};

enum class CatalystKind { Standard, Super, Sub, TimeReverse };

constexpr std::string_view to_string(CatalystKind k) noexcept {
  switch (k) {
    case CatalystKind::Standard: return "Standard";
    case CatalystKind::Super: return "Super";
    case CatalystKind::Sub: return "Sub";
    case CatalystKind::TimeReverse: return "TimeReverse";
  }
  return "Unknown";
}

/// How a catalyst chi -> chi' fared. `kind` is TimeReverse whenever the two
/// product spectra coincide; `entropy_kind` always holds the entropy label.
struct CatalystClass {
  CatalystKind kind;
  CatalystKind entropy_kind;
  bool time_reverse;
  double entropy_before;
  double entropy_after;
};

struct CatalystReport {
  bool feasible = false;
  std::optional<CatalystClass> classification;
  std::optional<OscVector> residual;
};

/// Deterministic LOCC convertibility psi -> phi (Nielsen's criterion).
inline bool locc_feasible(const TransformQuery& q, const Tolerance& tol = {}) {
  return majorized_by(q.psi, q.phi, tol);
}

/// psi (x) chi and phi (x) chi' have the same spectrum, so the assisted
/// transformation runs both ways.
inline bool is_time_reverse(const TransformQuery& q, const OscVector& chi,
                            const OscVector& chi_prime, const Tolerance& tol = {}) {
  const OscVector left = tensor_spectrum(q.psi, chi);
  const OscVector right = tensor_spectrum(q.phi, chi_prime);
  const std::size_t n = std::max(left.size(), right.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double l = i < left.size() ? left[i] : 0.0;
    const double r = i < right.size() ? right[i] : 0.0;
    if (std::abs(l - r) > tol.eps_major) return false;
  }
  return true;
}

inline CatalystClass classify_catalyst(const TransformQuery& q, const OscVector& chi,
                                       const OscVector& chi_prime, const Tolerance& tol = {}) {
  if (!majorized_by(tensor_spectrum(q.psi, chi), tensor_spectrum(q.phi, chi_prime), tol)) {
    fail(ErrorCode::NotACatalyst, "psi (x) chi does not convert to phi (x) chi'");
  }
  CatalystClass c{};
  c.entropy_before = entropy_bits(chi);
  c.entropy_after = entropy_bits(chi_prime);
  if (std::abs(c.entropy_before - c.entropy_after) <= tol.eps_entropy) {
    c.entropy_kind = CatalystKind::Standard;
  } else if (c.entropy_after > c.entropy_before) {
    c.entropy_kind = CatalystKind::Super;
  } else {
    c.entropy_kind = CatalystKind::Sub;
  }
  c.time_reverse = is_time_reverse(q, chi, chi_prime, tol);
  c.kind = c.time_reverse ? CatalystKind::TimeReverse : c.entropy_kind;
  return c;
}

/// chi is a general catalyst iff the transformation succeeds when chi is
/// consumed completely, i.e. psi (x) chi is majorized by phi. The reported
/// residual is therefore the separable witness (1).
inline CatalystReport is_general_catalyst(const TransformQuery& q, const OscVector& chi,
                                          const Tolerance& tol = {}) {
  CatalystReport report;
  report.feasible = majorized_by(tensor_spectrum(q.psi, chi), q.phi, tol);
  if (report.feasible) {
    report.residual = separable_spectrum();
    report.classification = classify_catalyst(q, chi, *report.residual, tol);
  }
  return report;
}

namespace detail {

inline void require_two_by_two(const TransformQuery& q, double x, const Tolerance& tol) {
  if (q.psi.size() != 2 || q.phi.size() != 2) {
    fail(ErrorCode::DomainError, "expected a 2x2 transformation");
  }
  if (locc_feasible(q, tol)) fail(ErrorCode::DomainError, "psi already converts to phi");
  if (!(x >= 0.5 && x <= 1.0)) fail(ErrorCode::DomainError, "x must lie in [0.5, 1]");
}

}  // namespace detail

/// For 2x2 states, chi = (x, 1-x) is a general catalyst iff x <= beta1/alpha1.
inline bool theorem1_is_catalyst(const TransformQuery& q, double x, const Tolerance& tol = {}) {
  detail::require_two_by_two(q, x, tol);
  return q.psi[0] * x <= q.phi[0] + tol.eps_major;
}

/// Smallest x' such that psi (x) (x, 1-x) converts to phi (x) (x', 1-x').
inline double theorem1_min_residual(const TransformQuery& q, double x, const Tolerance& tol = {}) {
  if (q.psi.size() == 2 && q.phi.size() == 2 && q.phi[1] == 0.0) {
    fail(ErrorCode::DegenerateTarget, "beta2 = 0");
  }
  if (!theorem1_is_catalyst(q, x, tol)) {
    fail(ErrorCode::DomainError, "(x, 1-x) is not a catalyst: x > beta1/alpha1");
  }
  const double a1 = q.psi[0], a2 = q.psi[1];
  const double b1 = q.phi[0], b2 = q.phi[1];
  // alpha2 (1-x) >= beta2 (1-x'), from the third partial sum.
  const double tail = 1.0 - (a2 / b2) * (1.0 - x);
  double x_prime = std::max((a1 / b1) * x, tail);
  if (x < a1) x_prime = std::max(x_prime, a1);
  return std::min(x_prime, 1.0);
}

/// For incomparable 3x3 states, any chi with chi[0] below this bound is a
/// general catalyst.
inline double theorem2_bound(const TransformQuery& q, const Tolerance& tol = {}) {
  if (q.psi.size() != 3 || q.phi.size() != 3) {
    fail(ErrorCode::DomainError, "expected a 3x3 transformation");
  }
  if (majorizes_check(q.psi, q.phi, tol).relation != Relation::Incomparable) {
    fail(ErrorCode::DomainError, "psi and phi are comparable");
  }
  return std::min(q.phi[0] / q.psi[0], (q.phi[0] + q.phi[1]) / (q.psi[0] + q.psi[1]));
}

/// True when alpha1 > beta1 and alpha_n < beta_n (n the common padded
/// length); a 2- or 3-dimensional catalyst chi -> chi' is then necessarily a
/// subcatalyst, chi strictly majorized by chi'.
inline bool theorem3_subcatalyst_forced(const TransformQuery& q, const OscVector& chi,
                                        const OscVector& chi_prime, const Tolerance& tol = {}) {
  const bool dims_ok = chi.size() == chi_prime.size() && (chi.size() == 2 || chi.size() == 3);
  if (!dims_ok) fail(ErrorCode::DomainError, "chi and chi' must both be 2- or 3-dimensional");
  if (!majorized_by(tensor_spectrum(q.psi, chi), tensor_spectrum(q.phi, chi_prime), tol)) {
    fail(ErrorCode::DomainError, "psi (x) chi does not convert to phi (x) chi'");
  }
  const std::size_t n = q.common_length();
  const double alpha_n = n <= q.psi.size() ? q.psi[n - 1] : 0.0;
  const double beta_n = n <= q.phi.size() ? q.phi[n - 1] : 0.0;
  return q.psi[0] > q.phi[0] && alpha_n < beta_n;
}

/// A 2 x n source that cannot reach phi admits no standard catalyst and no
/// supercatalyst. Returns true whenever the preconditions hold.
inline bool theorem4_no_go(const TransformQuery& q, const Tolerance& tol = {}) {
  if (q.psi.size() != 2) fail(ErrorCode::DomainError, "psi must have two Schmidt coefficients");
  if (locc_feasible(q, tol)) fail(ErrorCode::DomainError, "psi already converts to phi");
  return true;
}

/// 2 -> 3 transformation with chi = (x, 1-x) consumed completely: feasible
/// iff alpha1 <= beta1 + beta2 and x <= min(beta1/alpha1, beta1 + beta2).
inline bool example1_condition(const TransformQuery& q, double x, const Tolerance& tol = {}) {
  if (q.psi.size() != 2 || q.phi.size() != 3) {
    fail(ErrorCode::DomainError, "expected a 2 -> 3 transformation");
  }
  if (locc_feasible(q, tol)) fail(ErrorCode::DomainError, "psi already converts to phi");
  if (!(x >= 0.5 && x <= 1.0)) fail(ErrorCode::DomainError, "x must lie in [0.5, 1]");
  const double a1 = q.psi[0];
  const double top_two = q.phi[0] + q.phi[1];
  return a1 <= top_two + tol.eps_major && a1 * x <= q.phi[0] + tol.eps_major &&
         x <= top_two + tol.eps_major;
}

}  // namespace entcat
