#pragma once

#include "entcat/error.hpp"

namespace entcat {

/// Floating-point slack used by every comparison in the library.
///
/// eps_major loosens the "<=" side of each partial-sum comparison, eps_norm
/// bounds how far an input may sit from the probability simplex, and
/// eps_entropy decides when two entropies count as equal.
struct Tolerance {
  double eps_major = 1e-12;
  double eps_norm = 1e-9;
  double eps_entropy = 1e-9;

  friend bool operator==(const Tolerance&, const Tolerance&) = default;
};

inline const Tolerance& validate(const Tolerance& tol) {
  auto ok = [](double e) { return e > 0.0 && e < 1e-3; };
  if (!ok(tol.eps_major) || !ok(tol.eps_norm) || !ok(tol.eps_entropy)) {
    fail(ErrorCode::DomainError, "tolerances must lie in (0, 1e-3)");
  }
  return tol;
}

}  // namespace entcat
