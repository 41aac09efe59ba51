#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entcat/error.hpp"
#include "entcat/tolerance.hpp"

namespace entcat {

/// Ordered Schmidt coefficients of a bipartite pure state: a nonempty,
/// nonincreasing, nonnegative probability vector. Immutable once built.
class OscVector {
 public:
  using const_iterator = std::vector<double>::const_iterator;

  /// Wraps coefficients the caller already knows to be sorted, nonnegative
  /// and normalized (products of valid vectors, simplex samples, ...).
  static OscVector trusted(std::vector<double> coeffs) { return OscVector(std::move(coeffs)); }

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  double operator[](std::size_t i) const noexcept { return coeffs_[i]; }
  double front() const noexcept { return coeffs_.front(); }
  double back() const noexcept { return coeffs_.back(); }
  const_iterator begin() const noexcept { return coeffs_.begin(); }
  const_iterator end() const noexcept { return coeffs_.end(); }

  double total() const noexcept { return std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0); }

  friend bool operator==(const OscVector&, const OscVector&) = default;

 private:
  explicit OscVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  std::vector<double> coeffs_;
};

/// Builds an OscVector from raw coefficients: entries within eps_norm below
/// zero are clamped, the rest are sorted nonincreasing. Trailing zeros are kept.
inline OscVector make_osc(std::span<const double> raw, const Tolerance& tol = {}) {
  if (raw.empty()) fail(ErrorCode::NotNormalized, "empty coefficient vector");
  std::vector<double> coeffs(raw.begin(), raw.end());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!std::isfinite(coeffs[i])) {
      fail(ErrorCode::NotNormalized, "entry " + std::to_string(i) + " is not finite");
    }
    if (coeffs[i] < -tol.eps_norm) {
      fail(ErrorCode::NegativeEntry,
           "entry " + std::to_string(i) + " = " + std::to_string(coeffs[i]) + " is negative");
    }
    coeffs[i] = std::max(coeffs[i], 0.0);
  }
  const double sum = std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
  if (std::abs(sum - 1.0) > tol.eps_norm) {
    fail(ErrorCode::NotNormalized, "coefficients sum to " + std::to_string(sum));
  }
  std::sort(coeffs.begin(), coeffs.end(), std::greater<>());
  return OscVector::trusted(std::move(coeffs));
}

inline OscVector make_osc(std::initializer_list<double> raw, const Tolerance& tol = {}) {
  return make_osc(std::span<const double>(raw.begin(), raw.size()), tol);
}

/// Extends v with zeros up to target_len.
inline OscVector pad(const OscVector& v, std::size_t target_len) {
  if (target_len < v.size()) {
    fail(ErrorCode::TargetTooSmall, "cannot pad length " + std::to_string(v.size()) + " to " +
                                        std::to_string(target_len));
  }
  std::vector<double> coeffs(v.begin(), v.end());
  coeffs.resize(target_len, 0.0);
  return OscVector::trusted(std::move(coeffs));
}

/// (1/k, ..., 1/k): the spectrum of a maximally entangled k x k state.
inline OscVector uniform_spectrum(std::size_t k) {
  if (k == 0) fail(ErrorCode::DomainError, "dimension must be positive");
  return OscVector::trusted(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

/// (1, 0, ..., 0): a product state padded to k entries.
inline OscVector separable_spectrum(std::size_t k = 1) {
  if (k == 0) fail(ErrorCode::DomainError, "dimension must be positive");
  std::vector<double> coeffs(k, 0.0);
  coeffs[0] = 1.0;
  return OscVector::trusted(std::move(coeffs));
}

}  // namespace entcat
