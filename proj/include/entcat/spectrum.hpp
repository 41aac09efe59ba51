#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "entcat/kway_merge.hpp"
#include "entcat/osc_vector.hpp"

namespace entcat {

/// Schmidt coefficients of the product state a (x) b, nonincreasing.
inline OscVector tensor_spectrum(const OscVector& a, const OscVector& b) {
  std::vector<double> out(a.size() * b.size());
  MergeBuffer<double> scratch;
  merge_outer_product<double>(a.coeffs(), b.coeffs(), out, scratch);
  return OscVector::trusted(std::move(out));
}

inline std::vector<double> partial_sums(std::span<const double> v) {
  std::vector<double> sums(v.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sums[i] = acc += v[i];
  return sums;
}

inline std::vector<double> partial_sums(const OscVector& v) { return partial_sums(v.coeffs()); }

/// Entanglement entropy in bits, with 0 log 0 = 0.
inline double entropy_bits(std::span<const double> v) {
  double h = 0.0;
  for (double p : v) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

inline double entropy_bits(const OscVector& v) { return entropy_bits(v.coeffs()); }

}  // namespace entcat
