#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "entcat/catalysis.hpp"
#include "entcat/kway_merge.hpp"
#include "entcat/majorization.hpp"

namespace entcat {

/// Feasibility of psi (x) chi -> phi (x) chi' over residuals
/// chi' = (x1', x2', 1 - x1' - x2'), sampled at cell centers of a
/// resolution x resolution grid on [0,1]^2. Cell (i, j) covers
/// x1' in [i/R, (i+1)/R) and x2' in [j/R, (j+1)/R).
class RegionGrid {
 public:
  explicit RegionGrid(std::size_t resolution)
      : resolution_(resolution),
        valid_(resolution * resolution, 0),
        feasible_(resolution * resolution, 0) {}

  std::size_t resolution() const noexcept { return resolution_; }

  double center(std::size_t index) const noexcept {
    return (static_cast<double>(index) + 0.5) / static_cast<double>(resolution_);
  }

  /// Index of the cell whose half-open interval contains x.
  std::size_t cell_of(double x) const noexcept {
    const double scaled = std::floor(x * static_cast<double>(resolution_));
    return static_cast<std::size_t>(std::clamp(scaled, 0.0, double(resolution_ - 1)));
  }

  bool valid(std::size_t i, std::size_t j) const noexcept { return valid_[i * resolution_ + j]; }
  bool feasible(std::size_t i, std::size_t j) const noexcept {
    return feasible_[i * resolution_ + j];
  }

  std::size_t feasible_count() const noexcept {
    return static_cast<std::size_t>(std::count(feasible_.begin(), feasible_.end(), 1));
  }

  std::span<const std::uint8_t> valid_mask() const noexcept { return valid_; }
  std::span<const std::uint8_t> feasible_mask() const noexcept { return feasible_; }

  void set(std::size_t i, std::size_t j, bool valid, bool feasible) noexcept {
    valid_[i * resolution_ + j] = valid;
    feasible_[i * resolution_ + j] = feasible;
  }

 private:
  std::size_t resolution_;
  std::vector<std::uint8_t> valid_;
  std::vector<std::uint8_t> feasible_;
};

/// Residual (x1', x2', x3') at a cell center, or nothing when the point is
/// not an ordered probability vector.
inline std::optional<std::array<double, 3>> residual_at(double x1p, double x2p) {
  double x3p = 1.0 - x1p - x2p;
  if (std::abs(x3p) < 1e-12) x3p = 0.0;
  if (!(x1p >= x2p && x2p >= x3p && x3p >= 0.0)) return std::nullopt;
  return std::array<double, 3>{x1p, x2p, x3p};
}

inline RegionGrid mutual_region_scan(const OscVector& psi, const OscVector& phi,
                                     const OscVector& chi, std::size_t resolution,
                                     const Tolerance& tol = {}, unsigned threads = 1) {
  if (psi.size() != 3 || phi.size() != 3 || chi.size() != 3) {
    fail(ErrorCode::DomainError, "region scan expects 3-dimensional psi, phi and chi");
  }
  if (resolution == 0) fail(ErrorCode::DomainError, "resolution must be positive");

  RegionGrid grid(resolution);
  const OscVector source = tensor_spectrum(psi, chi);

  auto scan_rows = [&](std::size_t first, std::size_t stride) {
    MergeBuffer<double> scratch;
    std::array<double, 9> target{};
    for (std::size_t i = first; i < resolution; i += stride) {
      for (std::size_t j = 0; j < resolution; ++j) {
        const auto residual = residual_at(grid.center(i), grid.center(j));
        if (!residual) continue;
        merge_outer_product<double>(phi.coeffs(), *residual, target, scratch);
        grid.set(i, j, true, majorized_by(source.coeffs(), target, tol.eps_major));
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, resolution));
  if (workers == 1) {
    scan_rows(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan_rows, w, workers);
  }
  return grid;
}

/// The seven inequalities that carve out the feasible residuals for the
/// 3x3 mutual-assistance instance psi = (0.5, 0.26, 0.24),
/// phi = (0.49, 0.48, 0.03), chi = (0.62, 0.3, 0.08), with chi' assumed
/// incomparable to chi. Non-strict lines allow 1e-12 slack; the last is strict.
inline std::array<bool, 7> eq_sol_lines(double x1p, double x2p) {
  constexpr double slack = 1e-12;
  return {
      49.0 * x1p >= 31.0 - 49.0 * slack,
      0.97 * x1p + 0.49 * x2p >= 0.6212 - slack,
      0.97 * (x1p + x2p) >= 0.77 - slack,
      0.48 * x1p >= 0.49 * x2p - slack,
      0.49 * x1p + 0.97 * x2p >= 0.49 - slack,
      17.0 * x1p + 16.0 * x2p <= 16.0 + slack,
      x1p + x2p < 0.92,
  };
}

inline bool eq_sol_system(double x1p, double x2p) {
  const auto lines = eq_sol_lines(x1p, x2p);
  return std::all_of(lines.begin(), lines.end(), [](bool b) { return b; });
}

/// Both product spectra sort in the fixed interleaving the closed-form
/// system assumes: alpha2 x1 >= alpha1 x2 >= alpha3 x1 >= alpha2 x2,
/// alpha3 x2 >= alpha1 x3 and beta2 x1' >= beta1 x2', beta2 x2' >= beta1 x3',
/// beta2 x3' >= beta3 x1'.
inline bool interleaving_holds(const OscVector& psi, const OscVector& phi, const OscVector& chi,
                               std::span<const double> chi_prime, double slack = 1e-12) {
  const auto ge = [slack](double l, double r) { return l >= r - slack; };
  const double a1 = psi[0], a2 = psi[1], a3 = psi[2];
  const double b1 = phi[0], b2 = phi[1], b3 = phi[2];
  const double x1 = chi[0], x2 = chi[1], x3 = chi[2];
  const double y1 = chi_prime[0], y2 = chi_prime[1], y3 = chi_prime[2];
  return ge(a2 * x1, a1 * x2) && ge(a1 * x2, a3 * x1) && ge(a3 * x1, a2 * x2) &&
         ge(a3 * x2, a1 * x3) && ge(b2 * y1, b1 * y2) && ge(b2 * y2, b1 * y3) &&
         ge(b2 * y3, b3 * y1);
}

}  // namespace entcat
