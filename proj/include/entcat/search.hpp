#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

#include "entcat/catalysis.hpp"
#include "entcat/kway_merge.hpp"
#include "entcat/majorization.hpp"
#include "entcat/rng.hpp"

namespace entcat {

/// Writes a flat-Dirichlet sample on the (k-1)-simplex into `out`, sorted
/// nonincreasing. Uses normalized unit exponentials.
inline void sample_sorted_simplex_into(std::span<double> out, Xoshiro256& rng) {
  if (out.size() == 1) {
    out[0] = 1.0;
    return;
  }
  double total = 0.0;
  for (double& x : out) total += x = -std::log(rng.uniform_open_closed());
  const double inv = 1.0 / total;
  for (double& x : out) x *= inv;
  std::sort(out.begin(), out.end(), std::greater<>());
}

inline OscVector sample_sorted_simplex(std::size_t k, Xoshiro256& rng) {
  if (k == 0) fail(ErrorCode::DomainError, "k must be positive");
  std::vector<double> coeffs(k);
  sample_sorted_simplex_into(coeffs, rng);
  return OscVector::trusted(std::move(coeffs));
}

/// Whether some k x k state is a general catalyst for psi -> phi. It suffices
/// to feed a maximally entangled k x k ancilla and aim for phi alone; only the
/// first n-1 partial sums can fail, because phi's sums reach 1 at n.
inline bool general_catalyst_exists(const TransformQuery& q, std::size_t k,
                                    const Tolerance& tol = {}) {
  if (k == 0) fail(ErrorCode::DomainError, "k must be positive");
  if (locc_feasible(q, tol)) return true;
  const std::size_t n = q.common_length();
  if (k >= n) return true;

  const double inv_psi = 1.0 / q.psi.total();
  const double inv_phi = 1.0 / q.phi.total();
  const double inv_k = 1.0 / static_cast<double>(k);
  double source = 0.0;  // sum of the l largest entries of psi (x) uniform_k
  double target = 0.0;
  for (std::size_t l = 0; l + 1 < n; ++l) {
    const std::size_t block = l / k;
    if (block < q.psi.size()) source += q.psi[block] * inv_k;
    if (l < q.phi.size()) target += q.phi[l];
    if (source * inv_psi > target * inv_phi + tol.eps_major) return false;
  }
  return true;
}

struct SearchConfig {
  std::size_t k = 2;
  std::uint64_t big_number = 1000;
  std::uint64_t seed = 0;
  Tolerance tol{};
  /// Worker count; changes speed only, never the outcome.
  unsigned threads = 1;
};

enum class SearchStatus { Success, Failure };

constexpr std::string_view to_string(SearchStatus s) noexcept {
  return s == SearchStatus::Success ? "Success" : "Failure";
}

struct SearchOutcome {
  SearchStatus status = SearchStatus::Failure;
  std::optional<OscVector> catalyst;
  std::uint64_t trials_used = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SearchOutcome&, const SearchOutcome&) = default;
};

/// Per-thread buffers for the trial loop.
class TrialWorkspace {
 public:
  TrialWorkspace(std::size_t n_psi, std::size_t n_phi, std::size_t k)
      : chi_(k), source_(n_psi * k), target_(n_phi * k) {}

  std::span<const double> chi() const noexcept { return chi_; }

  /// Draws the candidate of trial `trial` and tests psi (x) chi < phi (x) chi.
  bool run_trial(const TransformQuery& q, std::uint64_t seed, std::uint64_t trial, double eps) {
    Xoshiro256 rng = substream(seed, trial);
    sample_sorted_simplex_into(chi_, rng);
    merge_outer_product<double>(q.psi.coeffs(), chi_, source_, scratch_);
    merge_outer_product<double>(q.phi.coeffs(), chi_, target_, scratch_);
    return majorized_by(source_, target_, eps);
  }

 private:
  std::vector<double> chi_;
  std::vector<double> source_;
  std::vector<double> target_;
  MergeBuffer<double> scratch_;
};

/// Index of the first trial in [0, budget) whose candidate is a standard
/// catalyst, or nothing. Sequential-equivalent for any thread count.
inline std::optional<std::uint64_t> first_successful_trial(const TransformQuery& q,
                                                           std::size_t k, std::uint64_t budget,
                                                           std::uint64_t seed, double eps,
                                                           unsigned threads = 1) {
  constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  if (threads <= 1 || budget < 2) {
    TrialWorkspace ws(q.psi.size(), q.phi.size(), k);
    for (std::uint64_t t = 0; t < budget; ++t) {
      if (ws.run_trial(q, seed, t, eps)) return t;
    }
    return std::nullopt;
  }

  constexpr std::uint64_t block = 256;
  std::atomic<std::uint64_t> next_block{0};
  std::atomic<std::uint64_t> found{none};
  auto worker = [&] {
    TrialWorkspace ws(q.psi.size(), q.phi.size(), k);
    for (;;) {
      const std::uint64_t begin = next_block.fetch_add(1) * block;
      if (begin >= budget || begin >= found.load()) return;
      const std::uint64_t end = std::min(budget, begin + block);
      for (std::uint64_t t = begin; t < end && t < found.load(); ++t) {
        if (ws.run_trial(q, seed, t, eps)) {
          std::uint64_t current = found.load();
          while (t < current && !found.compare_exchange_weak(current, t)) {
          }
          return;
        }
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  const std::uint64_t t = found.load();
  if (t == none) return std::nullopt;
  return t;
}

/// Randomized search for a k x k standard catalyst: up to big_number
/// candidates, trial t drawn from substream t of the seed. Failure is
/// one-sided evidence; a catalyst may exist but have been missed.
inline SearchOutcome monte_carlo_standard_catalyst(const TransformQuery& q,
                                                   const SearchConfig& cfg) {
  if (cfg.k == 0) fail(ErrorCode::DomainError, "k must be positive");
  if (cfg.big_number == 0) fail(ErrorCode::DomainError, "trial budget must be positive");
  if (locc_feasible(q, cfg.tol)) fail(ErrorCode::DomainError, "psi already converts to phi");

  SearchOutcome outcome;
  outcome.seed = cfg.seed;
  const auto hit =
      first_successful_trial(q, cfg.k, cfg.big_number, cfg.seed, cfg.tol.eps_major, cfg.threads);
  if (!hit) {
    outcome.trials_used = cfg.big_number;
    return outcome;
  }
  Xoshiro256 rng = substream(cfg.seed, *hit);
  outcome.catalyst = sample_sorted_simplex(cfg.k, rng);
  outcome.status = SearchStatus::Success;
  outcome.trials_used = *hit + 1;
  return outcome;
}

/// Grid enumeration of sorted simplex points (k = 2 or 3) at spacing `step`;
/// returns the first standard catalyst met. Ground truth for small cases.
inline std::optional<OscVector> exhaustive_catalyst_oracle(const TransformQuery& q, std::size_t k,
                                                           double step,
                                                           const Tolerance& tol = {}) {
  if (k != 2 && k != 3) fail(ErrorCode::DomainError, "oracle supports k = 2 or 3");
  if (!(step >= 1e-5 && step <= 0.1)) fail(ErrorCode::DomainError, "step must lie in [1e-5, 0.1]");
  if (locc_feasible(q, tol)) fail(ErrorCode::DomainError, "psi already converts to phi");

  std::vector<double> source(q.psi.size() * k);
  std::vector<double> target(q.phi.size() * k);
  MergeBuffer<double> scratch;
  auto is_catalyst = [&](std::span<const double> chi) {
    merge_outer_product<double>(q.psi.coeffs(), chi, source, scratch);
    merge_outer_product<double>(q.phi.coeffs(), chi, target, scratch);
    return majorized_by(source, target, tol.eps_major);
  };

  const auto steps = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  if (k == 2) {
    for (std::size_t i = 0;; ++i) {
      const double x = 0.5 + static_cast<double>(i) * step;
      if (x > 1.0 + 1e-12) break;
      const std::array<double, 2> chi{std::min(x, 1.0), std::max(1.0 - x, 0.0)};
      if (is_catalyst(chi)) return OscVector::trusted(std::vector<double>(chi.begin(), chi.end()));
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i <= steps; ++i) {
    const double x1 = static_cast<double>(i) * step;
    for (std::size_t j = 0; j <= i; ++j) {
      const double x2 = static_cast<double>(j) * step;
      double x3 = 1.0 - x1 - x2;
      if (std::abs(x3) < 1e-12) x3 = 0.0;
      if (x3 < 0.0) break;
      if (x3 > x2) continue;
      const std::array<double, 3> chi{x1, x2, x3};
      if (is_catalyst(chi)) return OscVector::trusted(std::vector<double>(chi.begin(), chi.end()));
    }
  }
  return std::nullopt;
}

}  // namespace entcat
