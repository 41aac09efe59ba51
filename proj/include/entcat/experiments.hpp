#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "entcat/catalysis.hpp"
#include "entcat/rng.hpp"
#include "entcat/search.hpp"

namespace entcat {

/// Parameters of the catalyzable-pair generator.
struct PairGenSpec {
  std::size_t n = 8;
  std::size_t k = 4;
  std::size_t count = 5000;
  std::uint64_t seed = 20070101;
  /// Per-pair cap on rejected draws.
  std::uint64_t max_rejections = 100000;
  Tolerance tol{};
  unsigned threads = 1;
};

/// A transformation psi -/-> phi together with a certificate chi such that
/// psi (x) chi is majorized by phi (x) chi.
struct CatalyzablePair {
  TransformQuery query;
  OscVector witness;
  std::uint64_t seed;  // substream key the pair was drawn from
  std::size_t index;
};

inline bool certifies(const CatalyzablePair& pair, const Tolerance& tol = {}) {
  return !locc_feasible(pair.query, tol) &&
         majorized_by(tensor_spectrum(pair.query.psi, pair.witness),
                      tensor_spectrum(pair.query.phi, pair.witness), tol);
}

namespace detail {

/// Runs body(i) for i in [begin, end) on up to `threads` workers. The first
/// exception by index is rethrown so failures do not depend on scheduling.
template <class Body>
void parallel_for_indexed(std::size_t begin, std::size_t end, unsigned threads, Body&& body) {
  const std::size_t count = end - begin;
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t offset, std::size_t stride) {
    for (std::size_t i = offset; i < count; i += stride) {
      try {
        body(begin + i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (workers == 1) {
    run(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

/// Rejection sampler: psi and phi are sorted flat-Dirichlet draws on the
/// (n-1)-simplex, chi on the (k-1)-simplex; a draw is kept when psi does not
/// convert to phi but chi certifies a standard catalyst. Pair i is drawn from
/// substream i of spec.seed.
inline std::vector<CatalyzablePair> generate_catalyzable_pairs(const PairGenSpec& spec) {
  if (spec.n < 2 || spec.k < 1) fail(ErrorCode::DomainError, "need n >= 2 and k >= 1");
  if (spec.count < 1) fail(ErrorCode::DomainError, "count must be positive");

  constexpr std::size_t batch = 64;
  constexpr double min_acceptance = 1e-4;
  constexpr std::uint64_t guard_after = 100000;

  std::vector<std::optional<CatalyzablePair>> slots(spec.count);
  std::vector<std::uint64_t> attempts(spec.count, 0);
  std::uint64_t total_attempts = 0;

  auto draw_pair = [&](std::size_t i) {
    const std::uint64_t key = substream_seed(spec.seed, i);
    Xoshiro256 rng(key);
    std::vector<double> psi(spec.n), phi(spec.n), chi(spec.k);
    std::vector<double> source(spec.n * spec.k), target(spec.n * spec.k);
    MergeBuffer<double> scratch;
    for (std::uint64_t tries = 1;; ++tries) {
      sample_sorted_simplex_into(psi, rng);
      sample_sorted_simplex_into(phi, rng);
      sample_sorted_simplex_into(chi, rng);
      const bool accept = [&] {
        if (majorized_by(psi, phi, spec.tol.eps_major)) return false;
        merge_outer_product<double>(psi, chi, source, scratch);
        merge_outer_product<double>(phi, chi, target, scratch);
        return majorized_by(source, target, spec.tol.eps_major);
      }();
      if (accept) {
        attempts[i] = tries;
        slots[i] = CatalyzablePair{{OscVector::trusted(psi), OscVector::trusted(phi)},
                                   OscVector::trusted(chi), key, i};
        return;
      }
      if (tries >= spec.max_rejections) {
        fail(ErrorCode::GenerationExhausted,
             "pair " + std::to_string(i) + ": no certified catalyst after " +
                 std::to_string(tries) + " draws (n=" + std::to_string(spec.n) +
                 ", k=" + std::to_string(spec.k) + ")");
      }
    }
  };

  for (std::size_t begin = 0; begin < spec.count; begin += batch) {
    const std::size_t end = std::min(spec.count, begin + batch);
    detail::parallel_for_indexed(begin, end, spec.threads, draw_pair);
    for (std::size_t i = begin; i < end; ++i) total_attempts += attempts[i];
    const double rate = static_cast<double>(end) / static_cast<double>(total_attempts);
    if (total_attempts >= guard_after && rate < min_acceptance) {
      fail(ErrorCode::GenerationExhausted,
           "acceptance rate " + std::to_string(rate) + " after " +
               std::to_string(total_attempts) + " draws is below 1e-4");
    }
  }

  std::vector<CatalyzablePair> pairs;
  pairs.reserve(spec.count);
  for (auto& slot : slots) pairs.push_back(std::move(*slot));
  return pairs;
}

struct CurvePoint {
  std::uint64_t big_number;
  double success_fraction;
  std::size_t pairs;
  std::size_t successes;
  std::uint64_t seed;
};

/// Fraction of queries for which the Monte Carlo search succeeds within M
/// trials, for each M in m_values. Query i searches substream i of `seed`,
/// and every M reuses the same trial prefix, so the curve is nondecreasing.
inline std::vector<CurvePoint> success_probability_curve(std::span<const TransformQuery> queries,
                                                         std::size_t k,
                                                         std::span<const std::uint64_t> m_values,
                                                         std::uint64_t seed,
                                                         const Tolerance& tol = {},
                                                         unsigned threads = 1) {
  if (queries.empty()) fail(ErrorCode::DomainError, "no pairs given");
  if (m_values.empty()) fail(ErrorCode::DomainError, "no trial budgets given");
  if (std::find(m_values.begin(), m_values.end(), 0) != m_values.end()) {
    fail(ErrorCode::DomainError, "trial budgets must be positive");
  }
  if (k == 0) fail(ErrorCode::DomainError, "k must be positive");
  const std::uint64_t budget = *std::max_element(m_values.begin(), m_values.end());

  std::vector<std::optional<std::uint64_t>> hits(queries.size());
  detail::parallel_for_indexed(0, queries.size(), threads, [&](std::size_t i) {
    hits[i] = first_successful_trial(queries[i], k, budget, substream_seed(seed, i),
                                     tol.eps_major);
  });

  std::vector<CurvePoint> curve;
  curve.reserve(m_values.size());
  for (std::uint64_t m : m_values) {
    const auto successes = static_cast<std::size_t>(
        std::count_if(hits.begin(), hits.end(), [m](const auto& h) { return h && *h < m; }));
    curve.push_back({m, static_cast<double>(successes) / static_cast<double>(queries.size()),
                     queries.size(), successes, seed});
  }
  return curve;
}

inline std::vector<CurvePoint> success_probability_curve(std::span<const CatalyzablePair> pairs,
                                                         std::size_t k,
                                                         std::span<const std::uint64_t> m_values,
                                                         std::uint64_t seed,
                                                         const Tolerance& tol = {},
                                                         unsigned threads = 1) {
  std::vector<TransformQuery> queries;
  queries.reserve(pairs.size());
  for (const auto& p : pairs) queries.push_back(p.query);
  return success_probability_curve(std::span<const TransformQuery>(queries), k, m_values, seed,
                                   tol, threads);
}

}  // namespace entcat
