#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

namespace entcat {

/// Scratch storage reused across merges so the hot loop does not allocate.
template <class Value>
using MergeBuffer = std::vector<Value>;

namespace detail {

/// Merges nonincreasing runs a and b into out (size na + nb). Fills from both
/// ends at once: the front takes the larger head, the back the smaller tail.
/// The two ends are independent dependency chains and the selects compile to
/// conditional moves, so the loop does not stall on random data. Ties go to a
/// at the front and to b at the back; both ends then follow the same stable
/// order and never claim the same element.
template <class Value>
void merge_two_descending(const Value* a, std::size_t na, const Value* b, std::size_t nb,
                          Value* out) {
  if (na == 0 || nb == 0) {
    std::copy_n(na ? a : b, na + nb, out);
    return;
  }
  constexpr Value lowest = -std::numeric_limits<Value>::infinity();
  constexpr Value highest = std::numeric_limits<Value>::infinity();
  std::size_t ia = 0, ib = 0;            // front heads
  std::size_t ja = na, jb = nb;          // back tails (exclusive)
  std::size_t front = 0, back = na + nb;  // output cursors
  const std::size_t half = (na + nb) / 2;
  auto step = [&](auto guarded) {
    const Value x = !guarded || ia < na ? a[ia] : lowest;
    const Value y = !guarded || ib < nb ? b[ib] : lowest;
    const bool take_b = y > x;
    out[front++] = take_b ? y : x;
    ib += take_b;
    ia += !take_b;

    const Value u = !guarded || ja > 0 ? a[ja - 1] : highest;
    const Value v = !guarded || jb > 0 ? b[jb - 1] : highest;
    const bool take_v = v <= u;
    out[--back] = take_v ? v : u;
    jb -= take_v;
    ja -= !take_v;
  };
  // After t steps each end has used t elements, so neither run can be
  // exhausted while t < min(na, nb). Equal runs never need the guards.
  const std::size_t safe = std::min({half, na, nb});
  std::size_t t = 0;
  for (; t < safe; ++t) step(std::false_type{});
  for (; t < half; ++t) step(std::true_type{});
  if (front < back) out[front] = ia < ja ? a[ia] : b[ib];
}

}  // namespace detail

/// Merges `streams` nonincreasing sequences of equal `length` into `out`
/// (nonincreasing). `at(s, p)` yields element p of stream s. Runs are merged
/// pairwise bottom-up, ceil(log2 streams) passes over streams * length
/// values; `scratch` holds the second ping-pong buffer.
template <class Value, class At>
void kway_merge_descending(std::size_t streams, std::size_t length, At&& at, std::span<Value> out,
                           MergeBuffer<Value>& scratch) {
  const std::size_t total = streams * length;
  if (total == 0) return;
  scratch.resize(total);

  std::size_t passes = 0;
  for (std::size_t runs = streams; runs > 1; runs = (runs + 1) / 2) ++passes;
  // Start in whichever buffer makes the last pass land in `out`.
  Value* src = passes % 2 == 0 ? out.data() : scratch.data();
  Value* dst = passes % 2 == 0 ? scratch.data() : out.data();

  for (std::size_t s = 0; s < streams; ++s) {
    for (std::size_t p = 0; p < length; ++p) src[s * length + p] = at(s, p);
  }
  for (std::size_t run = length; run < total; run *= 2) {
    for (std::size_t begin = 0; begin < total; begin += 2 * run) {
      const std::size_t na = std::min(run, total - begin);
      const std::size_t nb = std::min(run, total - begin - na);
      detail::merge_two_descending(src + begin, na, src + begin + na, nb, dst + begin);
    }
    std::swap(src, dst);
  }
}

/// Writes the multiset {a[i] * b[j]} in nonincreasing order into `out`
/// (size a.size() * b.size()). Both inputs must be nonincreasing and
/// nonnegative. Rows of the outer product along the shorter input become the
/// merge streams; trailing zeros are skipped and zero-filled at the end.
template <class Value>
void merge_outer_product(std::span<const Value> a, std::span<const Value> b, std::span<Value> out,
                         MergeBuffer<Value>& scratch) {
  const bool a_shorter = a.size() <= b.size();
  std::span<const Value> shorter = a_shorter ? a : b;
  std::span<const Value> longer = a_shorter ? b : a;

  auto nonzero_prefix = [](std::span<const Value> v) {
    std::size_t n = v.size();
    while (n > 0 && v[n - 1] == Value(0)) --n;
    return n;
  };
  const std::size_t streams = nonzero_prefix(shorter);
  const std::size_t length = nonzero_prefix(longer);

  kway_merge_descending<Value>(
      streams, length, [&](std::size_t s, std::size_t p) { return shorter[s] * longer[p]; },
      out.first(streams * length), scratch);
  std::fill(out.begin() + static_cast<std::ptrdiff_t>(streams * length), out.end(), Value(0));
}

}  // namespace entcat
