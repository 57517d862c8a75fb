#pragma once

// Binar sort: in-place MSD binary radix exchange. Each pass splits a range
// into a bit-0 lower sub-array and a bit-1 upper sub-array at one bit
// position, then recurses on both halves at the next position.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "binar/keys.hpp"

#define BINAR_CONTRACT(cond)                                                                  \
  do {                                                                                        \
    if (!(cond)) {                                                                            \
      std::fprintf(stderr, "%s:%d: contract violated: %s\n", __FILE__, __LINE__, #cond);      \
      std::abort();                                                                           \
    }                                                                                         \
  } while (false)

namespace binar {

using index_t = std::ptrdiff_t;

/// Inclusive bounds; upper == lower - 1 is the empty range.
struct SortRange {
  index_t lower = 0;
  index_t upper = -1;
  unsigned pos = 0;

  constexpr index_t size() const noexcept { return upper - lower + 1; }
  constexpr bool empty() const noexcept { return upper < lower; }
  friend constexpr bool operator==(const SortRange&, const SortRange&) = default;
};

struct PartitionResult {
  index_t split = 0;  // first index of the upper sub-array
  bool pass_through = false;
};

struct Metrics {
  std::uint64_t bit_extractions = 0;
  std::uint64_t swaps = 0;
  std::uint64_t recursive_calls = 0;
  std::uint64_t max_depth = 0;
  // Peak explicit work-stack size; only the iterative variants set it.
  std::uint64_t max_stack = 0;

  Metrics& operator+=(const Metrics& other) noexcept {
    bit_extractions += other.bit_extractions;
    swaps += other.swaps;
    recursive_calls += other.recursive_calls;
    max_depth = std::max(max_depth, other.max_depth);
    max_stack = std::max(max_stack, other.max_stack);
    return *this;
  }
  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Called after every partition pass of binar_sort_range.
using PartitionObserver = std::function<void(const SortRange&, const PartitionResult&)>;

/// Called once per completed bit level with the sub-array bounds, left to right.
using LevelObserver = std::function<void(unsigned pos, std::span<const std::pair<index_t, index_t>>)>;

template <class T, class Codec>
  requires KeyCodec<Codec, T>
PartitionResult partition(std::span<T> seq, const SortRange& range, const Codec& codec, Metrics& metrics) {
  BINAR_CONTRACT(!range.empty());
  BINAR_CONTRACT(range.lower >= 0 && range.upper < static_cast<index_t>(seq.size()));
  BINAR_CONTRACT(range.pos < codec.width());

  index_t lo = range.lower;
  index_t hi = range.upper;
  while (lo <= hi) {
    ++metrics.bit_extractions;
    if (!codec.bit_at(seq[lo], range.pos)) {
      ++lo;
    } else {
      using std::swap;
      swap(seq[lo], seq[hi]);
      ++metrics.swaps;
      --hi;
    }
  }
  return {lo, lo == range.lower || lo == range.upper + 1};
}

namespace detail {

template <class T, class Codec>
void binar_sort_recursive(std::span<T> seq, SortRange range, const Codec& codec, Metrics& metrics,
                          const PartitionObserver* observer, std::uint64_t depth) {
  ++metrics.recursive_calls;
  metrics.max_depth = std::max(metrics.max_depth, depth);
  if (range.pos >= codec.width() || range.size() <= 1) return;

  const PartitionResult part = partition(seq, range, codec, metrics);
  if (observer != nullptr && *observer) (*observer)(range, part);

  const unsigned next = range.pos + 1;
  if (part.pass_through) {
    binar_sort_recursive(seq, {range.lower, range.upper, next}, codec, metrics, observer, depth + 1);
  } else {
    binar_sort_recursive(seq, {range.lower, part.split - 1, next}, codec, metrics, observer, depth + 1);
    binar_sort_recursive(seq, {part.split, range.upper, next}, codec, metrics, observer, depth + 1);
  }
}

}  // namespace detail

template <class T, class Codec>
  requires KeyCodec<Codec, T>
void binar_sort_range(std::span<T> seq, const SortRange& range, const Codec& codec, Metrics& metrics,
                      const PartitionObserver* observer = nullptr) {
  BINAR_CONTRACT(range.empty() || (range.lower >= 0 && range.upper < static_cast<index_t>(seq.size())));
  BINAR_CONTRACT(range.upper >= range.lower - 1);
  detail::binar_sort_recursive(seq, range, codec, metrics, observer, 1);
}

template <class T, class Codec>
  requires KeyCodec<Codec, T>
Metrics sort(std::span<T> seq, const Codec& codec) {
  Metrics metrics;
  if (seq.size() <= 1) return metrics;
  binar_sort_range(seq, {0, static_cast<index_t>(seq.size()) - 1, 0}, codec, metrics);
  return metrics;
}

template <class T, class Codec>
  requires KeyCodec<Codec, T>
Metrics sort(std::vector<T>& seq, const Codec& codec) {
  return sort(std::span<T>(seq), codec);
}

/// Same result and counters as sort(), but processed one bit level at a time
/// so the observer sees every sub-array after each level. Levels where no
/// sub-array has two or more elements are not reported.
template <class T, class Codec>
  requires KeyCodec<Codec, T>
Metrics sort_with_observer(std::span<T> seq, const Codec& codec, const LevelObserver& observer) {
  Metrics metrics;
  if (seq.size() <= 1) return metrics;

  struct Group {
    index_t lower;
    index_t upper;
  };
  std::vector<Group> groups{{0, static_cast<index_t>(seq.size()) - 1}};
  std::vector<Group> next;
  std::vector<std::pair<index_t, index_t>> bounds;
  metrics.recursive_calls = 1;
  metrics.max_depth = 1;

  for (unsigned pos = 0; pos < codec.width(); ++pos) {
    const bool any_active =
        std::any_of(groups.begin(), groups.end(), [](const Group& g) { return g.upper > g.lower; });
    if (!any_active) break;

    next.clear();
    for (const Group& g : groups) {
      if (g.upper <= g.lower) {
        next.push_back(g);
        continue;
      }
      const PartitionResult part = partition(seq, {g.lower, g.upper, pos}, codec, metrics);
      if (part.pass_through) {
        next.push_back(g);
        metrics.recursive_calls += 1;
      } else {
        next.push_back({g.lower, part.split - 1});
        next.push_back({part.split, g.upper});
        metrics.recursive_calls += 2;
      }
    }
    metrics.max_depth = pos + 2;
    groups.swap(next);

    bounds.clear();
    for (const Group& g : groups) bounds.emplace_back(g.lower, g.upper);
    if (observer) observer(pos, bounds);
  }
  return metrics;
}

template <class T, class Codec>
  requires KeyCodec<Codec, T>
Metrics sort_with_observer(std::vector<T>& seq, const Codec& codec, const LevelObserver& observer) {
  return sort_with_observer(std::span<T>(seq), codec, observer);
}

}  // namespace binar
