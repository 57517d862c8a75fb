#pragma once

#include <bit>
#include <stdexcept>
#include <thread>
#include <vector>

#include "binar/core.hpp"

namespace binar {

// Explicit work stack, lower sub-range on top. Only non-empty ranges with
// pos < width are ever pushed. Counters match the recursive sort exactly;
// every range that recursion would have called on is counted as a call.
template <class T, class Codec>
  requires KeyCodec<Codec, T>
void sort_iterative(std::span<T> seq, const Codec& codec, Metrics& metrics) {
  if (seq.size() <= 1) return;

  std::vector<SortRange> stack;
  stack.reserve(2 * (codec.width() + 1));
  auto visit = [&](const SortRange& r) {
    ++metrics.recursive_calls;
    metrics.max_depth = std::max<std::uint64_t>(metrics.max_depth, r.pos + 1u);
    if (r.pos < codec.width() && r.size() > 1) {
      stack.push_back(r);
      metrics.max_stack = std::max<std::uint64_t>(metrics.max_stack, stack.size());
    }
  };

  visit({0, static_cast<index_t>(seq.size()) - 1, 0});
  while (!stack.empty()) {
    const SortRange r = stack.back();
    stack.pop_back();
    const PartitionResult part = partition(seq, r, codec, metrics);
    if (part.pass_through) {
      visit({r.lower, r.upper, r.pos + 1});
    } else {
      visit({part.split, r.upper, r.pos + 1});
      visit({r.lower, part.split - 1, r.pos + 1});
    }
  }
}

template <class T, class Codec>
  requires KeyCodec<Codec, T>
Metrics sort_iterative(std::span<T> seq, const Codec& codec) {
  Metrics metrics;
  sort_iterative(seq, codec, metrics);
  return metrics;
}

struct OptimizationConfig {
  // Advance to the next bit in place on pass-through instead of recursing.
  bool passthrough_loop = false;
  // Consecutive pass-throughs before one sortedness scan of the range; 0 disables.
  unsigned sortedness_check_after = 0;

  static constexpr OptimizationConfig defaults() noexcept { return {true, 4}; }
};

template <class T, class Codec>
bool range_is_sorted(std::span<const T> seq, const SortRange& range, const Codec& codec) {
  for (index_t i = range.lower; i < range.upper; ++i) {
    if (codec.less(seq[i + 1], seq[i])) return false;
  }
  return true;
}

namespace detail {

template <class T, class Codec>
void sort_optimized_recursive(std::span<T> seq, SortRange range, const Codec& codec, const OptimizationConfig& config,
                              Metrics& metrics, std::uint64_t depth, unsigned streak) {
  ++metrics.recursive_calls;
  metrics.max_depth = std::max(metrics.max_depth, depth);

  while (range.pos < codec.width() && range.size() > 1) {
    const PartitionResult part = partition(seq, range, codec, metrics);
    if (!part.pass_through) {
      sort_optimized_recursive(seq, {range.lower, part.split - 1, range.pos + 1}, codec, config, metrics, depth + 1, 0);
      sort_optimized_recursive(seq, {part.split, range.upper, range.pos + 1}, codec, config, metrics, depth + 1, 0);
      return;
    }

    ++streak;
    // One scan per streak: fires when the streak first reaches the threshold.
    if (config.sortedness_check_after != 0 && streak == config.sortedness_check_after &&
        range_is_sorted(std::span<const T>(seq), range, codec)) {
      return;
    }
    ++range.pos;
    if (!config.passthrough_loop) {
      sort_optimized_recursive(seq, range, codec, config, metrics, depth + 1, streak);
      return;
    }
  }
}

}  // namespace detail

template <class T, class Codec>
  requires KeyCodec<Codec, T>
void sort_optimized(std::span<T> seq, const Codec& codec, const OptimizationConfig& config, Metrics& metrics) {
  if (seq.size() <= 1) return;
  detail::sort_optimized_recursive(seq, {0, static_cast<index_t>(seq.size()) - 1, 0}, codec, config, metrics, 1, 0);
}

template <class T, class Codec>
  requires KeyCodec<Codec, T>
Metrics sort_optimized(std::span<T> seq, const Codec& codec, const OptimizationConfig& config) {
  Metrics metrics;
  sort_optimized(seq, codec, config, metrics);
  return metrics;
}

/// Number of leading bit levels partitioned sequentially before the
/// resulting buckets are handed to workers: ceil(lg workers).
constexpr unsigned parallel_levels(unsigned workers) noexcept {
  return workers <= 1 ? 0u : static_cast<unsigned>(std::bit_width(workers - 1));
}

/// Partitions the top `levels` bit positions breadth-first and returns the
/// resulting sub-ranges, left to right. The buckets are disjoint and cover
/// the whole sequence; each carries the bit position it resumes at.
template <class T, class Codec>
  requires KeyCodec<Codec, T>
std::vector<SortRange> parallel_buckets(std::span<T> seq, const Codec& codec, unsigned levels, Metrics& metrics) {
  std::vector<SortRange> groups;
  if (seq.empty()) return groups;
  groups.push_back({0, static_cast<index_t>(seq.size()) - 1, 0});

  std::vector<SortRange> next;
  for (unsigned level = 0; level < levels; ++level) {
    next.clear();
    for (const SortRange& g : groups) {
      if (g.pos >= codec.width() || g.size() <= 1) {
        next.push_back(g);
        continue;
      }
      // Partitioned here, so this node's call is accounted for here.
      ++metrics.recursive_calls;
      metrics.max_depth = std::max<std::uint64_t>(metrics.max_depth, g.pos + 1u);
      const PartitionResult part = partition(seq, g, codec, metrics);
      if (part.pass_through) {
        next.push_back({g.lower, g.upper, g.pos + 1});
      } else {
        next.push_back({g.lower, part.split - 1, g.pos + 1});
        next.push_back({part.split, g.upper, g.pos + 1});
      }
    }
    groups.swap(next);
  }
  return groups;
}

/// Bucket i goes to thread i % min(workers, buckets); no work stealing, so skewed key
/// distributions leave some workers idle.
template <class T, class Codec>
  requires KeyCodec<Codec, T>
void sort_parallel(std::span<T> seq, const Codec& codec, unsigned workers, Metrics& metrics) {
  if (workers == 0) throw std::invalid_argument("sort_parallel: workers must be at least 1");
  if (seq.size() <= 1) return;

  const std::vector<SortRange> buckets = parallel_buckets(seq, codec, parallel_levels(workers), metrics);
  if (workers == 1) {
    for (const SortRange& b : buckets) detail::binar_sort_recursive(seq, b, codec, metrics, nullptr, b.pos + 1u);
    return;
  }

  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, buckets.size()));
  std::vector<Metrics> locals(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < buckets.size(); i += threads) {
          detail::binar_sort_recursive(seq, buckets[i], codec, locals[w], nullptr, buckets[i].pos + 1u);
        }
      });
    }
  }
  for (const Metrics& local : locals) metrics += local;
}

template <class T, class Codec>
  requires KeyCodec<Codec, T>
Metrics sort_parallel(std::span<T> seq, const Codec& codec, unsigned workers) {
  Metrics metrics;
  sort_parallel(seq, codec, workers, metrics);
  return metrics;
}

}  // namespace binar
