#pragma once

// Correctness machinery that shares no code with the sorters: a merge sort,
// sortedness/permutation predicates, key orders written without the codecs,
// and the MT19937 generator used to build reproducible test cases.

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace binar::oracle {

class Mt19937 {
 public:
  static constexpr std::size_t kStateSize = 624;
  static constexpr std::uint32_t kDefaultSeed = 5489u;

  explicit Mt19937(std::uint32_t seed = kDefaultSeed) noexcept { this->seed(seed); }

  void seed(std::uint32_t seed) noexcept;
  std::uint32_t next() noexcept;
  std::uint32_t operator()() noexcept { return next(); }

  std::size_t index() const noexcept { return index_; }

 private:
  void twist() noexcept;

  std::array<std::uint32_t, kStateSize> state_{};
  std::size_t index_ = kStateSize;
};

/// IEEE total order on doubles by sign and magnitude: negatives (including
/// negative NaNs) by descending magnitude, then non-negatives ascending.
struct TotalOrderLess {
  bool operator()(double a, double b) const noexcept {
    const auto ua = std::bit_cast<std::uint64_t>(a);
    const auto ub = std::bit_cast<std::uint64_t>(b);
    const bool neg_a = (ua >> 63) != 0;
    const bool neg_b = (ub >> 63) != 0;
    if (neg_a != neg_b) return neg_a;
    const std::uint64_t mag_a = ua & 0x7FFF'FFFF'FFFF'FFFFull;
    const std::uint64_t mag_b = ub & 0x7FFF'FFFF'FFFF'FFFFull;
    return neg_a ? mag_a > mag_b : mag_a < mag_b;
  }
};

/// Raw byte order, independent of char signedness.
struct ByteLess {
  bool operator()(std::string_view a, std::string_view b) const noexcept {
    const std::size_t n = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = static_cast<unsigned char>(a[i]);
      const auto y = static_cast<unsigned char>(b[i]);
      if (x != y) return x < y;
    }
    return a.size() < b.size();
  }
};

namespace detail {

template <class T, class Less>
void merge_sort(std::vector<T>& v, std::vector<T>& scratch, std::size_t lo, std::size_t hi, const Less& less) {
  if (hi - lo < 2) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  merge_sort(v, scratch, lo, mid, less);
  merge_sort(v, scratch, mid, hi, less);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (less(v[j], v[i])) {
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  for (k = lo; k < hi; ++k) v[k] = scratch[k];
}

}  // namespace detail

template <class T, class Less = std::less<>>
std::vector<T> reference_sort(std::span<const T> input, const Less& less = {}) {
  std::vector<T> out(input.begin(), input.end());
  std::vector<T> scratch(out.size());
  detail::merge_sort(out, scratch, 0, out.size(), less);
  return out;
}

template <class T, class Less = std::less<>>
bool is_nondecreasing(std::span<const T> seq, const Less& less = {}) {
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (less(seq[i], seq[i - 1])) return false;
  }
  return true;
}

/// Multiset equality, by comparing merge-sorted copies under `less`.
template <class T, class Less = std::less<>>
bool is_permutation(std::span<const T> a, std::span<const T> b, const Less& less = {}) {
  if (a.size() != b.size()) return false;
  const auto sa = reference_sort(a, less);
  const auto sb = reference_sort(b, less);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (less(sa[i], sb[i]) || less(sb[i], sa[i])) return false;
  }
  return true;
}

enum class KeyKind { unsigned32, unsigned64, signed32, float64, bytestring };

using Dataset = std::variant<std::vector<std::uint32_t>, std::vector<std::uint64_t>, std::vector<std::int32_t>,
                             std::vector<double>, std::vector<std::string>>;

struct CaseSpec {
  std::size_t size = 0;
  KeyKind key_kind = KeyKind::unsigned32;
  std::uint32_t seed = Mt19937::kDefaultSeed;
};

inline constexpr std::size_t kMaxCaseStringLength = 16;

/// 64-bit values take two draws, high word first. Strings take one draw for
/// the length (mod 17) and one draw per byte (low 8 bits).
Dataset generate_case(const CaseSpec& spec);

/// The oracle's sort of a dataset under its kind's key order.
Dataset reference_sort(const Dataset& data);

bool is_nondecreasing(const Dataset& data);
bool is_permutation(const Dataset& a, const Dataset& b);

/// Element-wise identity; doubles compare by bit pattern.
bool identical(const Dataset& a, const Dataset& b);

}  // namespace binar::oracle
