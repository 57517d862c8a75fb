#include "binar/oracle.hpp"

#include <cstring>
#include <type_traits>

namespace binar::oracle {

namespace {

constexpr std::size_t kShift = 397;
constexpr std::uint32_t kMatrixA = 0x9908B0DFu;
constexpr std::uint32_t kUpperMask = 0x80000000u;
constexpr std::uint32_t kLowerMask = 0x7FFFFFFFu;

template <class T>
struct OrderFor {
  using type = std::less<>;
};
template <>
struct OrderFor<double> {
  using type = TotalOrderLess;
};
template <>
struct OrderFor<std::string> {
  using type = ByteLess;
};

template <class T>
using order_t = typename OrderFor<T>::type;

}  // namespace

void Mt19937::seed(std::uint32_t seed) noexcept {
  state_[0] = seed;
  for (std::size_t i = 1; i < kStateSize; ++i) {
    const std::uint32_t prev = state_[i - 1];
    state_[i] = 1812433253u * (prev ^ (prev >> 30)) + static_cast<std::uint32_t>(i);
  }
  index_ = kStateSize;
}

void Mt19937::twist() noexcept {
  for (std::size_t i = 0; i < kStateSize; ++i) {
    const std::uint32_t y = (state_[i] & kUpperMask) | (state_[(i + 1) % kStateSize] & kLowerMask);
    std::uint32_t v = state_[(i + kShift) % kStateSize] ^ (y >> 1);
    if (y & 1u) v ^= kMatrixA;
    state_[i] = v;
  }
  index_ = 0;
}

std::uint32_t Mt19937::next() noexcept {
  if (index_ >= kStateSize) twist();
  std::uint32_t y = state_[index_++];
  y ^= y >> 11;
  y ^= (y << 7) & 0x9D2C5680u;
  y ^= (y << 15) & 0xEFC60000u;
  y ^= y >> 18;
  return y;
}

Dataset generate_case(const CaseSpec& spec) {
  Mt19937 rng(spec.seed);
  auto draw64 = [&rng] {
    const std::uint64_t hi = rng();
    return (hi << 32) | rng();
  };

  switch (spec.key_kind) {
    case KeyKind::unsigned32: {
      std::vector<std::uint32_t> v(spec.size);
      for (auto& x : v) x = rng();
      return v;
    }
    case KeyKind::unsigned64: {
      std::vector<std::uint64_t> v(spec.size);
      for (auto& x : v) x = draw64();
      return v;
    }
    case KeyKind::signed32: {
      std::vector<std::int32_t> v(spec.size);
      for (auto& x : v) x = static_cast<std::int32_t>(rng());
      return v;
    }
    case KeyKind::float64: {
      std::vector<double> v(spec.size);
      for (auto& x : v) x = std::bit_cast<double>(draw64());
      return v;
    }
    case KeyKind::bytestring: {
      std::vector<std::string> v(spec.size);
      for (auto& s : v) {
        s.resize(rng() % (kMaxCaseStringLength + 1));
        for (auto& c : s) c = static_cast<char>(rng() & 0xFFu);
      }
      return v;
    }
  }
  return {};
}

Dataset reference_sort(const Dataset& data) {
  return std::visit(
      [](const auto& v) -> Dataset {
        using T = typename std::decay_t<decltype(v)>::value_type;
        return reference_sort(std::span<const T>(v), order_t<T>{});
      },
      data);
}

bool is_nondecreasing(const Dataset& data) {
  return std::visit(
      [](const auto& v) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        return is_nondecreasing(std::span<const T>(v), order_t<T>{});
      },
      data);
}

bool is_permutation(const Dataset& a, const Dataset& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& va) {
        using V = std::decay_t<decltype(va)>;
        using T = typename V::value_type;
        const auto& vb = std::get<V>(b);
        return is_permutation(std::span<const T>(va), std::span<const T>(vb), order_t<T>{});
      },
      a);
}

bool identical(const Dataset& a, const Dataset& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& va) {
        using V = std::decay_t<decltype(va)>;
        const auto& vb = std::get<V>(b);
        if (va.size() != vb.size()) return false;
        if constexpr (std::is_same_v<typename V::value_type, double>) {
          return va.empty() || std::memcmp(va.data(), vb.data(), va.size() * sizeof(double)) == 0;
        } else {
          return va == vb;
        }
      },
      a);
}

}  // namespace binar::oracle
