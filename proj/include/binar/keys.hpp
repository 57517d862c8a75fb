#pragma once

// Order-preserving key codecs. A codec exposes a bit width and an MSB-first
// bit reader; sorting by those bits (lexicographically, zero-padded) yields
// the codec's key order.

#include <algorithm>
#include <bit>
#include <cassert>
#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>

namespace binar {

template <class C, class T>
concept KeyCodec = requires(const C& codec, const T& a, const T& b, unsigned pos) {
  { codec.width() } -> std::convertible_to<unsigned>;
  { codec.bit_at(a, pos) } -> std::convertible_to<bool>;
  { codec.less(a, b) } -> std::convertible_to<bool>;
};

template <std::unsigned_integral U>
constexpr U msb_mask(unsigned width) noexcept {
  return static_cast<U>(U{1} << (width - 1));
}

/// pos counts from the MSB of a width-bit word: shift left by pos, then test
/// the width's top bit.
template <std::unsigned_integral U>
constexpr bool bit_at_unsigned(U x, unsigned pos, unsigned width = std::numeric_limits<U>::digits) noexcept {
  assert(width >= 1 && width <= static_cast<unsigned>(std::numeric_limits<U>::digits));
  assert(pos < width);
  return (static_cast<U>(x << pos) & msb_mask<U>(width)) != 0;
}

template <std::signed_integral S>
constexpr std::make_unsigned_t<S> encode_signed(S x) noexcept {
  using U = std::make_unsigned_t<S>;
  return static_cast<U>(static_cast<U>(x) ^ msb_mask<U>(std::numeric_limits<U>::digits));
}

/// Negative patterns are complemented, non-negative ones get the sign bit
/// set. NaNs end up at the extremes according to their sign bit.
template <std::unsigned_integral U>
constexpr U encode_float_total_order(U bits) noexcept {
  constexpr U sign = msb_mask<U>(std::numeric_limits<U>::digits);
  return (bits & sign) ? static_cast<U>(~bits) : static_cast<U>(bits ^ sign);
}

template <std::floating_point F>
constexpr auto float_key(F value) noexcept {
  if constexpr (sizeof(F) == 4) {
    return encode_float_total_order(std::bit_cast<std::uint32_t>(value));
  } else {
    static_assert(sizeof(F) == 8);
    return encode_float_total_order(std::bit_cast<std::uint64_t>(value));
  }
}

/// Bits of the raw bytes, MSB of byte 0 first. Positions past the end read 0.
constexpr bool bit_at_bytestring(std::string_view s, std::size_t pos) noexcept {
  const std::size_t byte = pos / 8;
  if (byte >= s.size()) return false;
  const auto b = static_cast<unsigned char>(s[byte]);
  return ((b << (pos % 8)) & 0x80u) != 0;
}

// Unsigned words. width may be narrower than the storage type (the 4-bit
// nybble case); values must then fit in width bits.
template <std::unsigned_integral U>
class UnsignedCodec {
 public:
  constexpr UnsignedCodec() noexcept = default;
  constexpr explicit UnsignedCodec(unsigned width) noexcept : width_(width) {
    assert(width >= 1 && width <= static_cast<unsigned>(std::numeric_limits<U>::digits));
  }

  constexpr unsigned width() const noexcept { return width_; }
  constexpr bool bit_at(U x, unsigned pos) const noexcept { return bit_at_unsigned(x, pos, width_); }
  constexpr bool less(U a, U b) const noexcept { return a < b; }

 private:
  unsigned width_ = std::numeric_limits<U>::digits;
};

template <std::signed_integral S>
class SignedCodec {
 public:
  using word_type = std::make_unsigned_t<S>;
  static constexpr unsigned width() noexcept { return std::numeric_limits<word_type>::digits; }
  static constexpr bool bit_at(S x, unsigned pos) noexcept { return bit_at_unsigned(encode_signed(x), pos); }
  static constexpr bool less(S a, S b) noexcept { return encode_signed(a) < encode_signed(b); }
};

template <std::floating_point F>
class FloatCodec {
 public:
  using word_type = decltype(float_key(F{}));
  static constexpr unsigned width() noexcept { return std::numeric_limits<word_type>::digits; }
  static constexpr bool bit_at(F x, unsigned pos) noexcept { return bit_at_unsigned(float_key(x), pos); }
  static constexpr bool less(F a, F b) noexcept { return float_key(a) < float_key(b); }
};

// Byte strings in raw byte order. The bitstring is the bytes zero-padded to
// max_length, followed by the string length in length_bits bits. Without the
// length suffix "a" and "a\0" would read identically.
class ByteStringCodec {
 public:
  explicit ByteStringCodec(std::size_t max_length) noexcept
      : max_length_(max_length), length_bits_(static_cast<unsigned>(std::bit_width(max_length))) {}

  static ByteStringCodec for_input(std::span<const std::string> input) noexcept {
    std::size_t longest = 0;
    for (const auto& s : input) longest = std::max(longest, s.size());
    return ByteStringCodec(longest);
  }

  std::size_t max_length() const noexcept { return max_length_; }
  unsigned length_bits() const noexcept { return length_bits_; }
  unsigned width() const noexcept { return static_cast<unsigned>(8 * max_length_) + length_bits_; }

  bool bit_at(std::string_view s, unsigned pos) const noexcept {
    assert(pos < width());
    assert(s.size() <= max_length_);
    const std::size_t byte_bits = 8 * max_length_;
    if (pos < byte_bits) return bit_at_bytestring(s, pos);
    const unsigned shift = length_bits_ - 1 - static_cast<unsigned>(pos - byte_bits);
    return ((s.size() >> shift) & 1u) != 0;
  }

  bool less(std::string_view a, std::string_view b) const noexcept { return a < b; }

 private:
  std::size_t max_length_;
  unsigned length_bits_;
};

}  // namespace binar
