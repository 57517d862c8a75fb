#include "binar/runtime.hpp"

#include <array>
#include <utility>

namespace binar {

namespace {

constexpr std::array<std::pair<std::string_view, KeyKind>, 5> kKindNames{{
    {"u32", KeyKind::unsigned32},
    {"u64", KeyKind::unsigned64},
    {"i32", KeyKind::signed32},
    {"f64", KeyKind::float64},
    {"str", KeyKind::bytestring},
}};

constexpr std::array<std::pair<std::string_view, Variant>, 4> kVariantNames{{
    {"recursive", Variant::recursive},
    {"iterative", Variant::iterative},
    {"optimized", Variant::optimized},
    {"parallel", Variant::parallel},
}};

template <class T, class Codec>
Metrics run_variant(std::vector<T>& v, const Codec& codec, const VariantSpec& spec) {
  const std::span<T> seq(v);
  switch (spec.variant) {
    case Variant::recursive:
      return sort(seq, codec);
    case Variant::iterative:
      return sort_iterative(seq, codec);
    case Variant::optimized:
      return sort_optimized(seq, codec, spec.optimization);
    case Variant::parallel:
      return sort_parallel(seq, codec, spec.workers);
  }
  return {};
}

// Calls f(vector&, codec) with the codec matching the dataset's kind.
template <class D, class F>
decltype(auto) with_codec(D& data, F&& f) {
  return std::visit(
      [&f](auto& v) -> decltype(auto) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        if constexpr (std::is_same_v<T, std::string>) {
          return f(v, ByteStringCodec::for_input(std::span<const std::string>(v)));
        } else if constexpr (std::is_floating_point_v<T>) {
          return f(v, FloatCodec<T>{});
        } else if constexpr (std::is_signed_v<T>) {
          return f(v, SignedCodec<T>{});
        } else {
          return f(v, UnsignedCodec<T>{});
        }
      },
      data);
}

}  // namespace

std::optional<KeyKind> parse_key_kind(std::string_view name) {
  for (const auto& [n, k] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view key_kind_name(KeyKind kind) {
  for (const auto& [n, k] : kKindNames) {
    if (k == kind) return n;
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (const auto& [n, v] : kVariantNames) {
    if (n == name) return v;
  }
  return std::nullopt;
}

std::string_view variant_name(Variant variant) {
  for (const auto& [n, v] : kVariantNames) {
    if (v == variant) return n;
  }
  return "?";
}

KeyKind key_kind_of(const Dataset& data) { return static_cast<KeyKind>(data.index()); }

unsigned dataset_width(const Dataset& data) {
  return with_codec(data, [](const auto&, const auto& codec) { return codec.width(); });
}

Metrics sort_dataset(Dataset& data, const VariantSpec& spec) {
  return with_codec(data, [&spec](auto& v, const auto& codec) { return run_variant(v, codec, spec); });
}

CaseCheck check_case(const Dataset& input, const VariantSpec& spec) {
  CaseCheck result;
  Dataset output = input;
  result.width = dataset_width(input);
  result.metrics = sort_dataset(output, spec);

  const std::uint64_t n = std::visit([](const auto& v) { return v.size(); }, input);
  const Metrics& m = result.metrics;
  const std::uint64_t width = result.width;

  auto fail = [&result](std::string why) {
    result.ok = false;
    result.failure = std::move(why);
  };
  if (!oracle::identical(output, oracle::reference_sort(input))) {
    fail("output differs from reference sort");
  } else if (!oracle::is_permutation(input, output)) {
    fail("output is not a permutation of the input");
  } else if (m.bit_extractions > width * n) {
    fail("bit_extractions " + std::to_string(m.bit_extractions) + " exceeds width*N " + std::to_string(width * n));
  } else if (m.swaps > m.bit_extractions) {
    fail("swaps exceed bit_extractions");
  } else if (m.max_depth > width + 1) {
    fail("depth " + std::to_string(m.max_depth) + " exceeds width+1");
  } else if (m.max_stack > 2 * (width + 1)) {
    fail("work stack " + std::to_string(m.max_stack) + " exceeds 2*(width+1)");
  }
  return result;
}

}  // namespace binar
