#pragma once

// Runtime selection of key kind and sort variant over type-erased datasets.

#include <optional>
#include <string>
#include <string_view>

#include "binar/core.hpp"
#include "binar/oracle.hpp"
#include "binar/variants.hpp"

namespace binar {

using oracle::Dataset;
using oracle::KeyKind;

enum class Variant { recursive, iterative, optimized, parallel };

struct VariantSpec {
  Variant variant = Variant::recursive;
  unsigned workers = 1;
  OptimizationConfig optimization = OptimizationConfig::defaults();
};

std::optional<KeyKind> parse_key_kind(std::string_view name);
std::string_view key_kind_name(KeyKind kind);
std::optional<Variant> parse_variant(std::string_view name);
std::string_view variant_name(Variant variant);

KeyKind key_kind_of(const Dataset& data);

/// Bit width of the codec that sort_dataset would use for this data.
unsigned dataset_width(const Dataset& data);

Metrics sort_dataset(Dataset& data, const VariantSpec& spec);

struct CaseCheck {
  bool ok = true;
  std::string failure;
  Metrics metrics;
  unsigned width = 0;
};

/// Sorts a copy of `input` with the chosen variant and checks it against the
/// oracle: exact equality with the merge sort, multiset preservation, and
/// the work and depth bounds.
CaseCheck check_case(const Dataset& input, const VariantSpec& spec);

}  // namespace binar
