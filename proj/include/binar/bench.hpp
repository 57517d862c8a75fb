#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "binar/runtime.hpp"

namespace binar::bench {

struct BenchPlan {
  std::uint64_t start_size = 10'000;
  std::uint64_t end_size = 100'000;
  std::uint64_t step = 10'000;
  std::uint64_t granularity = 10;
  std::uint32_t seed = oracle::Mt19937::kDefaultSeed;
  KeyKind key_kind = KeyKind::unsigned32;
  VariantSpec variant{};

  /// Empty when the plan is runnable, otherwise what is wrong with it.
  std::optional<std::string> validate() const;
  std::vector<std::uint64_t> sizes() const;
};

struct BenchRecord {
  std::uint64_t size = 0;
  std::uint64_t mean_ns = 0;
  std::uint64_t min_ns = 0;
  std::uint64_t max_ns = 0;
  std::optional<std::string> error;  // set when this size could not be run

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct FitResult {
  double slope = 0.0;      // ns per element
  double intercept = 0.0;  // ns
  double r_squared = 0.0;
};

/// Per size: one generated input, one untimed warm-up sort, then
/// `granularity` timed sorts of fresh copies. Only the sort call is timed.
/// Throws std::invalid_argument for an invalid plan.
std::vector<BenchRecord> run_plan(const BenchPlan& plan);

/// Least squares of mean_ns against size over records without errors.
/// Throws std::invalid_argument with fewer than two distinct sizes.
FitResult fit_linear(std::span<const BenchRecord> records);

inline constexpr const char* kCsvHeader = "size,mean_ns,min_ns,max_ns";

/// Rows in ascending size; records carrying an error are skipped.
void write_csv(std::span<const BenchRecord> records, std::ostream& out);
/// Throws std::runtime_error naming the path when the file cannot be written.
void write_csv(std::span<const BenchRecord> records, const std::string& path);

}  // namespace binar::bench
