#include "binar/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <limits>
#include <new>
#include <ostream>
#include <stdexcept>

namespace binar::bench {

std::optional<std::string> BenchPlan::validate() const {
  if (start_size < 1) return "start size must be at least 1";
  if (end_size < start_size) return "end size must not be below start size";
  if (step < 1) return "step must be at least 1";
  if (granularity < 1) return "granularity must be at least 1";
  if (variant.variant == Variant::parallel && variant.workers < 1) return "workers must be at least 1";
  return std::nullopt;
}

std::vector<std::uint64_t> BenchPlan::sizes() const {
  std::vector<std::uint64_t> out;
  if (validate()) return out;
  for (std::uint64_t n = start_size; n <= end_size; n += step) {
    out.push_back(n);
    if (end_size - n < step) break;
  }
  return out;
}

std::vector<BenchRecord> run_plan(const BenchPlan& plan) {
  if (auto problem = plan.validate()) throw std::invalid_argument(*problem);

  using clock = std::chrono::steady_clock;
  std::vector<BenchRecord> records;
  for (const std::uint64_t size : plan.sizes()) {
    BenchRecord record;
    record.size = size;
    try {
      const Dataset input = oracle::generate_case({static_cast<std::size_t>(size), plan.key_kind, plan.seed});
      Dataset work = input;
      sort_dataset(work, plan.variant);

      std::uint64_t total = 0;
      std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
      std::uint64_t hi = 0;
      for (std::uint64_t i = 0; i < plan.granularity; ++i) {
        work = input;
        const auto t0 = clock::now();
        sort_dataset(work, plan.variant);
        const auto t1 = clock::now();
        const auto ns = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        total += ns;
        lo = std::min(lo, ns);
        hi = std::max(hi, ns);
      }
      record.mean_ns = (total + plan.granularity / 2) / plan.granularity;
      record.min_ns = lo;
      record.max_ns = hi;
      // Rounding can push the mean one tick outside [min, max].
      record.mean_ns = std::clamp(record.mean_ns, lo, hi);
    } catch (const std::bad_alloc&) {
      record.error = "allocation failed at size " + std::to_string(size);
    }
    records.push_back(std::move(record));
  }
  return records;
}

FitResult fit_linear(std::span<const BenchRecord> records) {
  std::vector<const BenchRecord*> usable;
  for (const auto& r : records) {
    if (!r.error) usable.push_back(&r);
  }
  const bool distinct = std::any_of(usable.begin(), usable.end(),
                                    [&](const BenchRecord* r) { return r->size != usable.front()->size; });
  if (usable.size() < 2 || !distinct) throw std::invalid_argument("fit_linear needs at least two distinct sizes");

  const double n = static_cast<double>(usable.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto* r : usable) {
    mean_x += static_cast<double>(r->size);
    mean_y += static_cast<double>(r->mean_ns);
  }
  mean_x /= n;
  mean_y /= n;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto* r : usable) {
    const double dx = static_cast<double>(r->size) - mean_x;
    const double dy = static_cast<double>(r->mean_ns) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (const auto* r : usable) {
      const double e = static_cast<double>(r->mean_ns) - (fit.intercept + fit.slope * static_cast<double>(r->size));
      ss_res += e * e;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

void write_csv(std::span<const BenchRecord> records, std::ostream& out) {
  std::vector<const BenchRecord*> rows;
  for (const auto& r : records) {
    if (!r.error) rows.push_back(&r);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) { return a->size < b->size; });

  out << kCsvHeader << '\n';
  for (const auto* r : rows) {
    out << r->size << ',' << r->mean_ns << ',' << r->min_ns << ',' << r->max_ns << '\n';
  }
}

void write_csv(std::span<const BenchRecord> records, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(records, file);
  file.flush();
  if (!file) throw std::runtime_error("write failed: " + path);
}

}  // namespace binar::bench
