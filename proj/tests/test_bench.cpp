#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "binar/bench.hpp"

using namespace binar;
using namespace binar::bench;

namespace {

// Test-side CSV reader for round trips.
std::vector<BenchRecord> parse_csv(std::istream& in) {
  std::vector<BenchRecord> out;
  std::string line;
  std::getline(in, line);
  REQUIRE(line == kCsvHeader);
  while (std::getline(in, line)) {
    BenchRecord r;
    char c1, c2, c3;
    std::istringstream row(line);
    row >> r.size >> c1 >> r.mean_ns >> c2 >> r.min_ns >> c3 >> r.max_ns;
    REQUIRE(row);
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("plan validation") {
  BenchPlan plan;
  CHECK_FALSE(plan.validate());
  plan.step = 0;
  CHECK(plan.validate());
  plan = {};
  plan.start_size = 0;
  CHECK(plan.validate());
  plan = {};
  plan.end_size = plan.start_size - 1;
  CHECK(plan.validate());
  plan = {};
  plan.granularity = 0;
  CHECK(plan.validate());
  CHECK_THROWS_AS(run_plan(plan), std::invalid_argument);
}

TEST_CASE("sweep sizes are the arithmetic progression") {
  BenchPlan plan{.start_size = 10, .end_size = 30, .step = 10, .granularity = 3};
  CHECK(plan.sizes() == std::vector<std::uint64_t>{10, 20, 30});
  plan.end_size = 35;
  CHECK(plan.sizes() == std::vector<std::uint64_t>{10, 20, 30});
  plan = {.start_size = 5, .end_size = 5, .step = 100, .granularity = 1};
  CHECK(plan.sizes() == std::vector<std::uint64_t>{5});
}

TEST_CASE("run_plan produces one record per size") {
  const BenchPlan plan{.start_size = 10, .end_size = 30, .step = 10, .granularity = 3};
  const auto records = run_plan(plan);
  REQUIRE(records.size() == 3);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].size == 10 * (i + 1));
    CHECK_FALSE(records[i].error);
    CHECK(records[i].min_ns <= records[i].mean_ns);
    CHECK(records[i].mean_ns <= records[i].max_ns);
  }
}

TEST_CASE("granularity 1 gives mean == min == max") {
  for (const auto& variant : {VariantSpec{Variant::recursive}, VariantSpec{Variant::parallel, 2}}) {
    BenchPlan plan{.start_size = 100, .end_size = 300, .step = 100, .granularity = 1};
    plan.variant = variant;
    for (const auto& r : run_plan(plan)) {
      CHECK(r.mean_ns == r.min_ns);
      CHECK(r.mean_ns == r.max_ns);
    }
  }
}

TEST_CASE("desk-scale paper-shaped plan") {
  const BenchPlan plan{.start_size = 10'000, .end_size = 100'000, .step = 10'000, .granularity = 10};
  const auto records = run_plan(plan);
  REQUIRE(records.size() == 10);
  for (const auto& r : records) CHECK(r.min_ns > 0);
  const FitResult fit = fit_linear(records);
  CHECK(fit.slope > 0.0);
  CHECK(fit.r_squared >= 0.0);
  CHECK(fit.r_squared <= 1.0);
}

TEST_CASE("fit_linear") {
  const std::vector<BenchRecord> line{{1, 7, 7, 7}, {2, 9, 9, 9}, {3, 11, 11, 11}};
  auto fit = fit_linear(line);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(5.0));
  CHECK(fit.r_squared == doctest::Approx(1.0));

  const std::vector<BenchRecord> flat{{1, 5, 5, 5}, {2, 5, 5, 5}};
  fit = fit_linear(flat);
  CHECK(fit.slope == doctest::Approx(0.0));
  CHECK(fit.intercept == doctest::Approx(5.0));

  const std::vector<BenchRecord> noisy{{1, 10, 10, 10}, {2, 30, 30, 30}, {3, 20, 20, 20}, {4, 40, 40, 40}};
  fit = fit_linear(noisy);
  CHECK(fit.slope == doctest::Approx(8.0));
  CHECK(fit.r_squared == doctest::Approx(0.64));

  const std::vector<BenchRecord> single{{1, 5, 5, 5}};
  CHECK_THROWS_AS(fit_linear(single), std::invalid_argument);
  const std::vector<BenchRecord> same{{2, 5, 5, 5}, {2, 6, 6, 6}};
  CHECK_THROWS_AS(fit_linear(same), std::invalid_argument);
  std::vector<BenchRecord> with_error{{1, 7, 7, 7}, {2, 0, 0, 0}};
  with_error[1].error = "allocation failed";
  CHECK_THROWS_AS(fit_linear(with_error), std::invalid_argument);
}

TEST_CASE("write_csv format") {
  std::ostringstream one;
  const std::vector<BenchRecord> record{{10, 100, 90, 110}};
  write_csv(record, one);
  CHECK(one.str() == "size,mean_ns,min_ns,max_ns\n10,100,90,110\n");

  std::ostringstream empty;
  write_csv(std::vector<BenchRecord>{}, empty);
  CHECK(empty.str() == "size,mean_ns,min_ns,max_ns\n");

  std::ostringstream ordered;
  write_csv(std::vector<BenchRecord>{{30, 3, 3, 3}, {10, 1, 1, 1}}, ordered);
  CHECK(ordered.str() == "size,mean_ns,min_ns,max_ns\n10,1,1,1\n30,3,3,3\n");
}

TEST_CASE("csv round trip through a file") {
  const BenchPlan plan{.start_size = 50, .end_size = 250, .step = 50, .granularity = 2};
  const auto records = run_plan(plan);
  const auto path = (std::filesystem::temp_directory_path() / "binar_test_bench.csv").string();
  write_csv(records, path);
  std::ifstream in(path);
  CHECK(parse_csv(in) == records);
  std::remove(path.c_str());
}

TEST_CASE("write_csv names the path on failure") {
  const std::string path = "/nonexistent-dir/out.csv";
  try {
    write_csv(std::vector<BenchRecord>{}, path);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(path) != std::string::npos);
  }
}

TEST_CASE("generated inputs are identical across runs of one plan") {
  const auto a = oracle::generate_case({1000, KeyKind::unsigned32, 77});
  const auto b = oracle::generate_case({1000, KeyKind::unsigned32, 77});
  CHECK(oracle::identical(a, b));
}
