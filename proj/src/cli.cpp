#include "binar/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "binar/bench.hpp"
#include "binar/core.hpp"
#include "binar/runtime.hpp"

namespace binar::cli {

namespace {

const std::vector<std::string> kTypeNames{"u32", "u64", "i32", "f64", "str"};
const std::vector<std::string> kVariantNames{"recursive", "iterative", "optimized", "parallel"};

struct InputError {
  std::size_t line;
  std::string text;
};

template <class T>
bool parse_value(std::string_view s, T& value) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_value(std::string_view s, std::string& value) {
  value.assign(s);
  return true;
}

template <class T>
void format_value(std::ostream& out, const T& value) {
  if constexpr (std::is_same_v<T, std::string>) {
    out << value;
  } else {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    out.write(buf, ptr - buf);
  }
}

template <class T>
std::variant<std::vector<T>, InputError> read_lines(std::istream& in) {
  std::vector<T> values;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    T value{};
    if (!parse_value(line, value)) return InputError{number, line};
    values.push_back(std::move(value));
  }
  return values;
}

std::variant<Dataset, InputError> read_dataset(std::istream& in, KeyKind kind) {
  auto lift = [](auto parsed) -> std::variant<Dataset, InputError> {
    if (auto* e = std::get_if<InputError>(&parsed)) return *e;
    return Dataset(std::move(std::get<0>(parsed)));
  };
  switch (kind) {
    case KeyKind::unsigned32:
      return lift(read_lines<std::uint32_t>(in));
    case KeyKind::unsigned64:
      return lift(read_lines<std::uint64_t>(in));
    case KeyKind::signed32:
      return lift(read_lines<std::int32_t>(in));
    case KeyKind::float64:
      return lift(read_lines<double>(in));
    case KeyKind::bytestring:
      return lift(read_lines<std::string>(in));
  }
  return InputError{0, ""};
}

std::string hex_upper(std::uint32_t v) {
  char buf[16];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, 16);
  std::string s(buf, ptr);
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

void print_group(std::ostream& out, std::span<const std::uint32_t> values, index_t lower, index_t upper) {
  out << '[';
  for (index_t i = lower; i <= upper; ++i) {
    if (i != lower) out << ' ';
    out << hex_upper(values[i]);
  }
  out << ']';
}

struct SortOptions {
  std::string type = "u32";
  std::string variant = "recursive";
  unsigned workers = 4;
  std::string input;
  std::string output;
};

struct BenchOptions {
  std::uint64_t start = 10'000;
  std::uint64_t end = 100'000;
  std::uint64_t step = 10'000;
  std::uint64_t granularity = 10;
  std::uint32_t seed = oracle::Mt19937::kDefaultSeed;
  std::string type = "u32";
  std::string variant = "recursive";
  unsigned workers = 4;
  std::string csv;
};

struct TraceOptions {
  unsigned width = 4;
  std::vector<std::string> values;
};

struct VerifyOptions {
  long long cases = 100;
  std::uint32_t seed = oracle::Mt19937::kDefaultSeed;
  std::string type = "u32";
  std::string variant = "recursive";
  unsigned workers = 4;
};

VariantSpec make_variant(const std::string& name, unsigned workers) {
  VariantSpec spec;
  spec.variant = *parse_variant(name);
  spec.workers = workers;
  return spec;
}

int cmd_sort(const SortOptions& opt, std::istream& in, std::ostream& out, std::ostream& err) {
  std::ifstream file;
  std::istream* source = &in;
  if (!opt.input.empty()) {
    file.open(opt.input, std::ios::binary);
    if (!file) {
      err << "error: cannot read " << opt.input << '\n';
      return kIoError;
    }
    source = &file;
  }

  auto parsed = read_dataset(*source, *parse_key_kind(opt.type));
  if (source->bad()) {
    err << "error: read failed\n";
    return kIoError;
  }
  if (auto* e = std::get_if<InputError>(&parsed)) {
    err << "error: line " << e->line << ": cannot parse '" << e->text << "' as " << opt.type << '\n';
    return kUsageError;
  }
  Dataset data = std::move(std::get<Dataset>(parsed));
  sort_dataset(data, make_variant(opt.variant, opt.workers));

  std::ofstream out_file;
  std::ostream* sink = &out;
  if (!opt.output.empty()) {
    out_file.open(opt.output, std::ios::binary | std::ios::trunc);
    if (!out_file) {
      err << "error: cannot write " << opt.output << '\n';
      return kIoError;
    }
    sink = &out_file;
  }
  std::visit(
      [sink](const auto& v) {
        for (const auto& x : v) {
          format_value(*sink, x);
          *sink << '\n';
        }
      },
      data);
  sink->flush();
  if (!*sink) {
    err << "error: write failed" << (opt.output.empty() ? "" : ": " + opt.output) << '\n';
    return kIoError;
  }
  return kSuccess;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  bench::BenchPlan plan;
  plan.start_size = opt.start;
  plan.end_size = opt.end;
  plan.step = opt.step;
  plan.granularity = opt.granularity;
  plan.seed = opt.seed;
  plan.key_kind = *parse_key_kind(opt.type);
  plan.variant = make_variant(opt.variant, opt.workers);
  if (auto problem = plan.validate()) {
    err << "error: invalid plan: " << *problem << '\n';
    return kUsageError;
  }

  const auto records = bench::run_plan(plan);
  for (const auto& r : records) {
    if (r.error) err << "warning: " << *r.error << '\n';
  }
  if (!opt.csv.empty()) {
    try {
      bench::write_csv(records, opt.csv);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kIoError;
    }
  }

  out << "sizes: " << records.size() << '\n';
  try {
    const auto fit = bench::fit_linear(records);
    char line[160];
    std::snprintf(line, sizeof(line), "fit: slope=%.6g ns/element intercept=%.6g ns r2=%.6f", fit.slope,
                  fit.intercept, fit.r_squared);
    out << line << '\n';
  } catch (const std::invalid_argument&) {
    out << "fit: n/a (needs two distinct sizes)\n";
  }
  return kSuccess;
}

int cmd_trace(const TraceOptions& opt, std::ostream& out, std::ostream& err) {
  const std::uint64_t limit = std::uint64_t{1} << opt.width;
  std::vector<std::uint32_t> values;
  for (const auto& text : opt.values) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, 16);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || v >= limit) {
      err << "error: '" << text << "' is not a " << opt.width << "-bit hex value\n";
      return kUsageError;
    }
    values.push_back(static_cast<std::uint32_t>(v));
  }

  const std::span<const std::uint32_t> view(values);
  const index_t last = static_cast<index_t>(values.size()) - 1;
  out << "begin: ";
  print_group(out, view, 0, last);
  out << '\n';

  sort_with_observer(values, UnsignedCodec<std::uint32_t>(opt.width),
                     [&](unsigned pos, std::span<const std::pair<index_t, index_t>> groups) {
                       out << "bit " << pos + 1 << ": ";
                       for (const auto& [lo, hi] : groups) print_group(out, view, lo, hi);
                       out << '\n';
                     });

  out << "end: ";
  print_group(out, view, 0, last);
  out << '\n';
  return kSuccess;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.cases < 1) {
    err << "error: --cases must be at least 1\n";
    return kUsageError;
  }
  const KeyKind kind = *parse_key_kind(opt.type);
  const VariantSpec spec = make_variant(opt.variant, opt.workers);

  oracle::Mt19937 master(opt.seed);
  long long passed = 0;
  bool reported = false;
  for (long long i = 0; i < opt.cases; ++i) {
    const std::uint32_t case_seed = master();
    const std::size_t size = master() % 2049;
    const CaseCheck check = check_case(oracle::generate_case({size, kind, case_seed}), spec);
    if (check.ok) {
      ++passed;
    } else if (!reported) {
      reported = true;
      out << "first failure: case " << i << " seed=" << case_seed << " size=" << size << ": " << check.failure << '\n';
    }
  }
  out << passed << '/' << opt.cases << " passed\n";
  return passed == opt.cases ? kSuccess : kVerificationFailed;
}

void add_variant_flags(CLI::App* cmd, std::string& type, std::string& variant, unsigned& workers) {
  cmd->add_option("--type", type, "Key type")->check(CLI::IsMember(kTypeNames))->capture_default_str();
  cmd->add_option("--variant", variant, "Sort variant")->check(CLI::IsMember(kVariantNames))->capture_default_str();
  cmd->add_option("--workers", workers, "Worker threads for the parallel variant")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binar sort: in-place MSD binary radix sort"};
  app.name("binar");
  app.require_subcommand(1);

  SortOptions sort_opt;
  auto* sort_cmd = app.add_subcommand("sort", "Sort values read one per line");
  add_variant_flags(sort_cmd, sort_opt.type, sort_opt.variant, sort_opt.workers);
  sort_cmd->add_option("-i,--input", sort_opt.input, "Input path (default: standard input)");
  sort_cmd->add_option("-o,--output", sort_opt.output, "Output path (default: standard output)");

  BenchOptions bench_opt;
  auto* bench_cmd = app.add_subcommand("bench", "Time a size sweep and fit a line");
  bench_cmd->add_option("--start", bench_opt.start)->capture_default_str();
  bench_cmd->add_option("--end", bench_opt.end)->capture_default_str();
  bench_cmd->add_option("--step", bench_opt.step)->capture_default_str();
  bench_cmd->add_option("--granularity", bench_opt.granularity, "Timed sorts per size")->capture_default_str();
  bench_cmd->add_option("--seed", bench_opt.seed)->capture_default_str();
  bench_cmd->add_option("--csv", bench_opt.csv, "Write records as CSV to this path");
  add_variant_flags(bench_cmd, bench_opt.type, bench_opt.variant, bench_opt.workers);

  TraceOptions trace_opt;
  auto* trace_cmd = app.add_subcommand("trace", "Print the sub-arrays after every bit level");
  trace_cmd->add_option("--width", trace_opt.width)
      ->check(CLI::IsMember(std::vector<unsigned>{4, 8, 16, 32}))
      ->capture_default_str();
  trace_cmd->add_option("values", trace_opt.values, "Hex values");

  VerifyOptions verify_opt;
  auto* verify_cmd = app.add_subcommand("verify", "Check a variant against the reference sort");
  verify_cmd->add_option("--cases", verify_opt.cases)->capture_default_str();
  verify_cmd->add_option("--seed", verify_opt.seed)->capture_default_str();
  add_variant_flags(verify_cmd, verify_opt.type, verify_opt.variant, verify_opt.workers);

  std::vector<const char*> argv{"binar"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*sort_cmd) return cmd_sort(sort_opt, in, out, err);
    if (*bench_cmd) return cmd_bench(bench_opt, out, err);
    if (*trace_cmd) return cmd_trace(trace_opt, out, err);
    if (*verify_cmd) return cmd_verify(verify_opt, out, err);
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kIoError;
  }
  return kUsageError;
}

}  // namespace binar::cli
