#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "binar/bench.hpp"
#include "binar/core.hpp"
#include "binar/oracle.hpp"
#include "binar/runtime.hpp"
#include "binar/variants.hpp"

namespace py = pybind11;
using namespace binar;

namespace {

KeyKind kind_from(const std::string& name) {
  auto kind = parse_key_kind(name);
  if (!kind) throw py::value_error("unknown key type '" + name + "' (expected u32, u64, i32, f64 or str)");
  return *kind;
}

VariantSpec variant_from(const std::string& name, unsigned workers, bool passthrough_loop,
                         unsigned sortedness_check_after) {
  auto variant = parse_variant(name);
  if (!variant) throw py::value_error("unknown variant '" + name + "'");
  if (workers == 0) throw py::value_error("workers must be at least 1");
  return {*variant, workers, {passthrough_loop, sortedness_check_after}};
}

template <class T>
std::vector<T> read_sequence(const py::sequence& values) {
  std::vector<T> out;
  out.reserve(values.size());
  for (const auto& item : values) {
    if constexpr (std::is_same_v<T, std::string>) {
      if (py::isinstance<py::str>(item)) {
        out.push_back(item.cast<std::string>());
      } else {
        out.push_back(std::string(item.cast<py::bytes>()));
      }
    } else {
      out.push_back(item.cast<T>());
    }
  }
  return out;
}

Dataset to_dataset(const py::sequence& values, KeyKind kind) {
  switch (kind) {
    case KeyKind::unsigned32:
      return read_sequence<std::uint32_t>(values);
    case KeyKind::unsigned64:
      return read_sequence<std::uint64_t>(values);
    case KeyKind::signed32:
      return read_sequence<std::int32_t>(values);
    case KeyKind::float64:
      return read_sequence<double>(values);
    case KeyKind::bytestring:
      return read_sequence<std::string>(values);
  }
  throw std::logic_error("unreachable");
}

py::list to_list(const Dataset& data) {
  py::list out;
  std::visit(
      [&out](const auto& v) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        for (const auto& x : v) {
          if constexpr (std::is_same_v<T, std::string>) {
            out.append(py::bytes(x));
          } else {
            out.append(x);
          }
        }
      },
      data);
  return out;
}

template <class T, class Codec>
Metrics sort_array(py::array_t<T, py::array::c_style>& array, const Codec& codec, const VariantSpec& spec) {
  if (array.ndim() != 1) throw py::value_error("expected a one-dimensional array");
  auto view = array.template mutable_unchecked<1>();
  const std::span<T> seq(view.mutable_data(0), static_cast<std::size_t>(array.shape(0)));
  py::gil_scoped_release release;
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

}  // namespace

PYBIND11_MODULE(_binar, m) {
  m.doc() = "In-place MSD binary radix sort (binar sort) with instrumented variants";

  py::class_<Metrics>(m, "Metrics")
      .def(py::init<>())
      .def_readonly("bit_extractions", &Metrics::bit_extractions)
      .def_readonly("swaps", &Metrics::swaps)
      .def_readonly("recursive_calls", &Metrics::recursive_calls)
      .def_readonly("max_depth", &Metrics::max_depth)
      .def_readonly("max_stack", &Metrics::max_stack)
      .def("__repr__", [](const Metrics& x) {
        return "Metrics(bit_extractions=" + std::to_string(x.bit_extractions) + ", swaps=" + std::to_string(x.swaps) +
               ", recursive_calls=" + std::to_string(x.recursive_calls) +
               ", max_depth=" + std::to_string(x.max_depth) + ")";
      });

  m.def(
      "sort",
      [](const py::sequence& values, const std::string& type, const std::string& variant, unsigned workers,
         bool passthrough_loop, unsigned sortedness_check_after) {
        Dataset data = to_dataset(values, kind_from(type));
        const VariantSpec spec = variant_from(variant, workers, passthrough_loop, sortedness_check_after);
        Metrics metrics;
        {
          py::gil_scoped_release release;
          metrics = sort_dataset(data, spec);
        }
        return py::make_tuple(to_list(data), metrics);
      },
      py::arg("values"), py::arg("type") = "u32", py::arg("variant") = "recursive", py::arg("workers") = 1,
      py::arg("passthrough_loop") = true, py::arg("sortedness_check_after") = 4,
      "Sort a sequence; returns (sorted list, Metrics). Byte strings come back as bytes.");

  m.def(
      "sort_inplace",
      [](py::array array, const std::string& variant, unsigned workers) -> Metrics {
        const VariantSpec spec = variant_from(variant, workers, true, 4);
        auto dtype = array.dtype();
        if (dtype.is(py::dtype::of<std::uint32_t>())) {
          auto a = array.cast<py::array_t<std::uint32_t, py::array::c_style>>();
          return sort_array(a, UnsignedCodec<std::uint32_t>{}, spec);
        }
        if (dtype.is(py::dtype::of<std::uint64_t>())) {
          auto a = array.cast<py::array_t<std::uint64_t, py::array::c_style>>();
          return sort_array(a, UnsignedCodec<std::uint64_t>{}, spec);
        }
        if (dtype.is(py::dtype::of<std::int32_t>())) {
          auto a = array.cast<py::array_t<std::int32_t, py::array::c_style>>();
          return sort_array(a, SignedCodec<std::int32_t>{}, spec);
        }
        if (dtype.is(py::dtype::of<double>())) {
          auto a = array.cast<py::array_t<double, py::array::c_style>>();
          return sort_array(a, FloatCodec<double>{}, spec);
        }
        throw py::type_error("sort_inplace supports uint32, uint64, int32 and float64 arrays");
      },
      py::arg("array"), py::arg("variant") = "recursive", py::arg("workers") = 1,
      "Sort a contiguous one-dimensional numpy array in place.");

  m.def(
      "trace",
      [](std::vector<std::uint32_t> values, unsigned width) {
        if (width < 1 || width > 32) throw py::value_error("width must be in [1, 32]");
        for (auto v : values) {
          if (width < 32 && v >= (std::uint64_t{1} << width)) throw py::value_error("value does not fit in width");
        }
        std::vector<std::pair<unsigned, std::vector<std::vector<std::uint32_t>>>> levels;
        sort_with_observer(values, UnsignedCodec<std::uint32_t>(width),
                           [&](unsigned pos, std::span<const std::pair<index_t, index_t>> groups) {
                             std::vector<std::vector<std::uint32_t>> level;
                             for (const auto& [lo, hi] : groups) level.emplace_back(values.begin() + lo, values.begin() + hi + 1);
                             levels.emplace_back(pos + 1, std::move(level));
                           });
        return levels;
      },
      py::arg("values"), py::arg("width") = 32,
      "Sort with the level observer; returns [(bit number from 1, [sub-array contents, ...]), ...].");

  py::class_<oracle::Mt19937>(m, "Mt19937")
      .def(py::init<std::uint32_t>(), py::arg("seed") = oracle::Mt19937::kDefaultSeed)
      .def("seed", &oracle::Mt19937::seed)
      .def("next", &oracle::Mt19937::next)
      .def("__call__", &oracle::Mt19937::next);

  m.def(
      "generate_case",
      [](std::size_t size, const std::string& type, std::uint32_t seed) {
        return to_list(oracle::generate_case({size, kind_from(type), seed}));
      },
      py::arg("size"), py::arg("type") = "u32", py::arg("seed") = oracle::Mt19937::kDefaultSeed);

  m.def(
      "reference_sort",
      [](const py::sequence& values, const std::string& type) {
        return to_list(oracle::reference_sort(to_dataset(values, kind_from(type))));
      },
      py::arg("values"), py::arg("type") = "u32", "Merge-sort oracle, independent of the binar sorters.");

  m.def(
      "check_case",
      [](const py::sequence& values, const std::string& type, const std::string& variant, unsigned workers) {
        const CaseCheck check =
            check_case(to_dataset(values, kind_from(type)), variant_from(variant, workers, true, 4));
        return py::make_tuple(check.ok, check.failure);
      },
      py::arg("values"), py::arg("type") = "u32", py::arg("variant") = "recursive", py::arg("workers") = 1);

  m.def(
      "run_plan",
      [](std::uint64_t start, std::uint64_t end, std::uint64_t step, std::uint64_t granularity, std::uint32_t seed,
         const std::string& type, const std::string& variant, unsigned workers) {
        bench::BenchPlan plan;
        plan.start_size = start;
        plan.end_size = end;
        plan.step = step;
        plan.granularity = granularity;
        plan.seed = seed;
        plan.key_kind = kind_from(type);
        plan.variant = variant_from(variant, workers, true, 4);
        if (auto problem = plan.validate()) throw py::value_error(*problem);
        std::vector<bench::BenchRecord> records;
        {
          py::gil_scoped_release release;
          records = bench::run_plan(plan);
        }
        py::list out;
        for (const auto& r : records) {
          py::dict row;
          row["size"] = r.size;
          row["mean_ns"] = r.mean_ns;
          row["min_ns"] = r.min_ns;
          row["max_ns"] = r.max_ns;
          row["error"] = r.error ? py::cast(*r.error) : py::none();
          out.append(row);
        }
        return out;
      },
      py::arg("start"), py::arg("end"), py::arg("step"), py::arg("granularity") = 10,
      py::arg("seed") = oracle::Mt19937::kDefaultSeed, py::arg("type") = "u32", py::arg("variant") = "recursive",
      py::arg("workers") = 1);

  m.def(
      "fit_linear",
      [](const std::vector<std::pair<std::uint64_t, std::uint64_t>>& size_and_mean) {
        std::vector<bench::BenchRecord> records;
        for (const auto& [size, mean] : size_and_mean) records.push_back({size, mean, mean, mean, std::nullopt});
        try {
          const auto fit = bench::fit_linear(records);
          return py::make_tuple(fit.slope, fit.intercept, fit.r_squared);
        } catch (const std::invalid_argument& e) {
          throw py::value_error(e.what());
        }
      },
      py::arg("points"), "Least squares over (size, mean_ns) pairs; returns (slope, intercept, r_squared).");
}
