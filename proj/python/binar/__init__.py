"""In-place MSD binary radix sort with instrumented variants."""

from ._binar import (
    Metrics,
    Mt19937,
    check_case,
    fit_linear,
    generate_case,
    reference_sort,
    run_plan,
    sort,
    sort_inplace,
    trace,
)

__all__ = [
    "Metrics",
    "Mt19937",
    "check_case",
    "fit_linear",
    "generate_case",
    "reference_sort",
    "run_plan",
    "sort",
    "sort_inplace",
    "trace",
]
