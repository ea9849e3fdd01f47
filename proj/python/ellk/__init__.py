from ._ellk import (
    cm_check,
    dimension_bound,
    lvalue_eta,
    moment,
    moment_via_lvalue,
    numeric_rank,
    run_suite,
    suite_names,
)

__all__ = [
    "cm_check",
    "dimension_bound",
    "lvalue_eta",
    "moment",
    "moment_via_lvalue",
    "numeric_rank",
    "run_suite",
    "suite_names",
]
