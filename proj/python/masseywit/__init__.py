"""Unitriangular witnesses for the vanishing of Massey products over F_p.

The heavy lifting lives in the compiled extension; this package re-exports
its surface: group-spec validation, cup/triviality checks, witness
certificates and the cross-validation suites.
"""

from ._core import (
    SearchExhausted,
    TrivialityError,
    build_summary,
    check_triviality,
    cup_vanishes,
    h1_dim,
    massey_witness,
    run_suite,
    suite_names,
    verify_certificate,
)

__all__ = [
    "SearchExhausted",
    "TrivialityError",
    "build_summary",
    "check_triviality",
    "cup_vanishes",
    "h1_dim",
    "massey_witness",
    "run_suite",
    "suite_names",
    "verify_certificate",
]
