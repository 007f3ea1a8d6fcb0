"""Reproducing-kernel collocation for the time-fractional Burgers equation."""

from ._core import (
    NumericalError,
    Problem,
    Solution,
    build_catalog_problem,
    build_example,
    caputo_power,
    error_report,
    gamma,
    gauss_jacobi,
    r1,
    r2,
    r3,
    run_verification,
    solve,
    verify_forcing,
    weighted_moment,
)

__all__ = [
    "NumericalError",
    "Problem",
    "Solution",
    "build_catalog_problem",
    "build_example",
    "caputo_power",
    "error_report",
    "gamma",
    "gauss_jacobi",
    "r1",
    "r2",
    "r3",
    "run_verification",
    "solve",
    "verify_forcing",
    "weighted_moment",
]
