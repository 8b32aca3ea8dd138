"""Exact and approximate checks of the operator family, with a suite runner."""

from ..report import VerificationReport
from .approx import check_ramanujan
from .conjectures import check_n3_conjecture, check_n4_extended, check_n4_partial, check_quasi_eigen
from .exact import (
    check_alpha_independence,
    check_commutator,
    check_lemma1,
    check_lemma3,
    check_n2_eigenfunctions,
    check_shift,
    check_theorem2,
)
from .suite import CHECKS, ConfigError, SuiteConfig, SuiteEntry, default_config, exit_status, run_suite

__all__ = [
    "CHECKS",
    "ConfigError",
    "SuiteConfig",
    "SuiteEntry",
    "VerificationReport",
    "check_alpha_independence",
    "check_commutator",
    "check_lemma1",
    "check_lemma3",
    "check_n2_eigenfunctions",
    "check_n3_conjecture",
    "check_n4_extended",
    "check_n4_partial",
    "check_quasi_eigen",
    "check_ramanujan",
    "check_shift",
    "check_theorem2",
    "default_config",
    "exit_status",
    "run_suite",
]
