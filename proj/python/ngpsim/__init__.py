"""Fault diagnosis of unreliable yes/no respondents.

Thin wrapper around the compiled core. The heavy lifting (interrogation,
diagnosis algorithms, exhaustive verification) lives in C++.
"""

from ._core import (
    Census,
    NgpsimError,
    census,
    enumerate_worlds,
    exhaustive_check,
    question_bound,
    run_scenario,
    run_sweep,
)

__all__ = [
    "Census",
    "NgpsimError",
    "census",
    "enumerate_worlds",
    "exhaustive_check",
    "question_bound",
    "run_scenario",
    "run_sweep",
]
