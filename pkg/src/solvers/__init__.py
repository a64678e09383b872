"""
Solver Module
Exact 2-D event enumeration, the certified hemisphere sweep, case (ii)
detection and the classical point-bisection mode.
"""

from .classical import solve_classical
from .degenerate import detect_case_ii, solve_degenerate
from .exact_2d import solve_classical_exact_2d, solve_exact_2d
from .gap import choose_x, gap
from .instance import (
    BestEffort,
    ExactCertificate,
    FloatCertificate,
    GapValue,
    Instance,
    Method,
    Mode,
    Solution,
    SweepConfig,
)
from .sweep import solve_sweep

__all__ = [
    "BestEffort",
    "ExactCertificate",
    "FloatCertificate",
    "GapValue",
    "Instance",
    "Method",
    "Mode",
    "Solution",
    "SweepConfig",
    "choose_x",
    "detect_case_ii",
    "gap",
    "solve_classical",
    "solve_classical_exact_2d",
    "solve_degenerate",
    "solve_exact_2d",
    "solve_sweep",
]
