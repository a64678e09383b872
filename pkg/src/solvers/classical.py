"""Classical Ham Sandwich mode: bisect point families with one hyperplane."""

from __future__ import annotations

import logging
from typing import Optional

from src.errors import WrongMode
from src.solvers.exact_2d import solve_classical_exact_2d
from src.solvers.instance import Instance, Mode, SolveResult, SweepConfig
from src.solvers.sweep import solve_sweep

LOGGER = logging.getLogger(__name__)


def solve_classical(instance: Instance, cfg: Optional[SweepConfig] = None) -> SolveResult:
    """A hyperplane [f, y] with at least half of every family on each closed side.

    Rational 2-D instances are enumerated exactly and the first bisector is
    returned; everything else goes through the hemisphere sweep over f.
    """
    if instance.mode is not Mode.CLASSICAL:
        raise WrongMode("solve_classical needs a point instance")
    if instance.dimension == 2 and instance.exact:
        found = solve_classical_exact_2d(instance)
        if found:
            return found[0]
        LOGGER.warning("exact enumeration found no bisector, falling back to the sweep")
    return solve_sweep(instance, cfg or SweepConfig())
