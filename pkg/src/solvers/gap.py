"""The feasibility gap over per-family median intervals and the x picker."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from src.errors import DimensionMismatch, Infeasible
from src.geometry.core import Direction, Scalar
from src.geometry.measure import (
    INF,
    MedianInterval,
    median_interval,
    point_median_interval,
)
from src.solvers.instance import GapValue, Instance, Mode


def family_intervals(
    instance: Instance, e: Union[Direction, Iterable[object]]
) -> Tuple[MedianInterval, ...]:
    """Per-family median intervals along e (or along the covector f in classical mode)."""
    direction = Direction.of(e, instance.exact)
    if direction.dimension != instance.dimension:
        raise DimensionMismatch(
            f"direction of dimension {direction.dimension}, instance has {instance.dimension}"
        )
    if instance.mode is Mode.HYPERPLANE:
        return tuple(median_interval(family, direction) for family in instance.families)
    return tuple(point_median_interval(family, direction.coords) for family in instance.families)


def gap_from_intervals(intervals: Sequence[MedianInterval]) -> GapValue:
    # max()/min() keep the first index on ties
    argmax_lo = max(range(len(intervals)), key=lambda j: intervals[j].lo)
    argmin_hi = min(range(len(intervals)), key=lambda j: intervals[j].hi)
    g = intervals[argmax_lo].lo - intervals[argmin_hi].hi
    return GapValue(g, argmax_lo, argmin_hi, tuple(intervals))


def gap(instance: Instance, e: Union[Direction, Iterable[object]]) -> GapValue:
    return gap_from_intervals(family_intervals(instance, e))


def choose_x(intervals: Sequence[MedianInterval]) -> Scalar:
    """Midpoint of [max lo, min hi]; the finite end if one side is open; 0 if both are."""
    lo = max(interval.lo for interval in intervals)
    hi = min(interval.hi for interval in intervals)
    if lo > hi:
        raise Infeasible(f"intervals do not overlap: max lo {lo} > min hi {hi}")
    if lo == -INF and hi == INF:
        return Fraction(0)
    if lo == -INF:
        return hi
    if hi == INF:
        return lo
    return (lo + hi) / 2
