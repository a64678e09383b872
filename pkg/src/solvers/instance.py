"""Instances, sweep configuration and solver results."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

from src.errors import DimensionMismatch, InvalidMeasure, WrongMode
from src.geometry.core import Direction, HopfPoint, Hyperplane, Scalar
from src.geometry.measure import MedianInterval, PointFamily, SideReport, WeightedFamily
from src.utils.config import load_settings


class Mode(Enum):
    HYPERPLANE = "hyperplane"
    CLASSICAL = "points"


class Method(Enum):
    EXACT_2D = "exact2d"
    SWEEP = "sweep"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Instance:
    """Families sharing one ambient dimension m+1.

    ``guaranteed`` is False when there are more families than dimensions
    (l > m); such instances are still solved, without an existence promise.
    """

    dimension: int
    mode: Mode
    families: Tuple[Union[WeightedFamily, PointFamily], ...]

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise DimensionMismatch("dimension must be at least 1")
        if not self.families:
            raise InvalidMeasure("an instance needs at least one family")
        expected = WeightedFamily if self.mode is Mode.HYPERPLANE else PointFamily
        for family in self.families:
            if not isinstance(family, expected):
                raise WrongMode(f"{type(family).__name__} in a {self.mode.value} instance")
            if family.dimension != self.dimension:
                raise DimensionMismatch(
                    f"family {family.label!r} has dimension {family.dimension}, "
                    f"instance has {self.dimension}"
                )

    @classmethod
    def hyperplanes(cls, families: Sequence[WeightedFamily]) -> "Instance":
        return cls(families[0].dimension, Mode.HYPERPLANE, tuple(families))

    @classmethod
    def points(cls, families: Sequence[PointFamily]) -> "Instance":
        return cls(families[0].dimension, Mode.CLASSICAL, tuple(families))

    @property
    def guaranteed(self) -> bool:
        return len(self.families) <= self.dimension

    @property
    def exact(self) -> bool:
        return all(family.exact for family in self.families)


@dataclass
class SweepConfig:
    grid_points: int = 512
    seed: int = 0
    tol: float = 1e-9
    eps: float = 1e-7
    max_iters: int = 400
    starts: int = 8
    shrink: float = 0.25
    rounds: int = 4
    x_bound: Optional[float] = None
    vertex_seeds: int = 20000
    progress: bool = False

    @classmethod
    def from_env(cls, **overrides: object) -> "SweepConfig":
        """Defaults from HAMSANDWICH_* environment variables, then overrides."""
        settings = load_settings()
        values = dict(
            grid_points=settings.grid,
            seed=settings.seed,
            tol=settings.tol,
            eps=settings.eps,
            max_iters=settings.max_iters,
            starts=settings.starts,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)  # type: ignore[arg-type]


@dataclass(frozen=True)
class GapValue:
    """g = max_j lo_j - min_j hi_j; the direction is feasible iff g <= 0."""

    g: Scalar
    argmax_lo: int
    argmin_hi: int
    intervals: Tuple[MedianInterval, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.g <= 0

    @property
    def witness(self) -> MedianInterval:
        """The common x-interval [max lo, min hi] (possibly empty when g > 0)."""
        return MedianInterval(
            self.intervals[self.argmax_lo].lo, self.intervals[self.argmin_hi].hi
        )


@dataclass(frozen=True)
class ExactCertificate:
    kind: str = "exact"


@dataclass(frozen=True)
class FloatCertificate:
    eps: float
    min_margin: float
    kind: str = "float"


Certificate = Union[ExactCertificate, FloatCertificate]


@dataclass(frozen=True)
class Solution:
    """A certified point [e, x] (hyperplane mode) or hyperplane [f, y] (classical)."""

    p: Union[HopfPoint, Hyperplane]
    reports: Tuple[SideReport, ...]
    certificate: Certificate
    method: Method
    x_interval: Optional[MedianInterval] = None
    arc: Optional[Tuple[Direction, Direction]] = None
    guaranteed: bool = True

    @property
    def mode(self) -> Mode:
        return Mode.HYPERPLANE if isinstance(self.p, HopfPoint) else Mode.CLASSICAL

    @property
    def min_margin(self) -> Scalar:
        return min(report.margin for report in self.reports)


@dataclass(frozen=True)
class BestEffort:
    """The sweep's no-solution outcome: the best direction seen and its gap."""

    direction: Direction
    gap: float
    guaranteed: bool = True
    reports: Tuple[SideReport, ...] = field(default_factory=tuple)

    def describe(self) -> str:
        return f"best direction {self.direction} with gap {self.gap:.3e}"


SolveResult = Union[Solution, BestEffort]


def all_satisfied(reports: Sequence[SideReport]) -> bool:
    return all(report.satisfied for report in reports)


def min_report_margin(reports: Sequence[SideReport]) -> float:
    return float(min(report.margin for report in reports))
