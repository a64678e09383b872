"""Projective representatives for hyperplanes [f, y] and Hopf points [e, x].

Scalars are either ``fractions.Fraction`` (exact mode) or ``float`` (float
mode). Every operation is written against plain Python arithmetic so the same
code serves both backends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Integral, Real
from typing import Iterable, Optional, Sequence, Tuple, Union

from src.errors import DimensionMismatch, NotExactInput, ZeroCovector

Scalar = Union[Fraction, float]
Vector = Tuple[Scalar, ...]


# ---------- Scalars ----------


def to_exact(value: object) -> Fraction:
    """Read ``value`` as an exact rational.

    Floats are read as the dyadic rational they store, not rounded to a
    nearby decimal. Strings accept ``"p/q"`` and decimal notation.
    """
    if isinstance(value, bool):
        raise NotExactInput(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise NotExactInput(f"cannot read {value!r} as a rational") from exc
    if isinstance(value, Real):
        as_float = float(value)
        if not math.isfinite(as_float):
            raise NotExactInput(f"non-finite value {value!r} in exact mode")
        return Fraction(as_float)
    raise NotExactInput(f"not a number: {value!r}")


def to_scalar(value: object, exact: bool = True) -> Scalar:
    if exact:
        return to_exact(value)
    if isinstance(value, str):
        text = value.strip().lower()
        if text in {"inf", "+inf", "-inf"}:
            return float(text)
        return float(to_exact(text))
    return float(value)  # type: ignore[arg-type]


def to_vector(values: Iterable[object], exact: bool = True) -> Vector:
    return tuple(to_scalar(v, exact) for v in values)


def is_exact(values: Iterable[object]) -> bool:
    return all(
        isinstance(v, (Fraction, Integral)) and not isinstance(v, bool) for v in values
    )


def dot(a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    if len(a) != len(b):
        raise DimensionMismatch(f"dimension {len(a)} vs {len(b)}")
    total: Scalar = 0
    for ai, bi in zip(a, b):
        total += ai * bi
    return total


def _canonical_factor(coords: Sequence[Scalar], exact: bool) -> Scalar:
    """Return s such that s * coords is the canonical representative."""
    lead = next((c for c in coords if c != 0), None)
    if lead is None:
        raise ZeroCovector("all coordinates are zero")
    sign = 1 if lead > 0 else -1
    if exact:
        den = math.lcm(*(Fraction(c).denominator for c in coords))
        content = math.gcd(*(int(Fraction(c) * den) for c in coords))
        return Fraction(sign * den, content)
    return sign / math.hypot(*(float(c) for c in coords))


# ---------- Directions and Hopf points ----------


@dataclass(frozen=True)
class Direction:
    """A nonzero vector e spanning the line L = Re.

    Instances are not canonical unless built with :func:`canonicalize_direction`;
    raw representatives are kept so that e and -e stay distinguishable.
    """

    coords: Vector

    def __post_init__(self) -> None:
        if all(c == 0 for c in self.coords):
            raise ZeroCovector("direction must be nonzero")

    @classmethod
    def of(cls, coords: Union["Direction", Iterable[object]], exact: bool = True) -> "Direction":
        if isinstance(coords, Direction):
            return coords
        return cls(to_vector(coords, exact))

    @property
    def dimension(self) -> int:
        return len(self.coords)

    @property
    def exact(self) -> bool:
        return is_exact(self.coords)

    def __neg__(self) -> "Direction":
        return Direction(tuple(-c for c in self.coords))

    def norm_squared(self) -> Scalar:
        return dot(self.coords, self.coords)

    def canonical(self) -> "Direction":
        s = _canonical_factor(self.coords, self.exact)
        return Direction(tuple(s * c for c in self.coords))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def canonicalize_direction(e: Union[Direction, Iterable[object]], exact: bool = True) -> Direction:
    """First nonzero coordinate positive; integer content-1 coordinates in exact mode."""
    return Direction.of(e, exact).canonical()


@dataclass(frozen=True)
class HopfPoint:
    """The class [e, x]: line L = Re and the point v = x e on it."""

    e: Direction
    x: Scalar

    @classmethod
    def of(cls, e: Union[Direction, Iterable[object]], x: object, exact: bool = True) -> "HopfPoint":
        """Canonicalize e and rescale x so that v = x e is preserved."""
        raw = Direction.of(e, exact)
        x_scalar = to_scalar(x, exact)
        s = _canonical_factor(raw.coords, raw.exact)
        return cls(Direction(tuple(s * c for c in raw.coords)), x_scalar / s)

    @classmethod
    def signed(cls, e: Union[Direction, Iterable[object]], x: object, exact: bool = True) -> "HopfPoint":
        """Fix only the sign of e, keeping its norm.

        Float-mode representative for directions that are unit vectors up to
        rounding; exact mode would otherwise scale their dyadic coordinates
        to huge integers.
        """
        raw = Direction.of(e, exact)
        x_scalar = to_scalar(x, exact)
        lead = next(c for c in raw.coords if c != 0)
        if lead < 0:
            return cls(-raw, -x_scalar)
        return cls(raw, x_scalar)

    @property
    def dimension(self) -> int:
        return self.e.dimension

    @property
    def point(self) -> Vector:
        return tuple(self.x * c for c in self.e.coords)


# ---------- Hyperplanes ----------


@dataclass(frozen=True)
class Hyperplane:
    """The affine hyperplane {v : f(v) = y}, stored as the pair [f, y]."""

    f: Vector
    y: Scalar

    def __post_init__(self) -> None:
        if all(c == 0 for c in self.f):
            raise ZeroCovector("hyperplane covector f must be nonzero")

    @property
    def dimension(self) -> int:
        return len(self.f)

    @property
    def exact(self) -> bool:
        return is_exact(self.f + (self.y,))


def canonicalize_hyperplane(f: Iterable[object], y: object, exact: bool = True) -> Hyperplane:
    """Scale [f, y] so the first nonzero coordinate of f is positive.

    Exact mode additionally makes f an integer covector of content 1; float
    mode makes f a unit covector.
    """
    f_vec = to_vector(f, exact)
    y_scalar = to_scalar(y, exact)
    s = _canonical_factor(f_vec, exact)
    return Hyperplane(tuple(s * c for c in f_vec), s * y_scalar)


# ---------- Incidence and the (*) predicates ----------


class IncidenceTag(Enum):
    PARALLEL = "parallel"
    FINITE = "finite"


@dataclass(frozen=True)
class Incidence:
    tag: IncidenceTag
    t: Optional[Scalar] = None

    @property
    def parallel(self) -> bool:
        return self.tag is IncidenceTag.PARALLEL


def _check_dims(h: Hyperplane, e: Direction) -> None:
    if h.dimension != e.dimension:
        raise DimensionMismatch(
            f"hyperplane of dimension {h.dimension} vs direction of dimension {e.dimension}"
        )


def incidence(h: Hyperplane, e: Union[Direction, Iterable[object]]) -> Incidence:
    """Where the line Re meets h: Parallel, or Finite(t) with t e on h."""
    direction = Direction.of(e, h.exact)
    _check_dims(h, direction)
    fe = dot(h.f, direction.coords)
    if fe == 0:
        return Incidence(IncidenceTag.PARALLEL)
    return Incidence(IncidenceTag.FINITE, h.y / fe)


def star_residual(h: Hyperplane, p: HopfPoint) -> Scalar:
    """y f(e) - x f(e)^2; nonnegative on the upper side, nonpositive on the lower."""
    _check_dims(h, p.e)
    fe = dot(h.f, p.e.coords)
    return h.y * fe - p.x * fe * fe


def star_upper(h: Hyperplane, p: HopfPoint) -> bool:
    return star_residual(h, p) >= 0


def star_lower(h: Hyperplane, p: HopfPoint) -> bool:
    return star_residual(h, p) <= 0
