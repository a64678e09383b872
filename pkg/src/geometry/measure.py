"""Finite weighted families of hyperplanes (or points) and their (*) side masses."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.errors import DimensionMismatch, InvalidMeasure, ZeroCovector
from src.geometry.core import (
    Direction,
    HopfPoint,
    Hyperplane,
    Scalar,
    Vector,
    canonicalize_hyperplane,
    dot,
    star_residual,
    to_scalar,
    to_vector,
)

HALF = Fraction(1, 2)
INF = math.inf

# (f, y) or (f, y, w) for hyperplanes; (v,) or (v, w) for points
HyperplaneElement = Union[Tuple[Sequence[object], object], Tuple[Sequence[object], object, object]]


def _normalize(weights: Dict[object, Scalar], exact: bool) -> Dict[object, Scalar]:
    total = sum(weights.values())
    if exact:
        return {k: Fraction(w) / total for k, w in weights.items()}
    return {k: float(w) / float(total) for k, w in weights.items()}


def _checked_weight(raw: object, exact: bool) -> Scalar:
    w = to_scalar(raw, exact)
    if not w > 0:
        raise InvalidMeasure(f"weights must be positive, got {raw!r}")
    return w


@dataclass(frozen=True)
class WeightedFamily:
    """A finite atomic probability measure on hyperplanes.

    Atoms are canonical and pairwise distinct; weights sum to 1.
    """

    atoms: Tuple[Tuple[Hyperplane, Scalar], ...]
    label: str = ""

    @classmethod
    def build(
        cls,
        elements: Iterable[HyperplaneElement],
        label: str = "",
        exact: bool = True,
    ) -> "WeightedFamily":
        merged: Dict[Hyperplane, Scalar] = {}
        for element in elements:
            f, y = element[0], element[1]
            w = _checked_weight(element[2] if len(element) > 2 else 1, exact)
            h = canonicalize_hyperplane(f, y, exact)
            merged[h] = merged.get(h, 0) + w
        if not merged:
            raise InvalidMeasure(f"family {label!r} has no atoms")
        dims = {h.dimension for h in merged}
        if len(dims) != 1:
            raise DimensionMismatch(f"family {label!r} mixes dimensions {sorted(dims)}")
        normalized = _normalize(merged, exact)
        return cls(tuple(normalized.items()), label)

    @property
    def dimension(self) -> int:
        return self.atoms[0][0].dimension

    @property
    def exact(self) -> bool:
        return all(h.exact and isinstance(w, Fraction) for h, w in self.atoms)


@dataclass(frozen=True)
class PointFamily:
    """A finite atomic probability measure on points of V."""

    atoms: Tuple[Tuple[Vector, Scalar], ...]
    label: str = ""

    @classmethod
    def build(
        cls,
        elements: Iterable[Tuple[object, ...]],
        label: str = "",
        exact: bool = True,
    ) -> "PointFamily":
        merged: Dict[Vector, Scalar] = {}
        for element in elements:
            v = to_vector(element[0], exact)
            w = _checked_weight(element[1] if len(element) > 1 else 1, exact)
            merged[v] = merged.get(v, 0) + w
        if not merged:
            raise InvalidMeasure(f"family {label!r} has no atoms")
        dims = {len(v) for v in merged}
        if len(dims) != 1:
            raise DimensionMismatch(f"family {label!r} mixes dimensions {sorted(dims)}")
        normalized = _normalize(merged, exact)
        return cls(tuple(normalized.items()), label)

    @property
    def dimension(self) -> int:
        return len(self.atoms[0][0])

    @property
    def exact(self) -> bool:
        return all(
            all(isinstance(c, Fraction) for c in v) and isinstance(w, Fraction)
            for v, w in self.atoms
        )


@dataclass(frozen=True)
class MedianInterval:
    """Closed interval [lo, hi] of admissible x; endpoints may be -inf / +inf."""

    lo: Scalar
    hi: Scalar

    @property
    def whole_line(self) -> bool:
        return self.lo == -INF and self.hi == INF

    def contains(self, x: Scalar) -> bool:
        return self.lo <= x <= self.hi

    def __neg__(self) -> "MedianInterval":
        return MedianInterval(-self.hi, -self.lo)


@dataclass(frozen=True)
class SideReport:
    """Masses on the two sides of one family.

    ``pessimistic_*`` differ from the plain masses only when an eps-fence
    was used: they drop atoms that sit within the fence without touching it.
    """

    upper_mass: Scalar
    lower_mass: Scalar
    fence_mass: Scalar
    satisfied: bool
    pessimistic_upper: Optional[Scalar] = None
    pessimistic_lower: Optional[Scalar] = None

    @property
    def margin(self) -> Scalar:
        return min(self.upper_mass, self.lower_mass) - HALF


# ---------- Hyperplane mode ----------


def _check_family_dim(family: Union[WeightedFamily, PointFamily], dimension: int) -> None:
    if family.dimension != dimension:
        raise DimensionMismatch(
            f"family {family.label!r} has dimension {family.dimension}, expected {dimension}"
        )


def _near_fence(h: Hyperplane, p: HopfPoint, r: Scalar, eps: Scalar) -> bool:
    """|r| <= eps * max(|y|, max|f_k|) * max(1, |x|) * |e|^2 on the given representatives.

    Compared in squares so that exact mode never needs a square root.
    """
    size = max(abs(h.y), max(abs(c) for c in h.f))
    e_sq = p.e.norm_squared()
    return r * r <= eps * eps * size * size * max(1, p.x * p.x) * e_sq * e_sq


def _tally(
    residuals: Iterable[Tuple[Scalar, Scalar, bool]],
) -> SideReport:
    """Accumulate (residual, weight, near_fence) triples into a report."""
    upper = lower = fence = 0
    pes_upper = pes_lower = 0
    for r, w, near in residuals:
        on_fence = r == 0 or near
        if r >= 0 or near:
            upper += w
        if r <= 0 or near:
            lower += w
        if on_fence:
            fence += w
        if r == 0 or not near:
            if r >= 0:
                pes_upper += w
            if r <= 0:
                pes_lower += w
    return SideReport(
        upper_mass=upper,
        lower_mass=lower,
        fence_mass=fence,
        satisfied=upper >= HALF and lower >= HALF,
        pessimistic_upper=pes_upper,
        pessimistic_lower=pes_lower,
    )


def side_masses(family: WeightedFamily, p: HopfPoint) -> SideReport:
    """Masses of {y f(e) >= x f(e)^2} and {y f(e) <= x f(e)^2} at the point p."""
    _check_family_dim(family, p.dimension)
    return _tally((star_residual(h, p), w, False) for h, w in family.atoms)


def parallel_mass(family: WeightedFamily, e: Union[Direction, Iterable[object]]) -> Scalar:
    direction = Direction.of(e, family.exact)
    _check_family_dim(family, direction.dimension)
    return sum((w for h, w in family.atoms if dot(h.f, direction.coords) == 0), 0)


def weighted_median_interval(params: Sequence[Tuple[Scalar, Scalar]], tau: Scalar) -> MedianInterval:
    """The x with at least tau weight on each closed side among the params.

    ``lo`` is the smallest t with sum(w_i : t_i <= t) >= tau and ``hi`` the
    largest t with sum(w_i : t_i >= t) >= tau.
    """
    if tau <= 0:
        return MedianInterval(-INF, INF)
    ordered = sorted(params, key=lambda tw: tw[0])
    if not ordered:
        raise InvalidMeasure("no finite parameters to select from")

    lo = ordered[-1][0]
    acc: Scalar = 0
    for t, w in ordered:
        acc += w
        if acc >= tau:
            lo = t
            break

    hi = ordered[0][0]
    acc = 0
    for t, w in reversed(ordered):
        acc += w
        if acc >= tau:
            hi = t
            break
    return MedianInterval(lo, hi)


def incidence_params(
    family: WeightedFamily, e: Union[Direction, Iterable[object]]
) -> Tuple[List[Tuple[Scalar, Scalar]], Scalar]:
    """Finite incidence parameters (t_i, w_i) along e and the parallel mass."""
    direction = Direction.of(e, family.exact)
    _check_family_dim(family, direction.dimension)
    params: List[Tuple[Scalar, Scalar]] = []
    parallel: Scalar = 0
    for h, w in family.atoms:
        fe = dot(h.f, direction.coords)
        if fe == 0:
            parallel += w
        else:
            params.append((h.y / fe, w))
    return params, parallel


def median_interval(family: WeightedFamily, e: Union[Direction, Iterable[object]]) -> MedianInterval:
    """All x with side_masses(family, (e, x)) satisfied, as one closed interval."""
    params, parallel = incidence_params(family, e)
    return weighted_median_interval(params, HALF - parallel)


def verify_star(
    instance: Sequence[WeightedFamily],
    p: HopfPoint,
    eps: object = 0,
) -> List[SideReport]:
    """Certification oracle for (*), one report per family.

    With eps > 0 atoms with |y f(e) - x f(e)^2| <= eps * scale(h) count on both
    sides of the optimistic masses and are dropped from the pessimistic ones.
    """
    eps_value = to_scalar(eps, p.e.exact and isinstance(p.x, (Fraction, int)))
    reports: List[SideReport] = []
    for family in instance:
        _check_family_dim(family, p.dimension)
        triples = []
        for h, w in family.atoms:
            r = star_residual(h, p)
            near = eps_value > 0 and _near_fence(h, p, r, eps_value)
            triples.append((r, w, near))
        reports.append(_tally(triples))
    return reports


# ---------- Classical (point) mode ----------


def point_params(family: PointFamily, f: Sequence[object]) -> List[Tuple[Scalar, Scalar]]:
    """Values f(v_i) with their weights."""
    f_vec = to_vector(f, family.exact)
    if all(c == 0 for c in f_vec):
        raise ZeroCovector("classical direction f must be nonzero")
    _check_family_dim(family, len(f_vec))
    return [(dot(f_vec, v), w) for v, w in family.atoms]


def point_median_interval(family: PointFamily, f: Sequence[object]) -> MedianInterval:
    return weighted_median_interval(point_params(family, f), HALF)


def verify_classical(
    instance: Sequence[PointFamily],
    h: Hyperplane,
    eps: object = 0,
) -> List[SideReport]:
    """Oracle for (**): upper = mass of {f(v) <= y}, lower = mass of {f(v) >= y}."""
    eps_value = to_scalar(eps, h.exact)
    size = max(abs(h.y), max(abs(c) for c in h.f))
    reports: List[SideReport] = []
    for family in instance:
        _check_family_dim(family, h.dimension)
        triples = []
        for v, w in family.atoms:
            r = h.y - dot(h.f, v)
            scale = size * max([1] + [abs(c) for c in v])
            near = eps_value > 0 and abs(r) <= eps_value * scale
            triples.append((r, w, near))
        reports.append(_tally(triples))
    return reports
