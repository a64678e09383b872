"""Exact event enumeration on the projective line of directions (dimension 2).

Along an arc between consecutive event directions every per-family interval
endpoint is a fixed atom parameter, and a sign change of lo_j - hi_k forces a
tie between two parameters, which is itself an event. Evaluating the gap at
every event direction and at one rational interior point per arc therefore
meets every connected component of the solution set.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations
from typing import Callable, List, Optional, Sequence, Tuple

from src.errors import NotExactInput, WrongDimension, WrongMode
from src.geometry.core import Direction, HopfPoint, Hyperplane, Vector, canonicalize_direction
from src.geometry.measure import verify_classical, verify_star
from src.solvers.gap import choose_x, gap
from src.solvers.instance import (
    ExactCertificate,
    GapValue,
    Instance,
    Method,
    Mode,
    Solution,
    all_satisfied,
)

LOGGER = logging.getLogger(__name__)

Arc = Tuple[Optional[Direction], Optional[Direction], Direction]


# ---------- Events ----------


def hyperplane_event_covectors(instance: Instance) -> List[Vector]:
    """Atom covectors f_i (parallelism) and y_i f_k - y_k f_i (parameter ties)."""
    atoms = [h for family in instance.families for h, _ in family.atoms]
    covectors: List[Vector] = [h.f for h in atoms]
    for a, b in combinations(atoms, 2):
        tie = tuple(a.y * fb - b.y * fa for fa, fb in zip(a.f, b.f))
        # identically equal parameters never change order
        if any(c != 0 for c in tie):
            covectors.append(tie)
    return covectors


def point_event_covectors(instance: Instance) -> List[Vector]:
    """Differences v_i - v_k: f(v_i) = f(v_k) exactly when f annihilates them."""
    points = [v for family in instance.families for v, _ in family.atoms]
    covectors: List[Vector] = []
    for a, b in combinations(points, 2):
        diff = tuple(ai - bi for ai, bi in zip(a, b))
        if any(c != 0 for c in diff):
            covectors.append(diff)
    return covectors


def kernel_direction(c: Vector) -> Direction:
    return canonicalize_direction((-c[1], c[0]))


def _angle_key(d: Direction) -> Tuple[int, Fraction]:
    # canonical 2-D directions have angle in (-pi/2, pi/2]; order by slope, vertical last
    a, b = d.coords
    if a > 0:
        return (0, Fraction(b) / Fraction(a))
    return (1, Fraction(0))


def candidate_directions(covectors: Sequence[Vector]) -> List[Direction]:
    unique = {kernel_direction(c) for c in covectors}
    return sorted(unique, key=_angle_key)


def arc_samples(candidates: Sequence[Direction]) -> List[Arc]:
    """(start, end, interior sample) for every arc between consecutive candidates.

    The last arc wraps through the vertical direction and uses the negation of
    the first candidate as its far end.
    """
    if not candidates:
        return [(None, None, Direction((Fraction(1), Fraction(0))))]
    if len(candidates) == 1:
        c = candidates[0]
        return [(c, c, canonicalize_direction((-c.coords[1], c.coords[0])))]
    arcs: List[Arc] = []
    for start, end in zip(candidates, candidates[1:]):
        sample = tuple(s + t for s, t in zip(start.coords, end.coords))
        arcs.append((start, end, canonicalize_direction(sample)))
    first, last = candidates[0], candidates[-1]
    wrap = tuple(s - t for s, t in zip(last.coords, first.coords))
    arcs.append((last, first, canonicalize_direction(wrap)))
    return arcs


# ---------- Enumeration ----------


SolutionBuilder = Callable[[Direction, GapValue, Optional[Tuple[Direction, Direction]]], Optional[Solution]]


def enumerate_solutions(
    instance: Instance, covectors: Sequence[Vector], build: SolutionBuilder
) -> List[Solution]:
    """Isolated feasible event directions plus one representative per feasible arc."""
    candidates = candidate_directions(covectors)
    arcs = arc_samples(candidates)
    vertex_gaps = [gap(instance, c) for c in candidates]
    arc_gaps = [gap(instance, sample) for _, _, sample in arcs]
    arc_ok = [gv.feasible for gv in arc_gaps]
    LOGGER.debug(
        "%d event directions, %d arcs, %d feasible arcs",
        len(candidates),
        len(arcs),
        sum(arc_ok),
    )

    n = len(candidates)
    solutions: List[Solution] = []
    for i, direction in enumerate(candidates):
        touches_arc = arc_ok[i] or arc_ok[(i - 1) % n]
        if vertex_gaps[i].feasible and not touches_arc:
            found = build(direction, vertex_gaps[i], None)
            if found is not None:
                solutions.append(found)
        if arc_ok[i]:
            start, end, sample = arcs[i]
            found = build(sample, arc_gaps[i], (start, end) if start is not None else None)
            if found is not None:
                solutions.append(found)
    if n == 0 and arc_ok[0]:
        found = build(arcs[0][2], arc_gaps[0], None)
        if found is not None:
            solutions.append(found)
    LOGGER.info("exact 2-D enumeration found %d solution(s)", len(solutions))
    return solutions


def _check_exact_2d(instance: Instance, mode: Mode) -> None:
    if instance.mode is not mode:
        raise WrongMode(f"expected a {mode.value} instance, got {instance.mode.value}")
    if instance.dimension != 2:
        raise WrongDimension(f"exact enumeration needs dimension 2, got {instance.dimension}")
    if not instance.exact:
        raise NotExactInput("exact enumeration needs rational inputs")


def solve_exact_2d(instance: Instance) -> List[Solution]:
    """All solutions of (*) for a rational 2-D instance, each exactly certified."""
    _check_exact_2d(instance, Mode.HYPERPLANE)

    def build(direction, gv, arc):
        x = choose_x(gv.intervals)
        point = HopfPoint.of(direction, x)
        reports = tuple(verify_star(instance.families, point))
        if not all_satisfied(reports):
            LOGGER.error("oracle rejected enumerated direction %s", direction)
            return None
        method = Method.DEGENERATE if gv.witness.whole_line else Method.EXACT_2D
        return Solution(
            p=point,
            reports=reports,
            certificate=ExactCertificate(),
            method=method,
            x_interval=gv.witness,
            arc=arc,
            guaranteed=instance.guaranteed,
        )

    return enumerate_solutions(instance, hyperplane_event_covectors(instance), build)


def solve_classical_exact_2d(instance: Instance) -> List[Solution]:
    """All (**) bisecting lines of a rational 2-D point instance, up to arcs."""
    _check_exact_2d(instance, Mode.CLASSICAL)

    def build(direction, gv, arc):
        y = choose_x(gv.intervals)
        h = Hyperplane(direction.coords, Fraction(y))
        reports = tuple(verify_classical(instance.families, h))
        if not all_satisfied(reports):
            LOGGER.error("oracle rejected enumerated covector %s", direction)
            return None
        return Solution(
            p=h,
            reports=reports,
            certificate=ExactCertificate(),
            method=Method.EXACT_2D,
            x_interval=gv.witness,
            arc=arc,
            guaranteed=instance.guaranteed,
        )

    return enumerate_solutions(instance, point_event_covectors(instance), build)
