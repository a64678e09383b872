"""Directions where every family is at least half parallel (the whole line solves)."""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Set

import sympy

from src.errors import WrongMode
from src.geometry.core import Direction, HopfPoint, Vector, canonicalize_direction, to_exact
from src.geometry.measure import HALF, INF, MedianInterval, parallel_mass, verify_star
from src.solvers.instance import (
    ExactCertificate,
    Instance,
    Method,
    Mode,
    Solution,
    all_satisfied,
)

LOGGER = logging.getLogger(__name__)


def _rational(value: object) -> sympy.Rational:
    exact = to_exact(value)
    return sympy.Rational(exact.numerator, exact.denominator)


def exact_kernel(rows: Sequence[Vector]) -> List[Vector]:
    """A rational basis of the common kernel of the given covectors."""
    matrix = sympy.Matrix(
        [[_rational(c) for c in row] for row in rows]
    )
    basis = []
    for column in matrix.nullspace():
        basis.append(tuple(Fraction(int(c.p), int(c.q)) for c in column))
    return basis


def _kernel_samples(instance: Instance) -> Set[Direction]:
    covectors = sorted({h.f for family in instance.families for h, _ in family.atoms})
    samples: Set[Direction] = set()
    if instance.dimension == 2:
        for f in covectors:
            samples.add(canonicalize_direction((-to_exact(f[1]), to_exact(f[0]))))
        return samples
    for f in covectors:
        samples.update(canonicalize_direction(v) for v in exact_kernel([f]))
    for f, g in combinations(covectors, 2):
        samples.update(canonicalize_direction(v) for v in exact_kernel([f, g]))
    return samples


def detect_case_ii(instance: Instance) -> List[Direction]:
    """Canonical directions e with parallel_mass(family, e) >= 1/2 for every family.

    Each returned e solves (*) for every x. Candidates are the atom kernels in
    dimension 2; in higher dimension they are kernel basis vectors of single
    atoms and of atom pairs.
    """
    if instance.mode is not Mode.HYPERPLANE:
        raise WrongMode("case (ii) detection applies to hyperplane instances")
    if instance.dimension < 2:
        return []
    found = [
        d
        for d in _kernel_samples(instance)
        if all(parallel_mass(family, d) >= HALF for family in instance.families)
    ]
    found.sort(key=lambda d: tuple(Fraction(c) for c in d.coords))
    LOGGER.debug("case (ii) directions: %s", [str(d) for d in found])
    return found


def solve_degenerate(instance: Instance) -> List[Solution]:
    """Exactly certified whole-line solutions at the case (ii) directions, with x = 0."""
    found = []
    for direction in detect_case_ii(instance):
        point = HopfPoint.of(direction, 0)
        reports = tuple(verify_star(instance.families, point))
        if not all_satisfied(reports):
            LOGGER.error("oracle rejected case (ii) direction %s", direction)
            continue
        found.append(
            Solution(
                p=point,
                reports=reports,
                certificate=ExactCertificate(),
                method=Method.DEGENERATE,
                x_interval=MedianInterval(-INF, INF),
                guaranteed=instance.guaranteed,
            )
        )
    return found
