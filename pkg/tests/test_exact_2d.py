import math
from fractions import Fraction

import pytest

from src.errors import NotExactInput, WrongDimension, WrongMode
from src.geometry.core import Direction, canonicalize_direction
from src.geometry.measure import WeightedFamily, verify_star
from src.solvers.exact_2d import arc_samples, candidate_directions, solve_exact_2d
from src.solvers.gap import gap
from src.solvers.instance import ExactCertificate, Instance, Method

from conftest import hyperplanes, points

GRID_DIRECTIONS = 10_000


def _angle(d: Direction) -> float:
    a, b = (float(c) for c in canonicalize_direction(d).coords)
    return math.atan2(b, a)


def _in_arc(d: Direction, arc) -> bool:
    start, end = arc
    if d in (start, end):
        return True
    a, s, t = _angle(d), _angle(start), _angle(end)
    if start == end:
        return True
    if s < t:
        return s < a < t
    return a > s or a < t


def test_basis_instance_has_three_solutions(basis_2d):
    solutions = solve_exact_2d(basis_2d)
    assert len(solutions) == 3
    found = {tuple(s.p.e.coords): tuple(s.p.point) for s in solutions}
    assert found == {(1, 0): (1, 0), (1, 1): (1, 1), (0, 1): (0, 1)}
    for s in solutions:
        assert isinstance(s.certificate, ExactCertificate)
        assert s.method is Method.EXACT_2D
        assert all(r.satisfied for r in verify_star(basis_2d.families, s.p))


def test_extra_family_makes_basis_infeasible(basis_extra_2d):
    assert not basis_extra_2d.guaranteed
    assert solve_exact_2d(basis_extra_2d) == []
    events = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (1, -2), (2, -1)]
    assert not any(gap(basis_extra_2d, e).feasible for e in events)


def test_parallel_pair_gives_whole_line(parallel_pair_2d):
    solutions = solve_exact_2d(parallel_pair_2d)
    assert len(solutions) == 1
    (solution,) = solutions
    assert solution.p.e.coords == (0, 1)
    assert solution.p.x == 0
    assert solution.method is Method.DEGENERATE
    assert solution.x_interval.whole_line
    for x in (0, 1, -1, 10**6, -(10**6)):
        reports = verify_star(parallel_pair_2d.families, type(solution.p).of((0, 1), x))
        assert all(r.satisfied for r in reports)


def test_candidate_directions_sorted_by_slope_vertical_last():
    ordered = candidate_directions([(0, 1), (1, 0), (1, 1), (1, -1)])
    # kernels of the covectors, not the covectors themselves
    assert [d.coords for d in ordered] == [(1, -1), (1, 0), (1, 1), (0, 1)]


def test_arc_samples_lie_between_their_endpoints():
    ordered = candidate_directions([(0, 1), (1, 0), (-1, 1)])
    for start, end, sample in arc_samples(ordered):
        assert _in_arc(sample, (start, end))


def test_single_candidate_arc_uses_perpendicular():
    ((start, end, sample),) = arc_samples([Direction((Fraction(0), Fraction(1)))])
    assert start == end
    assert sample.coords == (1, 0)


@pytest.mark.parametrize(
    "make, error",
    [
        (lambda: hyperplanes([((1, 0, 0), 1)]), WrongDimension),
        (lambda: points([((0, 0),)]), WrongMode),
        (
            lambda: Instance.hyperplanes([WeightedFamily.build([((1.0, 0.5), 1.0)], exact=False)]),
            NotExactInput,
        ),
    ],
)
def test_solve_exact_2d_guards(make, error):
    with pytest.raises(error):
        solve_exact_2d(make())


@pytest.mark.slow
def test_two_families_in_the_plane_always_solvable(random_hyperplanes):
    for seed in range(200):
        sizes = [1 + seed % 9, 1 + (seed // 9) % 9]
        instance = random_hyperplanes(seed, 2, 2, sizes)
        solutions = solve_exact_2d(instance)
        assert solutions, f"seed {seed}"
        for s in solutions:
            assert all(r.satisfied for r in verify_star(instance.families, s.p))


@pytest.mark.slow
def test_enumeration_agrees_with_grid(random_hyperplanes):
    grid = []
    for k in range(GRID_DIRECTIONS):
        theta = math.pi * (k + 0.5) / GRID_DIRECTIONS - math.pi / 2
        grid.append(
            Direction(
                (
                    Fraction(math.cos(theta)).limit_denominator(10**6),
                    Fraction(math.sin(theta)).limit_denominator(10**6),
                )
            )
        )
    for seed in range(50):
        families = 2 + seed % 2
        sizes = [1 + (seed + j) % 4 for j in range(families)]
        instance = random_hyperplanes(1000 + seed, 2, families, sizes, r=3)
        solutions = solve_exact_2d(instance)
        reported = {canonicalize_direction(s.p.e) for s in solutions}
        arcs = [s.arc for s in solutions if s.arc is not None]
        for d in grid:
            if not gap(instance, d).feasible:
                continue
            assert solutions, f"seed {seed}: grid direction {d} feasible"
            c = canonicalize_direction(d)
            assert c in reported or any(_in_arc(c, arc) for arc in arcs), f"seed {seed}: {d}"
