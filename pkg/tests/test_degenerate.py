from fractions import Fraction

import pytest

from src.errors import WrongMode
from src.geometry.core import HopfPoint
from src.geometry.measure import verify_star
from src.solvers.degenerate import detect_case_ii, exact_kernel, solve_degenerate
from src.solvers.instance import ExactCertificate, Method

from conftest import hyperplanes, points


def test_detect_case_ii_examples(parallel_pair_2d, basis_2d):
    assert [d.coords for d in detect_case_ii(parallel_pair_2d)] == [(0, 1)]
    assert detect_case_ii(basis_2d) == []
    same_normal = hyperplanes([((1, 2), 0), ((1, 2), 3)], [((1, 2), -1)])
    assert [d.coords for d in detect_case_ii(same_normal)] == [(2, -1)]


def test_detect_case_ii_needs_half_of_every_family():
    # family 0 is only one third parallel to (0, 1)
    instance = hyperplanes([((1, 0), 0), ((0, 1), 1), ((0, 1), 2)], [((1, 0), 1)])
    assert detect_case_ii(instance) == []


def test_detect_case_ii_in_three_dimensions():
    instance = hyperplanes([((1, 0, 0), 0)], [((1, 0, 0), 1)])
    found = detect_case_ii(instance)
    assert found
    assert all(d.coords[0] == 0 for d in found)


def test_detect_case_ii_rejects_points():
    with pytest.raises(WrongMode):
        detect_case_ii(points([((0, 0),)]))


def test_exact_kernel_is_annihilated():
    rows = [(1, 2, 3), (Fraction(1, 2), 0, -1)]
    basis = exact_kernel(rows)
    assert len(basis) == 1
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in rows)


def test_solve_degenerate_whole_line(parallel_pair_2d):
    (solution,) = solve_degenerate(parallel_pair_2d)
    assert solution.method is Method.DEGENERATE
    assert isinstance(solution.certificate, ExactCertificate)
    assert solution.p == HopfPoint.of((0, 1), 0)
    assert solution.x_interval.whole_line
    # any point of the line works
    for x in (Fraction(17), Fraction(-3, 7)):
        assert all(r.satisfied for r in verify_star(parallel_pair_2d.families, HopfPoint.of((0, 1), x)))


def test_solve_degenerate_empty_without_parallel_direction(basis_2d):
    assert solve_degenerate(basis_2d) == []


def test_solve_degenerate_in_three_dimensions():
    instance = hyperplanes([((1, 0, 0), 0)], [((1, 0, 0), 1)])
    solutions = solve_degenerate(instance)
    assert solutions
    for s in solutions:
        assert s.method is Method.DEGENERATE
        assert all(r.satisfied for r in verify_star(instance.families, s.p))
