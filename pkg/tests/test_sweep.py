import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from src.geometry.core import Direction, HopfPoint
from src.geometry.measure import verify_star
from src.solvers.instance import BestEffort, FloatCertificate, Method, Solution, SweepConfig
from src.solvers.sweep import (
    FloatGapEvaluator,
    certify,
    event_matrix,
    event_vertices,
    hemisphere,
    hemisphere_sample,
    solve_sweep,
)

from conftest import hyperplanes


def test_hemisphere_flips_to_first_positive_coordinate():
    rows = hemisphere(np.array([[-3.0, 4.0], [0.0, -2.0]]))
    np.testing.assert_allclose(rows, [[0.6, -0.8], [0.0, 1.0]])


def test_hemisphere_sample_is_seeded_and_unit():
    a = hemisphere_sample(3, 64, seed=5)
    b = hemisphere_sample(3, 64, seed=5)
    np.testing.assert_array_equal(a, b)
    np.testing.assert_allclose(np.linalg.norm(a, axis=1), 1.0)


def test_float_gap_matches_exact_examples(basis_2d):
    evaluator = FloatGapEvaluator(basis_2d)
    gaps = evaluator.gap(hemisphere(np.array([[1.0, 0.0], [1.0, 1.0], [2.0, 1.0]])))
    assert gaps[0] == pytest.approx(0.0, abs=1e-12)
    assert gaps[1] == pytest.approx(0.0, abs=1e-12)
    # t_0 = sqrt(5)/2, t_1 = sqrt(5)
    assert gaps[2] == pytest.approx(np.sqrt(5) / 2)


def test_float_gap_whole_line_is_minus_infinity(parallel_pair_2d):
    evaluator = FloatGapEvaluator(parallel_pair_2d)
    assert evaluator.gap_at(np.array([0.0, 1.0])) == -np.inf


def test_event_vertices_annihilate_two_events(basis_3d):
    events = event_matrix(basis_3d)
    vertices = event_vertices(events, 3, cap=1000, rng=np.random.default_rng(0))
    assert vertices.shape[1] == 3
    residuals = np.abs(vertices @ events.T)
    assert np.all(np.sort(residuals, axis=1)[:, 1] < 1e-12)


def test_sweep_solves_three_dimensional_basis(basis_3d):
    result = solve_sweep(basis_3d)
    assert isinstance(result, Solution)
    assert result.method is Method.SWEEP
    assert isinstance(result.certificate, FloatCertificate)
    assert float(result.p.e.norm_squared()) == pytest.approx(1.0, abs=1e-12)
    assert all(r.satisfied for r in verify_star(basis_3d.families, result.p, eps=1e-7))


def test_three_dimensional_basis_has_seven_subset_solutions(basis_3d):
    subsets = [v for v in product((0, 1), repeat=3) if any(v)]
    assert len(subsets) == 7
    for v in subsets:
        assert all(r.satisfied for r in verify_star(basis_3d.families, HopfPoint.of(v, 1)))
    # halfway to (1, 1, 1) every family sees its atom on the upper side only
    assert not all(r.satisfied for r in verify_star(basis_3d.families, HopfPoint.of((1, 1, 1), Fraction(1, 2))))

    result = solve_sweep(basis_3d)
    found = np.array([float(c) for c in result.p.point])
    distances = [np.linalg.norm(found - np.array(v, dtype=float)) for v in subsets]
    assert min(distances) < 1e-6


def test_sweep_finds_kernel_line_in_three_dimensions():
    instance = hyperplanes([((1, 0, 0), 0)], [((1, 0, 0), 1)])
    result = solve_sweep(instance)
    assert isinstance(result, Solution)
    e = np.array([float(c) for c in result.p.e.coords])
    assert abs(e[0]) / np.linalg.norm(e) < 1e-9
    assert result.p.x == 0
    assert result.x_interval.whole_line


@pytest.mark.slow
def test_sweep_certifies_random_three_dimensional_instances(random_hyperplanes):
    cfg = SweepConfig(eps=1e-7)
    for seed in range(20):
        instance = random_hyperplanes(seed, 3, 3, [5, 5, 5])
        started = time.perf_counter()
        result = solve_sweep(instance, cfg)
        elapsed = time.perf_counter() - started
        assert isinstance(result, Solution), f"seed {seed}: {result}"
        assert elapsed < 5.0, f"seed {seed}: {elapsed:.2f}s"
        assert all(r.satisfied for r in verify_star(instance.families, result.p, eps=cfg.eps))
        assert result.certificate.min_margin >= 0


def test_sweep_reports_best_effort_when_infeasible(basis_extra_2d):
    result = solve_sweep(basis_extra_2d)
    assert isinstance(result, BestEffort)
    assert not result.guaranteed
    assert result.gap > 0.5
    assert "best direction" in result.describe()


def test_sweep_respects_x_bound(basis_2d):
    # every solution of the basis instance has |x| >= 1
    result = solve_sweep(basis_2d, SweepConfig(x_bound=0.5))
    assert isinstance(result, BestEffort)
    unbounded = solve_sweep(basis_2d)
    assert isinstance(unbounded, Solution)
    assert isinstance(unbounded.p, HopfPoint)


def test_sweep_is_deterministic(basis_3d):
    cfg = SweepConfig(seed=3)
    assert solve_sweep(basis_3d, cfg) == solve_sweep(basis_3d, cfg)


def test_certify_uses_the_shared_x_picker(basis_2d):
    evaluator = FloatGapEvaluator(basis_2d)
    solution, reports = certify(basis_2d, evaluator, np.array([1.0, 0.0]), SweepConfig())
    assert solution.p == HopfPoint(Direction.of((1, 0)), Fraction(1))
    assert len(reports) == 2


def test_certify_rejects_disjoint_intervals(basis_2d):
    evaluator = FloatGapEvaluator(basis_2d)
    e = hemisphere(np.array([2.0, 1.0]))[0]
    solution, reports = certify(basis_2d, evaluator, e, SweepConfig())
    assert solution is None
    assert not all(r.satisfied for r in reports)
