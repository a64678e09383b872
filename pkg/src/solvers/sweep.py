"""Certified numeric hemisphere sweep for dimension >= 2.

The sweep evaluates the gap on a seeded low-discrepancy sample of the closed
hemisphere and on event vertices (directions where m independent event
conditions hold), refines the best starts with Nelder-Mead on the sphere,
snaps them onto nearby event vertices, and finally hands the best direction
to the exact oracle with an eps-fence.
"""

from __future__ import annotations

import logging
from itertools import combinations, islice
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize
from scipy.stats import norm, qmc
from tqdm import tqdm

from src.errors import Infeasible
from src.geometry.core import Direction, HopfPoint, Hyperplane, to_scalar, to_vector
from src.geometry.measure import MedianInterval, verify_classical, verify_star
from src.solvers.exact_2d import hyperplane_event_covectors, point_event_covectors
from src.solvers.gap import choose_x
from src.solvers.instance import (
    BestEffort,
    FloatCertificate,
    Instance,
    Method,
    Mode,
    Solution,
    SolveResult,
    SweepConfig,
    all_satisfied,
    min_report_margin,
)

LOGGER = logging.getLogger(__name__)

# slack on cumulative weight sums; weights are normalized floats
WEIGHT_SLACK = 1e-12
# |f(e)| below this times |f| counts as parallel for unit e
PARALLEL_SLACK = 1e-12
# gap values are clamped so the simplex never sees inf
GAP_CLAMP = 1e12


# ---------- Vectorized gap ----------


def _lower_quantile(values: np.ndarray, weights: np.ndarray, mask: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """Row-wise smallest value whose cumulative unmasked weight reaches tau."""
    keyed = np.where(mask, np.inf, values)
    order = np.argsort(keyed, axis=1, kind="stable")
    sorted_values = np.take_along_axis(keyed, order, axis=1)
    sorted_weights = np.take_along_axis(np.where(mask, 0.0, weights), order, axis=1)
    cumulative = np.cumsum(sorted_weights, axis=1)
    reached = cumulative >= (tau[:, None] - WEIGHT_SLACK)
    idx = np.argmax(reached, axis=1)
    return sorted_values[np.arange(values.shape[0]), idx]


class FloatGapEvaluator:
    """Gap of an instance at many directions at once, in float arithmetic.

    Hyperplane families contribute parameters y_i / f_i(e) with (near-)parallel
    atoms masked out; point families contribute f(v_i).
    """

    def __init__(self, instance: Instance) -> None:
        self.mode = instance.mode
        self.dimension = instance.dimension
        self.families: List[Tuple[np.ndarray, Optional[np.ndarray], np.ndarray]] = []
        for family in instance.families:
            if instance.mode is Mode.HYPERPLANE:
                matrix = np.array([[float(c) for c in h.f] for h, _ in family.atoms])
                offsets = np.array([float(h.y) for h, _ in family.atoms])
            else:
                matrix = np.array([[float(c) for c in v] for v, _ in family.atoms])
                offsets = None
            weights = np.array([float(w) for _, w in family.atoms])
            self.families.append((matrix, offsets, weights))

    def intervals(self, directions: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Per-family (lo, hi) arrays of shape (N, families)."""
        directions = np.atleast_2d(directions)
        n_dirs = directions.shape[0]
        los, his = [], []
        for matrix, offsets, weights in self.families:
            proj = directions @ matrix.T
            w = np.broadcast_to(weights, proj.shape)
            if offsets is None:
                params = proj
                parallel = np.zeros(proj.shape, dtype=bool)
            else:
                parallel = np.abs(proj) <= PARALLEL_SLACK * np.linalg.norm(matrix, axis=1)
                with np.errstate(divide="ignore", invalid="ignore"):
                    params = np.where(parallel, 0.0, offsets / np.where(parallel, 1.0, proj))
            tau = 0.5 - (w * parallel).sum(axis=1)
            lo = _lower_quantile(params, w, parallel, tau)
            hi = -_lower_quantile(-params, w, parallel, tau)
            whole = tau <= WEIGHT_SLACK
            lo = np.where(whole, -np.inf, lo)
            hi = np.where(whole, np.inf, hi)
            los.append(lo.reshape(n_dirs))
            his.append(hi.reshape(n_dirs))
        return np.stack(los, axis=1), np.stack(his, axis=1)

    def gap(self, directions: np.ndarray) -> np.ndarray:
        lo, hi = self.intervals(directions)
        return lo.max(axis=1) - hi.min(axis=1)

    def gap_at(self, e: np.ndarray) -> float:
        return float(self.gap(e[None, :])[0])


# ---------- Seeds ----------


def hemisphere(directions: np.ndarray) -> np.ndarray:
    """Flip rows so their first nonzero coordinate is positive, then normalize."""
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    nonzero = directions != 0
    first = np.argmax(nonzero, axis=1)
    lead = directions[np.arange(directions.shape[0]), first]
    signs = np.where(lead < 0, -1.0, 1.0)
    flipped = directions * signs[:, None]
    norms = np.linalg.norm(flipped, axis=1)
    norms[norms == 0] = 1.0
    return flipped / norms[:, None]


def hemisphere_sample(dimension: int, count: int, seed: int) -> np.ndarray:
    """Scrambled Halton points pushed through the normal quantile onto the hemisphere."""
    sampler = qmc.Halton(d=dimension, scramble=True, seed=seed)
    unit = np.clip(sampler.random(count), 1e-12, 1 - 1e-12)
    return hemisphere(norm.ppf(unit))


def null_vectors(stacks: np.ndarray) -> np.ndarray:
    """Last right-singular vector of each (k, n) matrix in a (S, k, n) stack."""
    _, _, vt = np.linalg.svd(stacks)
    return vt[:, -1, :]


def event_matrix(instance: Instance) -> np.ndarray:
    """Unit-normalized float event covectors of the instance."""
    if instance.mode is Mode.HYPERPLANE:
        covectors = hyperplane_event_covectors(instance)
    else:
        covectors = point_event_covectors(instance)
    if not covectors:
        return np.zeros((0, instance.dimension))
    matrix = np.array([[float(c) for c in row] for row in covectors])
    norms = np.linalg.norm(matrix, axis=1)
    return matrix[norms > 0] / norms[norms > 0][:, None]


def event_vertices(events: np.ndarray, dimension: int, cap: int, rng: np.random.Generator) -> np.ndarray:
    """Directions annihilated by m = dimension - 1 event covectors.

    All subsets are used when there are at most ``cap`` of them; otherwise a
    seeded random selection of ``cap`` subsets.
    """
    k = dimension - 1
    if k < 1 or events.shape[0] < k:
        return np.zeros((0, dimension))
    subsets = list(islice(combinations(range(events.shape[0]), k), cap + 1))
    if len(subsets) > cap:
        subsets = [tuple(sorted(rng.choice(events.shape[0], size=k, replace=False))) for _ in range(cap)]
    stacks = events[np.array(subsets)]
    return hemisphere(null_vectors(stacks))


# ---------- Refinement ----------


def _unit(u: np.ndarray) -> np.ndarray:
    length = np.linalg.norm(u)
    return u / length if length > 0 else u


def polish(evaluator: FloatGapEvaluator, e: np.ndarray, events: np.ndarray) -> Tuple[np.ndarray, float]:
    """Snap e onto the null space of its smallest-residual event covectors."""
    k = evaluator.dimension - 1
    best_e, best_g = e, evaluator.gap_at(e)
    if k < 1 or events.shape[0] < k:
        return best_e, best_g
    residuals = np.abs(events @ e)
    nearest = np.argsort(residuals, kind="stable")[: 2 * k]
    subsets = np.array(list(combinations(nearest, k)))
    if subsets.size == 0:
        return best_e, best_g
    candidates = hemisphere(null_vectors(events[subsets]))
    gaps = evaluator.gap(candidates)
    i = int(np.argmin(gaps))
    if gaps[i] < best_g:
        best_e, best_g = candidates[i], float(gaps[i])
    return best_e, best_g


def refine(
    evaluator: FloatGapEvaluator,
    e0: np.ndarray,
    cfg: SweepConfig,
    events: np.ndarray,
) -> Tuple[np.ndarray, float]:
    """Simplex descent of the gap over u / |u|, restarted with a shrinking simplex."""
    n = evaluator.dimension

    def objective(u: np.ndarray) -> float:
        g = evaluator.gap_at(_unit(u))
        return float(np.clip(g, -1.0, GAP_CLAMP))

    best_e, best_g = polish(evaluator, e0, events)
    step = 0.1
    for _ in range(cfg.rounds):
        if best_g <= cfg.tol:
            break
        simplex = np.vstack([best_e, best_e + step * np.eye(n)])
        result = minimize(
            objective,
            best_e,
            method="Nelder-Mead",
            options={
                "maxiter": cfg.max_iters,
                "initial_simplex": simplex,
                "xatol": 1e-14,
                "fatol": 1e-15,
            },
        )
        candidate = hemisphere(_unit(result.x))[0]
        candidate, g = polish(evaluator, candidate, events)
        if g < best_g:
            best_e, best_g = candidate, g
        step *= cfg.shrink
    return best_e, best_g


# ---------- Certification ----------


def certify(
    instance: Instance,
    evaluator: FloatGapEvaluator,
    e: np.ndarray,
    cfg: SweepConfig,
) -> Tuple[Optional[Solution], Tuple]:
    """Run the oracle at e with x from the float intervals; a Solution if it passes."""
    lo_all, hi_all = evaluator.intervals(e[None, :])
    intervals = [MedianInterval(float(a), float(b)) for a, b in zip(lo_all[0], hi_all[0])]
    lo = max(interval.lo for interval in intervals)
    hi = min(interval.hi for interval in intervals)
    try:
        x = choose_x(intervals)
    except Infeasible:
        # overlap lost to rounding; the oracle decides
        x = choose_x([MedianInterval(hi, lo)])
    exact = instance.exact
    if instance.mode is Mode.HYPERPLANE:
        point = HopfPoint.signed(to_vector(e.tolist(), exact), x, exact)
        reports = tuple(verify_star(instance.families, point, cfg.eps))
        candidate = point
    else:
        candidate = Hyperplane(to_vector(e.tolist(), exact), to_scalar(x, exact))
        reports = tuple(verify_classical(instance.families, candidate, cfg.eps))
    if cfg.x_bound is not None and abs(x) >= cfg.x_bound:
        return None, reports
    if not all_satisfied(reports):
        return None, reports
    solution = Solution(
        p=candidate,
        reports=reports,
        certificate=FloatCertificate(eps=cfg.eps, min_margin=min_report_margin(reports)),
        method=Method.SWEEP,
        x_interval=MedianInterval(lo, hi),
        guaranteed=instance.guaranteed,
    )
    return solution, reports


# ---------- Driver ----------


def solve_sweep(instance: Instance, cfg: Optional[SweepConfig] = None) -> SolveResult:
    """Deterministic multi-start search for a certified solution (either mode)."""
    cfg = cfg or SweepConfig()
    evaluator = FloatGapEvaluator(instance)
    rng = np.random.default_rng(cfg.seed)
    events = event_matrix(instance)

    seeds = np.vstack(
        [
            hemisphere_sample(instance.dimension, cfg.grid_points, cfg.seed),
            event_vertices(events, instance.dimension, cfg.vertex_seeds, rng),
        ]
    )
    gaps = evaluator.gap(seeds)
    order = np.argsort(gaps, kind="stable")
    LOGGER.info(
        "sweep: %d seeds (%d events), best seed gap %.3e",
        seeds.shape[0],
        events.shape[0],
        float(gaps[order[0]]),
    )

    best: Optional[Tuple[float, int, np.ndarray]] = None
    starts = order[: max(1, cfg.starts)]
    for rank, index in enumerate(tqdm(starts, desc="refine", disable=not cfg.progress)):
        e, g = refine(evaluator, seeds[index], cfg, events)
        LOGGER.debug("start %d (seed %d): gap %.3e", rank, int(index), g)
        if g <= cfg.tol:
            solution, _ = certify(instance, evaluator, e, cfg)
            if solution is not None:
                LOGGER.info("sweep certified a solution from start %d", rank)
                return solution
        if best is None or g < best[0]:
            best = (g, rank, e)

    assert best is not None
    g, _, e = best
    _, reports = certify(instance, evaluator, e, cfg)
    LOGGER.info("sweep ended without certificate, best gap %.3e", g)
    return BestEffort(
        direction=Direction(tuple(float(c) for c in e)),
        gap=g,
        guaranteed=instance.guaranteed,
        reports=reports,
    )

