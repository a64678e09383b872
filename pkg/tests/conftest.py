"""Shared instances and random-instance factories."""

from __future__ import annotations

from pathlib import Path
from typing import Callable, List, Sequence, Tuple

import numpy as np
import pytest

from src.geometry.measure import PointFamily, WeightedFamily
from src.solvers.instance import Instance

DATA_DIR = Path(__file__).resolve().parents[1] / "data" / "instances"


def hyperplanes(*families: Sequence[Tuple]) -> Instance:
    """Instance from families given as lists of (f, y) or (f, y, w)."""
    return Instance.hyperplanes(
        [WeightedFamily.build(elements, label=f"M{j}") for j, elements in enumerate(families)]
    )


def points(*families: Sequence[Tuple]) -> Instance:
    return Instance.points(
        [PointFamily.build(elements, label=f"M{j}") for j, elements in enumerate(families)]
    )


def _nonzero(rng: np.random.Generator, dim: int, r: int) -> List[int]:
    while True:
        v = [int(c) for c in rng.integers(-r, r + 1, size=dim)]
        if any(v):
            return v


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def basis_2d() -> Instance:
    return hyperplanes([((1, 0), 1)], [((0, 1), 1)])


@pytest.fixture
def basis_extra_2d() -> Instance:
    return hyperplanes([((1, 0), 1)], [((0, 1), 1)], [((1, 1), 0)])


@pytest.fixture
def parallel_pair_2d() -> Instance:
    return hyperplanes([((1, 0), 0)], [((1, 0), 1)])


@pytest.fixture
def basis_3d() -> Instance:
    return hyperplanes([((1, 0, 0), 1)], [((0, 1, 0), 1)], [((0, 0, 1), 1)])


@pytest.fixture
def classical_symmetric() -> Instance:
    return points([((0, 0),), ((2, 0),)], [((1, 1),), ((1, -1),)])


@pytest.fixture
def random_hyperplanes() -> Callable[..., Instance]:
    def make(seed: int, dim: int, families: int, sizes: Sequence[int], r: int = 5) -> Instance:
        rng = np.random.default_rng(seed)
        built = []
        for j in range(families):
            elements = [(_nonzero(rng, dim, r), int(rng.integers(-r, r + 1))) for _ in range(sizes[j])]
            built.append(elements)
        return hyperplanes(*built)

    return make


@pytest.fixture
def random_points() -> Callable[..., Instance]:
    def make(seed: int, dim: int, families: int, sizes: Sequence[int], r: int = 5) -> Instance:
        rng = np.random.default_rng(seed)
        built = []
        for j in range(families):
            built.append([([int(c) for c in rng.integers(-r, r + 1, size=dim)],) for _ in range(sizes[j])])
        return points(*built)

    return make
