"""Seeded random instances with integer coordinates.

Usage:
    python generate_instance.py --dim 2 --families 2 --per-family 3 --seed 7
    python generate_instance.py --dim 3 --families 3 --per-family 5 --kind points -o data/instances/random.json
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List

import numpy as np

from src.solvers.instance import Instance
from src.utils.serialization import instance_from_dict, write_json

KIND_CHOICES = ("hyperplane", "points")


def _nonzero_vector(rng: np.random.Generator, dim: int, coord_range: int) -> List[int]:
    while True:
        v = rng.integers(-coord_range, coord_range + 1, size=dim)
        if np.any(v != 0):
            return [int(c) for c in v]


def random_instance_dict(
    dim: int,
    families: int,
    per_family: int,
    seed: int = 0,
    coord_range: int = 5,
    kind: str = "hyperplane",
) -> Dict[str, Any]:
    """An instance document; duplicate elements are left for the loader to merge."""
    if dim < 1 or families < 1 or per_family < 1:
        raise ValueError("dim, families and per-family must all be at least 1")
    if coord_range < 1:
        raise ValueError("coord-range must be at least 1")
    if kind not in KIND_CHOICES:
        raise ValueError(f"unknown kind {kind!r}")
    rng = np.random.default_rng(seed)
    out = []
    for j in range(families):
        elements = []
        for _ in range(per_family):
            if kind == "hyperplane":
                f = _nonzero_vector(rng, dim, coord_range)
                y = int(rng.integers(-coord_range, coord_range + 1))
                elements.append({"f": f, "y": y})
            else:
                v = [int(c) for c in rng.integers(-coord_range, coord_range + 1, size=dim)]
                elements.append({"v": v})
        out.append({"name": f"M{j}", "elements": elements})
    return {
        "dimension": dim,
        "kind": kind,
        "guaranteed": families <= dim,
        "families": out,
    }


def random_instance(
    dim: int,
    families: int,
    per_family: int,
    seed: int = 0,
    coord_range: int = 5,
    kind: str = "hyperplane",
) -> Instance:
    document = random_instance_dict(dim, families, per_family, seed, coord_range, kind)
    return instance_from_dict(document, source=f"generated(seed={seed})")


def build_argument_parser() -> argparse.ArgumentParser:
    """Build the argument parser for the generator CLI."""

    parser = argparse.ArgumentParser(
        description="Generate a seeded random Ham Sandwich instance",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_generator_arguments(parser)
    return parser


def add_generator_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dim", type=int, default=2, help="Ambient dimension m+1")
    parser.add_argument("--families", type=int, default=2, help="Number of families")
    parser.add_argument("--per-family", type=int, default=3, help="Elements per family")
    parser.add_argument("--seed", type=int, default=0, help="Random seed")
    parser.add_argument("--coord-range", type=int, default=5, help="Coordinates lie in [-R, R]")
    parser.add_argument("--kind", choices=KIND_CHOICES, default="hyperplane", help="Element kind")
    parser.add_argument(
        "-o",
        "--output",
        type=Path,
        default=None,
        help="Where to write the instance (stdout if omitted)",
    )


def emit(document: Dict[str, Any], output: Path | None) -> None:
    if output is None:
        sys.stdout.write(json.dumps(document, indent=2) + "\n")
    else:
        write_json(document, output)


def main() -> None:
    """Command-line entry point."""

    parser = build_argument_parser()
    args = parser.parse_args()
    try:
        document = random_instance_dict(
            args.dim, args.families, args.per_family, args.seed, args.coord_range, args.kind
        )
        emit(document, args.output)
    except (ValueError, OSError) as e:
        print(f"Error: {str(e)}")
        sys.exit(1)


if __name__ == "__main__":
    main()
