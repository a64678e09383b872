"""
Main entry point for the Hyperplane Ham Sandwich toolkit.

Subcommands:
1. solve        Find points [e, x] meeting at least half of every family on both rays
2. verify       Re-check stored solutions against an instance in exact arithmetic
3. gen          Write a seeded random instance
4. obstruction  Mod-2 Euler class calculator for projective bundles
5. plot         SVG figure of a 2-D instance and one of its solutions

Usage:
    python main.py solve data/instances/basis_2d.json -o outputs/basis_2d.solution.json
    python main.py verify data/instances/basis_2d.json outputs/basis_2d.solution.json
    python main.py gen --dim 3 --families 3 --per-family 5 --seed 1 -o data/instances/random_3d.json
    python main.py obstruction --m 1 --l 2 --trunc 2 --wE "1,a"
    python main.py plot data/instances/basis_2d.json outputs/basis_2d.solution.json --out outputs/basis_2d.svg

Defaults for seed, tolerances and sweep sizes come from HAMSANDWICH_* variables
(see .env support below).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

# Load environment variables from .env file if present
load_dotenv()

from src.pipelines.commands import (  # noqa: E402
    METHOD_CHOICES,
    MODE_CHOICES,
    cmd_gen,
    cmd_obstruction,
    cmd_plot,
    cmd_solve,
    cmd_verify,
)
from src.solvers.instance import SweepConfig  # noqa: E402
from src.utils.config import load_settings  # noqa: E402
from src.utils.generator import add_generator_arguments  # noqa: E402

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    """Build the main argument parser."""
    settings = load_settings()
    parser = argparse.ArgumentParser(
        description="Hyperplane Ham Sandwich solver, verifier and obstruction calculator",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--log-level",
        default=settings.log_level,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level. Falls back to HAMSANDWICH_LOG_LEVEL.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    # solve
    solve = sub.add_parser(
        "solve",
        help="Solve an instance file",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    solve.add_argument("input", type=Path, help="Instance file (JSON)")
    solve.add_argument("-o", "--output", type=Path, default=None, help="Where to write the solutions")
    solve.add_argument("--mode", choices=sorted(MODE_CHOICES), default=None, help="Expected instance mode")
    solve.add_argument("--method", choices=METHOD_CHOICES, default="auto", help="Solver to use")
    solve.add_argument("--csv", type=Path, default=None, help="Optional per-family CSV report")

    sweep_group = solve.add_argument_group("Sweep Options")
    sweep_group.add_argument("--tol", type=float, default=settings.tol, help="Gap tolerance")
    sweep_group.add_argument("--eps", type=float, default=settings.eps, help="Oracle fence width")
    sweep_group.add_argument("--seed", type=int, default=settings.seed, help="Sampling seed")
    sweep_group.add_argument("--grid", type=int, default=settings.grid, help="Hemisphere sample size")
    sweep_group.add_argument("--max-iters", type=int, default=settings.max_iters, help="Simplex iterations per round")
    sweep_group.add_argument("--starts", type=int, default=settings.starts, help="Refined starting directions")
    sweep_group.add_argument("--x-bound", type=float, default=None, help="Reject sweep solutions with |x| at or above this")
    sweep_group.add_argument("--progress", action="store_true", help="Show a progress bar over the starts")

    # verify
    verify = sub.add_parser(
        "verify",
        help="Verify stored solutions",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    verify.add_argument("instance", type=Path, help="Instance file (JSON)")
    verify.add_argument("solution", type=Path, help="Solution or solution-set file (JSON)")
    verify.add_argument(
        "--eps",
        type=float,
        default=None,
        help="Fence width; defaults to the eps stored in each certificate (0 for exact ones)",
    )
    verify.add_argument("--csv", type=Path, default=None, help="Optional per-family CSV report")

    # gen
    gen = sub.add_parser(
        "gen",
        help="Generate a seeded random instance",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_generator_arguments(gen)

    # obstruction
    obstruction = sub.add_parser(
        "obstruction",
        help="Euler class powers over F2[a]/(a^(N+1))",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    obstruction.add_argument("--m", type=int, required=True, help="Bundle rank minus one")
    obstruction.add_argument("--l", type=int, required=True, help="Power of the Euler class")
    obstruction.add_argument("--trunc", type=int, default=0, help="Truncation degree N of the base ring")
    obstruction.add_argument("--wE", default="1", help='Total class of E by degree, e.g. "1,a,0"')

    # plot
    plot = sub.add_parser(
        "plot",
        help="Draw a 2-D instance with a solution as SVG",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    plot.add_argument("instance", type=Path, help="Instance file (JSON)")
    plot.add_argument("solution", type=Path, help="Solution or solution-set file (JSON)")
    plot.add_argument("--out", type=Path, required=True, help="SVG output path")
    plot.add_argument("--index", type=int, default=0, help="Which solution of a set to draw")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT)

    if args.command == "solve":
        cfg = SweepConfig(
            grid_points=args.grid,
            seed=args.seed,
            tol=args.tol,
            eps=args.eps,
            max_iters=args.max_iters,
            starts=args.starts,
            x_bound=args.x_bound,
            progress=args.progress,
        )
        return cmd_solve(args.input, args.output, args.mode, args.method, cfg, args.csv)
    if args.command == "verify":
        return cmd_verify(args.instance, args.solution, args.eps, args.csv)
    if args.command == "gen":
        return cmd_gen(
            args.dim,
            args.families,
            args.per_family,
            args.seed,
            args.coord_range,
            args.kind,
            args.output,
        )
    if args.command == "obstruction":
        return cmd_obstruction(args.m, args.l, args.trunc, args.wE)
    return cmd_plot(args.instance, args.solution, args.out, args.index)


if __name__ == "__main__":
    sys.exit(main())
