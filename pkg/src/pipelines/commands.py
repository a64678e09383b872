"""Command runners behind ``main.py``.

Every runner prints a human-readable report and returns the process exit
code: 0 on success, 1 on input errors, 2 when no certified solution exists
(or verification fails).
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from src.errors import HamSandwichError, InstanceFormatError, WrongDimension, WrongMode
from src.geometry.core import HopfPoint
from src.geometry.measure import SideReport, verify_classical, verify_star
from src.obstruction import (
    euler_power_closed_form,
    euler_power_reduce,
    euler_vanishes,
    fw_applicable,
    invert_total_class,
    parse_total_class,
)
from src.solvers import (
    BestEffort,
    FloatCertificate,
    Instance,
    Mode,
    Solution,
    SweepConfig,
    solve_classical,
    solve_classical_exact_2d,
    solve_degenerate,
    solve_exact_2d,
    solve_sweep,
)
from src.utils.generator import emit, random_instance_dict
from src.utils.serialization import (
    SolutionRecord,
    format_scalar,
    load_instance,
    load_solutions,
    solution_set_to_dict,
    write_json,
)
from src.utils.svg import render_svg, svgwrite

LOGGER = logging.getLogger(__name__)

MODE_CHOICES = {"hyperplane": Mode.HYPERPLANE, "classical": Mode.CLASSICAL}
METHOD_CHOICES = ("auto", "exact2d", "sweep")


def banner(title: str) -> None:
    print("\n" + "=" * 60)
    print(title)
    print("=" * 60)


def _names(instance: Instance) -> List[str]:
    return [family.label or f"family-{j}" for j, family in enumerate(instance.families)]


def _print_reports(names: Sequence[str], reports: Sequence[SideReport]) -> None:
    for name, report in zip(names, reports):
        status = "ok" if report.satisfied else "FAILED"
        print(
            f"  {name}: upper {report.upper_mass}, lower {report.lower_mass}, "
            f"fence {report.fence_mass}, margin {report.margin} [{status}]"
        )


def report_frame(rows: List[Tuple[int, str, SideReport]]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "solution": index,
                "family": name,
                "upper_mass": float(report.upper_mass),
                "lower_mass": float(report.lower_mass),
                "fence_mass": float(report.fence_mass),
                "margin": float(report.margin),
                "satisfied": report.satisfied,
            }
            for index, name, report in rows
        ]
    )


def _export_csv(csv_path: Optional[Path], rows: List[Tuple[int, str, SideReport]]) -> None:
    if csv_path is None:
        return
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    report_frame(rows).to_csv(csv_path, index=False)
    print(f"Per-family report saved to {csv_path}")


# ---------- solve ----------


def _pick_method(instance: Instance, method: str) -> str:
    if method == "auto":
        return "exact2d" if instance.dimension == 2 and instance.exact else "sweep"
    return method


def run_solver(
    instance: Instance, method: str, cfg: SweepConfig
) -> Tuple[List[Solution], Optional[BestEffort]]:
    """Dispatch to the exact enumeration or the sweep; returns (solutions, best effort)."""
    chosen = _pick_method(instance, method)
    LOGGER.info("solving %s instance with %s", instance.mode.value, chosen)
    if chosen == "exact2d":
        if instance.mode is Mode.HYPERPLANE:
            return solve_exact_2d(instance), None
        return solve_classical_exact_2d(instance), None

    if instance.mode is Mode.CLASSICAL:
        result = solve_classical(instance, cfg) if method == "auto" else solve_sweep(instance, cfg)
    else:
        result = solve_sweep(instance, cfg)
    if isinstance(result, Solution):
        return [result], None
    if instance.mode is Mode.HYPERPLANE:
        degenerate = solve_degenerate(instance)
        if degenerate:
            LOGGER.info("sweep fell back to %d case (ii) direction(s)", len(degenerate))
            return degenerate[:1], None
    return [], result


def _describe(solution: Solution) -> str:
    if isinstance(solution.p, HopfPoint):
        e = ", ".join(str(format_scalar(c)) for c in solution.p.e.coords)
        v = ", ".join(str(format_scalar(c)) for c in solution.p.point)
        text = f"e = ({e}), x = {format_scalar(solution.p.x)}, v = ({v})"
    else:
        f = ", ".join(str(format_scalar(c)) for c in solution.p.f)
        text = f"f = ({f}), y = {format_scalar(solution.p.y)}"
    cert = solution.certificate
    if isinstance(cert, FloatCertificate):
        kind = f"float(eps={cert.eps:g}, min margin={cert.min_margin:g})"
    else:
        kind = "exact"
    return f"{text}  [{solution.method.value}, {kind}]"


def cmd_solve(
    input_path: Path,
    output_path: Optional[Path] = None,
    mode: Optional[str] = None,
    method: str = "auto",
    cfg: Optional[SweepConfig] = None,
    csv_path: Optional[Path] = None,
) -> int:
    try:
        instance = load_instance(input_path)
        if mode is not None and MODE_CHOICES[mode] is not instance.mode:
            raise WrongMode(f"--mode {mode} does not match the {instance.mode.value} instance file")
        if _pick_method(instance, method) == "exact2d" and instance.dimension != 2:
            raise WrongDimension(f"exact2d needs dimension 2, got {instance.dimension}")
        cfg = cfg or SweepConfig.from_env()

        banner("Ham Sandwich solve")
        print(f"Instance: {input_path}")
        print(f"Dimension: {instance.dimension}, families: {len(instance.families)}, mode: {instance.mode.value}")
        if not instance.guaranteed:
            print("Note: more families than dimensions, existence is not guaranteed")

        solutions, best = run_solver(instance, method, cfg)
        names = _names(instance)
        document = solution_set_to_dict(solutions, instance.guaranteed, names, best)
        if output_path is not None:
            write_json(document, output_path)

        print(f"\nStatus: {document['status']}")
        rows = []
        for index, solution in enumerate(solutions):
            print(f"\n[{index}] {_describe(solution)}")
            _print_reports(names, solution.reports)
            rows.extend((index, name, report) for name, report in zip(names, solution.reports))
        if best is not None:
            print(f"\nNo certified solution: {best.describe()}")
        if output_path is not None:
            print(f"\nSolutions saved to {output_path}")
        _export_csv(csv_path, rows)
        return 0 if solutions else 2
    except (HamSandwichError, OSError) as e:
        print(f"Error: {str(e)}")
        return 1


# ---------- verify ----------


def _verify_record(instance: Instance, record: SolutionRecord, eps: Optional[float]) -> List[SideReport]:
    if record.mode is not instance.mode:
        raise InstanceFormatError(
            f"{record.where}: {record.mode.value} solution for a {instance.mode.value} instance"
        )
    if record.dimension != instance.dimension:
        raise InstanceFormatError(
            f"{record.where}: dimension {record.dimension} vs instance dimension {instance.dimension}"
        )
    eps_value = record.certificate_eps if eps is None else eps
    if instance.mode is Mode.HYPERPLANE:
        return verify_star(instance.families, record.candidate, eps_value)
    return verify_classical(instance.families, record.candidate, eps_value)


def cmd_verify(
    instance_path: Path,
    solution_path: Path,
    eps: Optional[float] = None,
    csv_path: Optional[Path] = None,
) -> int:
    try:
        instance = load_instance(instance_path)
        records = load_solutions(solution_path)
        names = _names(instance)

        banner("Ham Sandwich verify")
        print(f"Instance: {instance_path}")
        print(f"Solutions: {solution_path} ({len(records)} to check)")
        if not records:
            print("\nNothing to verify: the file holds no solutions")
            return 2

        all_ok = True
        rows = []
        for index, record in enumerate(records):
            reports = _verify_record(instance, record, eps)
            satisfied = all(report.satisfied for report in reports)
            all_ok = all_ok and satisfied
            margin = min(report.margin for report in reports)
            print(f"\n[{index}] {'satisfied' if satisfied else 'NOT satisfied'}, min margin {margin}")
            _print_reports(names, reports)
            if record.stored:
                fresh = [(r.upper_mass, r.lower_mass, r.fence_mass) for r in reports]
                print(f"  stored masses reproduced: {'yes' if fresh == record.stored else 'no'}")
            rows.extend((index, name, report) for name, report in zip(names, reports))
        _export_csv(csv_path, rows)
        return 0 if all_ok else 2
    except (HamSandwichError, OSError) as e:
        print(f"Error: {str(e)}")
        return 1


# ---------- gen ----------


def cmd_gen(
    dim: int,
    families: int,
    per_family: int,
    seed: int = 0,
    coord_range: int = 5,
    kind: str = "hyperplane",
    output_path: Optional[Path] = None,
) -> int:
    try:
        document = random_instance_dict(dim, families, per_family, seed, coord_range, kind)
        emit(document, output_path)
        if output_path is not None:
            print(f"Instance saved to {output_path} ({families * per_family} elements)")
        return 0
    except (ValueError, OSError) as e:
        print(f"Error: {str(e)}")
        return 1


# ---------- obstruction ----------


def cmd_obstruction(m: int, l: int, trunc: int, wE: str) -> int:
    try:
        w = parse_total_class(wE, trunc)
        inverse = invert_total_class(w, trunc)
        reduced = euler_power_reduce(w, m, l, trunc)
        closed = euler_power_closed_form(w, m, l, trunc)

        banner("Euler class obstruction")
        print(f"Base ring: F2[a]/(a^{trunc + 1}), rank m+1 = {m + 1}, power l = {l}")
        print(f"w(E)  = {w}")
        print(f"w(-E) = {inverse}")
        for j, d in enumerate(inverse.parts):
            print(f"  w_{j}(-E) = {d}")
        print(f"e(H)^{l} = {reduced}")
        for j, d in enumerate(closed.coeffs):
            print(f"  d_{j} = {d}")
        print(f"closed form agrees: {'yes' if closed == reduced else 'no'}")
        print(f"e(H)^{l} vanishes: {'yes' if euler_vanishes(w, m, l, trunc) else 'no'}")
        print(f"applicable (l >= m and w_(l-m)(-E) != 0): {'yes' if fw_applicable(w, m, l, trunc) else 'no'}")
        return 0
    except HamSandwichError as e:
        print(f"Error: {str(e)}")
        return 1


# ---------- plot ----------


def cmd_plot(instance_path: Path, solution_path: Path, out_path: Path, index: int = 0) -> int:
    try:
        instance = load_instance(instance_path)
        records = load_solutions(solution_path)
        if not records:
            print("Error: the solution file holds no solutions")
            return 2
        if not 0 <= index < len(records):
            raise InstanceFormatError(f"solution index {index} out of range (0..{len(records) - 1})")
        root = render_svg(instance, records[index].candidate)
        svgwrite(root, out_path)
        print(f"Figure saved to {out_path}")
        return 0
    except (HamSandwichError, OSError) as e:
        print(f"Error: {str(e)}")
        return 1
