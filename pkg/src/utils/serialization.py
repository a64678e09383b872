"""JSON documents for instances and solutions.

Instance files::

    {"dimension": 2, "kind": "hyperplane", "guaranteed": true,
     "families": [{"name": "M0", "elements": [{"f": ["1", "0"], "y": "1", "w": "1"}]}]}

Point instances use ``{"v": [...], "w": ...}`` elements and ``"kind": "points"``.
Numbers may be JSON numbers, decimal strings or ``"p/q"`` ratios; instance
files are always read exactly (decimals as the rational they spell).
Solution files store exact scalars as ``"p/q"`` strings and float scalars as
JSON numbers, with ``"inf"`` / ``"-inf"`` for unbounded interval ends.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from src.errors import HamSandwichError, InstanceFormatError
from src.geometry.core import HopfPoint, Hyperplane, Scalar, to_exact, to_scalar
from src.geometry.measure import PointFamily, SideReport, WeightedFamily
from src.solvers.instance import (
    BestEffort,
    FloatCertificate,
    Instance,
    Mode,
    Solution,
)

KINDS = {"hyperplane": Mode.HYPERPLANE, "points": Mode.CLASSICAL}


# ---------- Scalars ----------


def format_scalar(value: Scalar) -> Union[str, float, int]:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    as_float = float(value)
    if math.isinf(as_float):
        return "inf" if as_float > 0 else "-inf"
    return as_float


def format_vector(values: Sequence[Scalar]) -> List[Union[str, float, int]]:
    return [format_scalar(v) for v in values]


def read_scalar(raw: Any, exact: bool = True) -> Scalar:
    """Strings as exact ratios/decimals; JSON floats as their dyadic value in exact mode."""
    if isinstance(raw, str) and raw.strip().lower() in {"inf", "+inf", "-inf"}:
        return float(raw.strip().lower())
    return to_scalar(raw, exact)


def _loads(text: str, source: str, parse_float=None) -> Any:
    try:
        return json.loads(text, parse_float=parse_float)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(
            f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _read_text(path: Path) -> str:
    return Path(path).read_text(encoding="utf-8")


# ---------- Instances ----------


def _require(mapping: Any, key: str, where: str) -> Any:
    if not isinstance(mapping, dict) or key not in mapping:
        raise InstanceFormatError(f"{where}: missing field {key!r}")
    return mapping[key]


def _parse_vector(raw: Any, dimension: int, where: str, exact: bool) -> Tuple[Scalar, ...]:
    if not isinstance(raw, list):
        raise InstanceFormatError(f"{where}: expected a list of numbers")
    if len(raw) != dimension:
        raise InstanceFormatError(f"{where}: has length {len(raw)}, dimension is {dimension}")
    try:
        return tuple(to_scalar(c, exact) for c in raw)
    except (HamSandwichError, ValueError, TypeError) as exc:
        raise InstanceFormatError(f"{where}: {exc}") from exc


def _parse_weight(element: Dict[str, Any], where: str, exact: bool) -> Scalar:
    try:
        w = to_scalar(element.get("w", 1), exact)
    except (HamSandwichError, ValueError, TypeError) as exc:
        raise InstanceFormatError(f"{where}: weight {exc}") from exc
    if not w > 0:
        raise InstanceFormatError(f"{where}: weight must be positive, got {element.get('w')!r}")
    return w


def _parse_family(raw: Any, index: int, dimension: int, mode: Mode, exact: bool):
    name = raw.get("name", f"family-{index}") if isinstance(raw, dict) else f"family-{index}"
    elements = _require(raw, "elements", f"family {name!r}")
    if not isinstance(elements, list) or not elements:
        raise InstanceFormatError(f"family {name!r}: needs a non-empty element list")
    parsed = []
    for i, element in enumerate(elements):
        where = f"family {name!r} element {i}"
        if not isinstance(element, dict):
            raise InstanceFormatError(f"{where}: expected an object")
        w = _parse_weight(element, where, exact)
        if mode is Mode.HYPERPLANE:
            f = _parse_vector(_require(element, "f", where), dimension, f"{where} field 'f'", exact)
            if all(c == 0 for c in f):
                raise InstanceFormatError(f"{where}: covector f is zero")
            try:
                y = to_scalar(_require(element, "y", where), exact)
            except (HamSandwichError, ValueError, TypeError) as exc:
                raise InstanceFormatError(f"{where} field 'y': {exc}") from exc
            parsed.append((f, y, w))
        else:
            v = _parse_vector(_require(element, "v", where), dimension, f"{where} field 'v'", exact)
            parsed.append((v, w))
    builder = WeightedFamily if mode is Mode.HYPERPLANE else PointFamily
    try:
        return builder.build(parsed, label=name, exact=exact)
    except HamSandwichError as exc:
        raise InstanceFormatError(f"family {name!r}: {exc}") from exc


def instance_from_dict(document: Any, exact: bool = True, source: str = "instance") -> Instance:
    dimension = _require(document, "dimension", source)
    if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension < 1:
        raise InstanceFormatError(f"{source}: dimension must be a positive integer")
    kind = document.get("kind", "hyperplane")
    if kind not in KINDS:
        raise InstanceFormatError(f"{source}: unknown kind {kind!r}, expected one of {sorted(KINDS)}")
    mode = KINDS[kind]
    families = _require(document, "families", source)
    if not isinstance(families, list) or not families:
        raise InstanceFormatError(f"{source}: needs at least one family")
    parsed = tuple(
        _parse_family(raw, index, dimension, mode, exact) for index, raw in enumerate(families)
    )
    return Instance(dimension, mode, parsed)


def load_instance(path: Union[str, Path], exact: bool = True) -> Instance:
    """Read an instance file; JSON decimals are read as exact decimals."""
    text = _read_text(Path(path))
    return instance_from_dict(_loads(text, str(path), parse_float=str), exact, str(path))


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    families = []
    for family in instance.families:
        elements = []
        for atom, w in family.atoms:
            if instance.mode is Mode.HYPERPLANE:
                elements.append({"f": format_vector(atom.f), "y": format_scalar(atom.y), "w": format_scalar(w)})
            else:
                elements.append({"v": format_vector(atom), "w": format_scalar(w)})
        families.append({"name": family.label, "elements": elements})
    return {
        "dimension": instance.dimension,
        "kind": instance.mode.value,
        "guaranteed": instance.guaranteed,
        "families": families,
    }


def write_json(document: Dict[str, Any], path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")


def save_instance(instance: Instance, path: Union[str, Path]) -> None:
    write_json(instance_to_dict(instance), path)


# ---------- Solutions ----------


def report_to_dict(report: SideReport, name: str = "") -> Dict[str, Any]:
    return {
        "name": name,
        "upper_mass": format_scalar(report.upper_mass),
        "lower_mass": format_scalar(report.lower_mass),
        "fence_mass": format_scalar(report.fence_mass),
    }


def _certificate_to_dict(solution: Solution) -> Dict[str, Any]:
    cert = solution.certificate
    if isinstance(cert, FloatCertificate):
        return {"kind": cert.kind, "eps": cert.eps, "min_margin": cert.min_margin}
    return {"kind": cert.kind}


def solution_to_dict(solution: Solution, names: Sequence[str] = ()) -> Dict[str, Any]:
    names = list(names) or [""] * len(solution.reports)
    document: Dict[str, Any] = {"mode": solution.mode.value}
    if isinstance(solution.p, HopfPoint):
        document["e"] = format_vector(solution.p.e.coords)
        document["x"] = format_scalar(solution.p.x)
        document["v"] = format_vector(solution.p.point)
    else:
        document["f"] = format_vector(solution.p.f)
        document["y"] = format_scalar(solution.p.y)
    document["per_family"] = [report_to_dict(r, n) for r, n in zip(solution.reports, names)]
    document["method"] = solution.method.value
    document["certificate"] = _certificate_to_dict(solution)
    if solution.x_interval is not None:
        document["x_interval"] = [
            format_scalar(solution.x_interval.lo),
            format_scalar(solution.x_interval.hi),
        ]
    if solution.arc is not None:
        document["arc"] = [format_vector(d.coords) for d in solution.arc]
    document["guaranteed"] = solution.guaranteed
    return document


def best_effort_to_dict(result: BestEffort) -> Dict[str, Any]:
    return {
        "direction": format_vector(result.direction.coords),
        "gap": format_scalar(result.gap),
        "per_family": [report_to_dict(r) for r in result.reports],
    }


def solution_set_to_dict(
    solutions: Sequence[Solution],
    guaranteed: bool,
    names: Sequence[str] = (),
    best_effort: Optional[BestEffort] = None,
) -> Dict[str, Any]:
    if solutions:
        status = "solved"
    elif best_effort is not None:
        status = "best_effort"
    else:
        status = "infeasible"
    document: Dict[str, Any] = {
        "status": status,
        "guaranteed": guaranteed,
        "solutions": [solution_to_dict(s, names) for s in solutions],
    }
    if best_effort is not None:
        document["best_effort"] = best_effort_to_dict(best_effort)
    return document


class SolutionRecord:
    """A parsed solution entry: the candidate plus what was stored alongside it."""

    def __init__(self, document: Dict[str, Any], where: str) -> None:
        self.document = document
        self.where = where
        self.mode = KINDS.get(document.get("mode", "hyperplane"))
        if self.mode is None:
            raise InstanceFormatError(f"{where}: unknown mode {document.get('mode')!r}")
        self.method = document.get("method")
        cert = document.get("certificate") or {"kind": "exact"}
        self.certificate_kind = cert.get("kind", "exact")
        self.certificate_eps = cert.get("eps", 0) if self.certificate_kind == "float" else 0
        try:
            if self.mode is Mode.HYPERPLANE:
                e = [to_exact(c) for c in _require(document, "e", where)]
                x = to_exact(_require(document, "x", where))
                # float certificates were issued on the stored representative
                build = HopfPoint.signed if self.certificate_kind == "float" else HopfPoint.of
                self.candidate: Union[HopfPoint, Hyperplane] = build(e, x)
            else:
                f = tuple(to_exact(c) for c in _require(document, "f", where))
                self.candidate = Hyperplane(f, to_exact(_require(document, "y", where)))
        except InstanceFormatError:
            raise
        except (HamSandwichError, ValueError, TypeError) as exc:
            raise InstanceFormatError(f"{where}: {exc}") from exc
        self.stored = [
            tuple(read_scalar(item[k]) for k in ("upper_mass", "lower_mass", "fence_mass"))
            for item in document.get("per_family", [])
        ]

    @property
    def dimension(self) -> int:
        return self.candidate.dimension


def solution_records(document: Any, source: str = "solution") -> List[SolutionRecord]:
    """Records from a single solution document or a solution-set document."""
    if not isinstance(document, dict):
        raise InstanceFormatError(f"{source}: expected a JSON object")
    if "solutions" in document:
        entries = document["solutions"]
        if not isinstance(entries, list):
            raise InstanceFormatError(f"{source}: 'solutions' must be a list")
        return [SolutionRecord(entry, f"{source} solution {i}") for i, entry in enumerate(entries)]
    return [SolutionRecord(document, source)]


def load_solutions(path: Union[str, Path]) -> List[SolutionRecord]:
    """Solution records; JSON floats are kept as floats and read as dyadic rationals."""
    text = _read_text(Path(path))
    return solution_records(_loads(text, str(path)), str(path))

