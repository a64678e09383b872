"""SVG figures of 2-D instances with a solution drawn on top.

Hyperplane instances draw every atom line (class ``family-j``), the solution
line L = Re, the point v = x e and the two closed rays of L at v. Point
instances draw the points of every family and the bisecting line.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from itertools import combinations
from pathlib import Path
from typing import List, Tuple, Union

from src.errors import WrongDimension, WrongMode
from src.geometry.core import HopfPoint, Hyperplane
from src.solvers.instance import Instance, Mode

Point = Tuple[float, float]

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
CANVAS = 480
MARGIN = 0.15


def _fmt(value: float) -> str:
    text = f"{value:.6g}"
    return "0" if text == "-0" else text


def svgroot(box: Tuple[float, float, float, float]) -> ET.Element:
    xmin, ymin, xmax, ymax = box
    # world y grows upward; SVG y grows downward, so the viewBox is over (x, -y)
    return ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        version="1.1",
        width=f"{CANVAS}px",
        height=f"{CANVAS}px",
        viewBox=f"{_fmt(xmin)} {_fmt(-ymax)} {_fmt(xmax - xmin)} {_fmt(ymax - ymin)}",
    )


def svgline(parent: ET.Element, a: Point, b: Point, css: str, color: str, width: float) -> ET.Element:
    return ET.SubElement(
        parent,
        "line",
        {
            "class": css,
            "x1": _fmt(a[0]),
            "y1": _fmt(-a[1]),
            "x2": _fmt(b[0]),
            "y2": _fmt(-b[1]),
            "stroke": color,
            "stroke-width": _fmt(width),
        },
    )


def svgcircle(parent: ET.Element, c: Point, r: float, css: str, color: str) -> ET.Element:
    return ET.SubElement(
        parent,
        "circle",
        {"class": css, "cx": _fmt(c[0]), "cy": _fmt(-c[1]), "r": _fmt(r), "fill": color},
    )


# ---------- Geometry helpers ----------


def _floats(h: Hyperplane) -> Tuple[float, float, float]:
    return float(h.f[0]), float(h.f[1]), float(h.y)


def _foot(a: float, b: float, y: float) -> Point:
    """Point of {a u + b w = y} closest to the origin."""
    n2 = a * a + b * b
    return (a * y / n2, b * y / n2)


def _meet(h: Hyperplane, k: Hyperplane) -> Union[Point, None]:
    a1, b1, y1 = _floats(h)
    a2, b2, y2 = _floats(k)
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    return ((y1 * b2 - y2 * b1) / det, (a1 * y2 - a2 * y1) / det)


def fit_box(points: List[Point]) -> Tuple[float, float, float, float]:
    """Square bounding box of the points, padded by MARGIN and at least 2 wide."""
    xs = [p[0] for p in points] or [0.0]
    ys = [p[1] for p in points] or [0.0]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - min(xs), max(ys) - min(ys), 2.0) / 2
    half *= 1 + MARGIN
    return (cx - half, cy - half, cx + half, cy + half)


def _span(anchor: Point, direction: Point, box: Tuple[float, float, float, float]) -> Tuple[Point, Point]:
    """Segment along the line through anchor long enough to cross the box."""
    length = math.hypot(*direction)
    ux, uy = direction[0] / length, direction[1] / length
    reach = 2 * math.hypot(box[2] - box[0], box[3] - box[1]) + math.hypot(*anchor)
    return (
        (anchor[0] - reach * ux, anchor[1] - reach * uy),
        (anchor[0] + reach * ux, anchor[1] + reach * uy),
    )


# ---------- Figures ----------


def _hyperplane_figure(instance: Instance, p: HopfPoint) -> ET.Element:
    atoms = [(j, h) for j, family in enumerate(instance.families) for h, _ in family.atoms]
    e = (float(p.e.coords[0]), float(p.e.coords[1]))
    v = (float(p.point[0]), float(p.point[1]))

    anchors: List[Point] = [(0.0, 0.0), v]
    for (_, h), (_, k) in combinations(atoms, 2):
        meet = _meet(h, k)
        if meet is not None:
            anchors.append(meet)
    anchors.extend(_foot(*_floats(h)) for _, h in atoms)
    box = fit_box(anchors)
    stroke = (box[2] - box[0]) / 300

    root = svgroot(box)
    families = ET.SubElement(root, "g", {"id": "families"})
    for j, h in atoms:
        a, b, y = _floats(h)
        start, end = _span(_foot(a, b, y), (-b, a), box)
        svgline(families, start, end, f"family-{j}", PALETTE[j % len(PALETTE)], stroke)

    solution = ET.SubElement(root, "g", {"id": "solution"})
    start, end = _span((0.0, 0.0), e, box)
    svgline(solution, start, end, "solution-line", "#000000", stroke)
    reach = 2 * math.hypot(box[2] - box[0], box[3] - box[1])
    norm_e = math.hypot(*e)
    for sign, css in ((1.0, "ray ray-plus"), (-1.0, "ray ray-minus")):
        tip = (v[0] + sign * reach * e[0] / norm_e, v[1] + sign * reach * e[1] / norm_e)
        line = svgline(solution, v, tip, css, "#7f7f7f", 2 * stroke)
        line.set("stroke-dasharray", f"{_fmt(8 * stroke)} {_fmt(4 * stroke)}")
    svgcircle(solution, v, 4 * stroke, "solution-point", "#000000")
    return root


def _point_figure(instance: Instance, h: Hyperplane) -> ET.Element:
    points = [
        (j, (float(v[0]), float(v[1]))) for j, family in enumerate(instance.families) for v, _ in family.atoms
    ]
    a, b, y = _floats(h)
    foot = _foot(a, b, y)
    box = fit_box([pt for _, pt in points] + [foot])
    stroke = (box[2] - box[0]) / 300

    root = svgroot(box)
    families = ET.SubElement(root, "g", {"id": "families"})
    for j, pt in points:
        svgcircle(families, pt, 3 * stroke, f"family-{j}", PALETTE[j % len(PALETTE)])
    solution = ET.SubElement(root, "g", {"id": "solution"})
    start, end = _span(foot, (-b, a), box)
    svgline(solution, start, end, "solution-line", "#000000", stroke)
    return root


def render_svg(instance: Instance, candidate: Union[HopfPoint, Hyperplane]) -> ET.Element:
    if instance.dimension != 2:
        raise WrongDimension(f"figures need dimension 2, got {instance.dimension}")
    if instance.mode is Mode.HYPERPLANE:
        if not isinstance(candidate, HopfPoint):
            raise WrongMode("a hyperplane instance is drawn with a point [e, x]")
        return _hyperplane_figure(instance, candidate)
    if not isinstance(candidate, Hyperplane):
        raise WrongMode("a point instance is drawn with a hyperplane [f, y]")
    return _point_figure(instance, candidate)


def svg_string(root: ET.Element) -> str:
    return ET.tostring(root, encoding="unicode")


def svgwrite(root: ET.Element, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    ET.ElementTree(root).write(path, encoding="utf-8", xml_declaration=True)
