"""
Geometry Module
Directions, Hopf points, affine hyperplanes and the weighted families measured against them.
"""

from .core import Direction, HopfPoint, Hyperplane, incidence, star_lower, star_upper
from .measure import (
    MedianInterval,
    PointFamily,
    SideReport,
    WeightedFamily,
    median_interval,
    parallel_mass,
    side_masses,
    verify_classical,
    verify_star,
)

__all__ = [
    "Direction",
    "HopfPoint",
    "Hyperplane",
    "MedianInterval",
    "PointFamily",
    "SideReport",
    "WeightedFamily",
    "incidence",
    "median_interval",
    "parallel_mass",
    "side_masses",
    "star_lower",
    "star_upper",
    "verify_classical",
    "verify_star",
]
