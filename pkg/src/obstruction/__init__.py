"""
Obstruction Module
Mod-2 Euler class powers over projective bundles with truncated base rings.
"""

from .classes import ProjectiveClass, TotalSWClass, TruncatedClass, parse_class, parse_total_class
from .euler import (
    euler_power_closed_form,
    euler_power_reduce,
    euler_vanishes,
    fw_applicable,
    invert_total_class,
)

__all__ = [
    "ProjectiveClass",
    "TotalSWClass",
    "TruncatedClass",
    "euler_power_closed_form",
    "euler_power_reduce",
    "euler_vanishes",
    "fw_applicable",
    "invert_total_class",
    "parse_class",
    "parse_total_class",
]
