"""Powers of the Euler class e(H) of the Hopf bundle over P(E), mod 2.

H*(P(E); F2) = H*(B; F2)[T] / (T^(m+1) + w_1(E) T^m + ... + w_(m+1)(E)) with
T = e(H). Two independent computations of e(H)^l are provided and must agree.
"""

from __future__ import annotations

import logging

from src.errors import GradingError, NonUnitLeadingTerm
from src.obstruction.classes import (
    ProjectiveClass,
    TotalSWClass,
    TruncatedClass,
    check_degree,
)

LOGGER = logging.getLogger(__name__)


def invert_total_class(w: TotalSWClass, N: int) -> TotalSWClass:
    """u = w^-1 up to degree N, so u_j = w_j(-E) when w = w(E).

    Uses u_0 = 1 and u_k = sum_{i>=1} w_i u_(k-i).
    """
    check_degree("truncation N", N)
    if N != w.trunc:
        raise GradingError(f"truncation {N} does not match the class ({w.trunc})")
    if not w.w(0).is_one():
        raise NonUnitLeadingTerm(f"w_0 must be 1, got {w.w(0)}")
    u = [TruncatedClass.one(N)]
    for k in range(1, N + 1):
        acc = TruncatedClass.zero(N)
        for i in range(1, k + 1):
            acc = acc + w.w(i) * u[k - i]
        u.append(acc)
    return TotalSWClass(tuple(u), N)


def _check_rank(wE: TotalSWClass, m: int, l: int) -> None:
    check_degree("m", m)
    check_degree("l", l)
    if wE.top_degree > m + 1:
        raise GradingError(f"w_{wE.top_degree}(E) is nonzero for a rank {m + 1} bundle")


def euler_power_reduce(wE: TotalSWClass, m: int, l: int, N: int) -> ProjectiveClass:
    """T^l reduced by repeated substitution of the top power."""
    _check_rank(wE, m, l)
    check_degree("truncation N", N)
    coeffs = [TruncatedClass.zero(N)] * l + [TruncatedClass.one(N)]
    return ProjectiveClass.reduce(coeffs, wE, m)


def euler_power_closed_form(wE: TotalSWClass, m: int, l: int, N: int) -> ProjectiveClass:
    """d_j = sum_{i=0}^{m-j} w_i(E) w_(l-j-i)(-E)."""
    _check_rank(wE, m, l)
    u = invert_total_class(wE, N)
    coeffs = []
    for j in range(m + 1):
        d = TruncatedClass.zero(N)
        for i in range(m - j + 1):
            d = d + wE.w(i) * u.w(l - j - i)
        coeffs.append(d)
    return ProjectiveClass(tuple(coeffs), m)


def euler_vanishes(wE: TotalSWClass, m: int, l: int, N: int) -> bool:
    return euler_power_reduce(wE, m, l, N).is_zero()


def fw_applicable(wE: TotalSWClass, m: int, l: int, N: int) -> bool:
    """l >= m and w_(l-m)(-E) != 0 in the truncated ring."""
    check_degree("m", m)
    check_degree("l", l)
    if l < m:
        return False
    u = invert_total_class(wE, N)
    applicable = bool(u.w(l - m))
    LOGGER.debug("w_%d(-E) = %s, applicable=%s", l - m, u.w(l - m), applicable)
    return applicable
