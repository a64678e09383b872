"""Mod-2 classes over the truncated ring F2[a]/(a^(N+1)).

A class c_0 + c_1 a + ... + c_N a^N is stored as the integer whose bit k is
c_k, so addition is XOR and multiplication is carry-less and masked at N.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

from src.errors import ClassParseError, GradingError

MAX_DEGREE = 64

_MONOMIAL = re.compile(r"^(?:(?P<one>1)|a(?:\^(?P<exp>\d+))?)$")


def check_degree(name: str, value: int) -> int:
    if not 0 <= value <= MAX_DEGREE:
        raise GradingError(f"{name} must be between 0 and {MAX_DEGREE}, got {value}")
    return value


def _clmul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


# ---------- Base ring ----------


@dataclass(frozen=True)
class TruncatedClass:
    """An element of H*(B; F2) = F2[a]/(a^(N+1))."""

    bits: int
    trunc: int

    def __post_init__(self) -> None:
        check_degree("truncation N", self.trunc)
        object.__setattr__(self, "bits", self.bits & self._mask)

    @property
    def _mask(self) -> int:
        return (1 << (self.trunc + 1)) - 1

    @classmethod
    def zero(cls, trunc: int) -> "TruncatedClass":
        return cls(0, trunc)

    @classmethod
    def one(cls, trunc: int) -> "TruncatedClass":
        return cls(1, trunc)

    @classmethod
    def monomial(cls, degree: int, trunc: int) -> "TruncatedClass":
        """a^degree, which is zero above the truncation."""
        if degree < 0 or degree > trunc:
            return cls(0, trunc)
        return cls(1 << degree, trunc)

    def _check(self, other: "TruncatedClass") -> None:
        if other.trunc != self.trunc:
            raise GradingError(f"truncations differ: {self.trunc} vs {other.trunc}")

    def __add__(self, other: "TruncatedClass") -> "TruncatedClass":
        self._check(other)
        return TruncatedClass(self.bits ^ other.bits, self.trunc)

    def __mul__(self, other: "TruncatedClass") -> "TruncatedClass":
        self._check(other)
        return TruncatedClass(_clmul(self.bits, other.bits), self.trunc)

    def __bool__(self) -> bool:
        return self.bits != 0

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_one(self) -> bool:
        return self.bits == 1

    def homogeneous_of(self, degree: int) -> bool:
        """True if every nonzero coefficient sits in the given degree."""
        return self.bits & ~(1 << degree if degree >= 0 else 0) == 0

    def degrees(self) -> List[int]:
        return [k for k in range(self.trunc + 1) if (self.bits >> k) & 1]

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        terms = []
        for k in self.degrees():
            terms.append("1" if k == 0 else "a" if k == 1 else f"a^{k}")
        return "+".join(terms)


def parse_class(text: str, trunc: int) -> TruncatedClass:
    """Read a monomial sum such as ``"1+a+a^2"`` (``"0"`` is the zero class).

    Repeated monomials cancel in pairs.
    """
    cleaned = text.replace(" ", "")
    if not cleaned:
        raise ClassParseError("empty class text")
    if cleaned == "0":
        return TruncatedClass.zero(trunc)
    bits = 0
    for term in cleaned.split("+"):
        match = _MONOMIAL.match(term)
        if match is None:
            raise ClassParseError(f"cannot read monomial {term!r} in {text!r}")
        if match.group("one"):
            degree = 0
        else:
            degree = int(match.group("exp")) if match.group("exp") else 1
        if degree > MAX_DEGREE:
            raise ClassParseError(f"degree {degree} exceeds {MAX_DEGREE} in {text!r}")
        bits ^= 1 << degree
    return TruncatedClass(bits, trunc)


# ---------- Total Stiefel-Whitney classes ----------


@dataclass(frozen=True)
class TotalSWClass:
    """w_0 + w_1 + ... + w_K with w_i homogeneous of degree i."""

    parts: Tuple[TruncatedClass, ...]
    trunc: int

    def __post_init__(self) -> None:
        if not self.parts:
            raise GradingError("a total class needs at least w_0")
        for i, part in enumerate(self.parts):
            if part.trunc != self.trunc:
                raise GradingError(f"w_{i} has truncation {part.trunc}, expected {self.trunc}")
            if not part.homogeneous_of(i):
                raise GradingError(f"w_{i} = {part} has content outside degree {i}")

    @classmethod
    def trivial(cls, trunc: int) -> "TotalSWClass":
        return cls((TruncatedClass.one(trunc),), trunc)

    @classmethod
    def from_flags(cls, flags: Sequence[bool], trunc: int) -> "TotalSWClass":
        """w_0 = 1 and w_i = a^i where flags[i-1] is set, else 0."""
        parts = [TruncatedClass.one(trunc)]
        parts += [
            TruncatedClass.monomial(i, trunc) if flag else TruncatedClass.zero(trunc)
            for i, flag in enumerate(flags, start=1)
        ]
        return cls(tuple(parts), trunc)

    def w(self, i: int) -> TruncatedClass:
        """w_i, zero outside the stored range."""
        if 0 <= i < len(self.parts):
            return self.parts[i]
        return TruncatedClass.zero(self.trunc)

    def __mul__(self, other: "TotalSWClass") -> "TotalSWClass":
        """Graded product, kept up to degree N."""
        if other.trunc != self.trunc:
            raise GradingError(f"truncations differ: {self.trunc} vs {other.trunc}")
        parts = []
        for k in range(self.trunc + 1):
            acc = TruncatedClass.zero(self.trunc)
            for i in range(k + 1):
                acc = acc + self.w(i) * other.w(k - i)
            parts.append(acc)
        return TotalSWClass(tuple(parts), self.trunc)

    def is_one(self) -> bool:
        return self.w(0).is_one() and all(not part for part in self.parts[1:])

    @property
    def top_degree(self) -> int:
        nonzero = [i for i, part in enumerate(self.parts) if part]
        return nonzero[-1] if nonzero else 0

    def __str__(self) -> str:
        terms = [str(part) for part in self.parts if part]
        return " + ".join(terms) if terms else "0"


def parse_total_class(source: Union[str, Iterable[str]], trunc: int) -> TotalSWClass:
    """A total class from ``"1,a,0"`` or from a list of per-degree strings."""
    items = source.split(",") if isinstance(source, str) else list(source)
    if not items:
        raise ClassParseError("empty total class")
    parts = []
    for i, item in enumerate(items):
        part = parse_class(item, trunc)
        if not part.homogeneous_of(i):
            raise GradingError(f"w_{i} = {item.strip()!r} has content outside degree {i}")
        parts.append(part)
    return TotalSWClass(tuple(parts), trunc)


# ---------- Projective bundle ----------


@dataclass(frozen=True)
class ProjectiveClass:
    """d_0 + d_1 T + ... + d_m T^m in H*(P(E); F2), reduced by the rank m+1 relation."""

    coeffs: Tuple[TruncatedClass, ...]
    m: int

    @classmethod
    def reduce(
        cls, coeffs: Sequence[TruncatedClass], wE: TotalSWClass, m: int
    ) -> "ProjectiveClass":
        """Canonical form of sum c_k T^k using T^(m+1) = w_1 T^m + ... + w_(m+1)."""
        work = list(coeffs) + [TruncatedClass.zero(wE.trunc)] * max(0, m + 1 - len(coeffs))
        for k in range(len(work) - 1, m, -1):
            c = work[k]
            if not c:
                continue
            for i in range(1, m + 2):
                work[k - i] = work[k - i] + c * wE.w(i)
            work[k] = TruncatedClass.zero(wE.trunc)
        return cls(tuple(work[: m + 1]), m)

    def is_zero(self) -> bool:
        return all(not d for d in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for j, d in enumerate(self.coeffs):
            if not d:
                continue
            power = "" if j == 0 else "T" if j == 1 else f"T^{j}"
            if not power:
                terms.append(str(d))
            elif d.is_one():
                terms.append(power)
            elif len(d.degrees()) == 1:
                terms.append(f"{d}*{power}")
            else:
                terms.append(f"({d})*{power}")
        return " + ".join(terms) if terms else "0"
