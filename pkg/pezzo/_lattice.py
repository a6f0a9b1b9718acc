"""Intersection theory on the Picard lattice of a blow-up of the plane.

A class on the blow-up of the projective plane at ``n`` (possibly
infinitely near) points is stored as ``(d0; m1, ..., mn)`` and stands for
``d0*L - sum(mi*ei)`` where ``L`` is the pullback of a line and ``ei`` the
total transform of the i-th exceptional curve.  With this convention the
``mi`` are the multiplicities of a plane curve at the blown-up points.

The intersection form is diagonal: ``L.L = 1``, ``L.ei = 0`` and
``ei.ej = -delta_ij``.  The canonical class is ``(-3; -1, ..., -1)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

MAX_POINTS = 8

# Largest line degree needed to exhaust the (-1)- and (-2)-classes.
_D0_BOUND = {n: 3 for n in range(MAX_POINTS)}
_D0_BOUND[MAX_POINTS] = 6


@dataclass(frozen=True, order=True)
class DivisorClass:
    """An integer class ``d0*L - sum(m[i]*e[i])``."""

    d0: int
    m: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.m, tuple):
            object.__setattr__(self, "m", tuple(self.m))
        if len(self.m) > MAX_POINTS:
            raise ValueError(f"at most {MAX_POINTS} exceptional classes, got {len(self.m)}")

    @property
    def n(self) -> int:
        return len(self.m)

    # -- construction ---------------------------------------------------

    @classmethod
    def line(cls, n: int) -> DivisorClass:
        return cls(1, (0,) * n)

    @classmethod
    def exceptional(cls, i: int, n: int) -> DivisorClass:
        """Total transform ``e_i`` (1-based index) on the ``n``-point blow-up."""
        if not 1 <= i <= n:
            raise ValueError(f"exceptional index {i} out of range 1..{n}")
        return cls(0, tuple(-1 if k == i - 1 else 0 for k in range(n)))

    @classmethod
    def from_array(cls, values: Sequence[int]) -> DivisorClass:
        """Build from the serialized form ``[d0, m1, ..., mn]``."""
        if len(values) == 0:
            raise ValueError("empty class array")
        return cls(int(values[0]), tuple(int(v) for v in values[1:]))

    def to_array(self) -> list[int]:
        return [self.d0, *self.m]

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: DivisorClass) -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.d0 + other.d0, tuple(a + b for a, b in zip(self.m, other.m)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.d0 - other.d0, tuple(a - b for a, b in zip(self.m, other.m)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(-self.d0, tuple(-a for a in self.m))

    def __mul__(self, k: int) -> DivisorClass:
        return DivisorClass(k * self.d0, tuple(k * a for a in self.m))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.d0 == 0 and not any(self.m)

    def __str__(self) -> str:
        parts: list[str] = []
        if self.d0:
            parts.append(_term(self.d0, "L"))
        for i, mi in enumerate(self.m, start=1):
            if mi:
                parts.append(_term(-mi, f"e{i}"))
        if not parts:
            return "0"
        text = "".join(p if p.startswith("-") else "+" + p for p in parts)
        return text[1:] if text.startswith("+") else text


def _term(coeff: int, symbol: str) -> str:
    if coeff == 1:
        return symbol
    if coeff == -1:
        return "-" + symbol
    return f"{coeff}{symbol}"


def pairing(u: DivisorClass, v: DivisorClass) -> int:
    """Intersection number of two classes on the same blow-up."""
    if u.n != v.n:
        raise ValueError(f"dimension mismatch: n={u.n} vs n={v.n}")
    return u.d0 * v.d0 - sum(a * b for a, b in zip(u.m, v.m))


def self_intersection(v: DivisorClass) -> int:
    return pairing(v, v)


def canonical_class(n: int) -> DivisorClass:
    """``K = -3L + sum(e_i)``."""
    if not 0 <= n <= MAX_POINTS:
        raise ValueError(f"n must be in 0..{MAX_POINTS}, got {n}")
    return DivisorClass(-3, (-1,) * n)


def anticanonical_class(n: int) -> DivisorClass:
    return -canonical_class(n)


def anticanonical_degree(v: DivisorClass) -> int:
    """``(-K).v``, the degree of ``v`` against the anticanonical class."""
    return 3 * v.d0 - sum(v.m)


class ClassKind(str, enum.Enum):
    MINUS_ONE = "MinusOneClass"
    ROOT = "RootClass"
    OTHER = "Other"


def classify_class(v: DivisorClass) -> ClassKind:
    square = self_intersection(v)
    k_dot = -anticanonical_degree(v)
    if square == -1 and k_dot == -1:
        return ClassKind.MINUS_ONE
    if square == -2 and k_dot == 0:
        return ClassKind.ROOT
    return ClassKind.OTHER


def is_positive_root(v: DivisorClass) -> bool:
    """Sign convention for roots.

    A root pairs to zero with ``-K``, so its pairing with the reference
    class ``10*(-K) + L`` is ``d0``.  Roots with ``d0 == 0`` are ``e_i - e_j``
    and count as positive when ``i < j``.
    """
    if v.d0 != 0:
        return v.d0 > 0
    for mi in v.m:
        if mi:
            return mi < 0
    return False


def _multiplicities(n: int, total: int, squares: int, bound: int) -> Iterator[tuple[int, ...]]:
    """All integer vectors of length ``n`` with given sum and sum of squares."""
    if n == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    for first in range(-bound, bound + 1):
        rest = squares - first * first
        # |sum| <= sum of squares for integer vectors
        if rest < 0 or abs(total - first) > rest:
            continue
        for tail in _multiplicities(n - 1, total - first, rest, bound):
            yield (first, *tail)


@lru_cache(maxsize=None)
def enumerate_negative_candidates(n: int) -> tuple[tuple[DivisorClass, ...], tuple[DivisorClass, ...]]:
    """Exhaustive lists of (-1)-classes and positive roots on the ``n``-point blow-up.

    Returns
    -------
    (minus_one, roots) : tuple of tuples of DivisorClass
        Both sorted by ``(d0, m)``.
    """
    if not 0 <= n <= MAX_POINTS:
        raise ValueError(f"n must be in 0..{MAX_POINTS}, got {n}")
    minus_one: list[DivisorClass] = []
    roots: list[DivisorClass] = []
    if n == 0:
        return (), ()
    for d0 in range(_D0_BOUND[n] + 1):
        # (-1): sum(m) = 3*d0 - 1, sum(m^2) = d0^2 + 1
        for m in _multiplicities(n, 3 * d0 - 1, d0 * d0 + 1, d0 + 1):
            minus_one.append(DivisorClass(d0, m))
        # roots: sum(m) = 3*d0, sum(m^2) = d0^2 + 2
        for m in _multiplicities(n, 3 * d0, d0 * d0 + 2, d0 + 2):
            v = DivisorClass(d0, m)
            if is_positive_root(v):
                roots.append(v)
    return tuple(sorted(minus_one)), tuple(sorted(roots))
