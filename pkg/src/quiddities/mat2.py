"""2x2 matrices over a finite ring and the continuant product.

``product(ring, (a_1, ..., a_n))`` is ``M(a_n) @ ... @ M(a_1)`` with
``M(a) = [[a, -1], [1, 0]]``: the leftmost factor carries the last entry.
"""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple, Sequence

from .ring import Ring


class Mat2(NamedTuple):
    """Row-major ``[[a, b], [c, d]]`` with entries given as ring element indices."""

    a: int
    b: int
    c: int
    d: int

    def format(self, ring: Ring | None = None) -> str:
        fmt = ring.format if ring is not None else str
        return f"[[{fmt(self.a)},{fmt(self.b)}],[{fmt(self.c)},{fmt(self.d)}]]"


class Target(Enum):
    PLUS_ID = "plus"
    MINUS_ID = "minus"
    OTHER = "other"


def identity(ring: Ring) -> Mat2:
    return Mat2(ring.one, ring.zero, ring.zero, ring.one)


def minus_identity(ring: Ring) -> Mat2:
    m = ring.minus_one
    return Mat2(m, ring.zero, ring.zero, m)


def signed_identity(ring: Ring, sign: int) -> Mat2:
    return identity(ring) if sign > 0 else minus_identity(ring)


def generator_s(ring: Ring) -> Mat2:
    return Mat2(ring.zero, ring.minus_one, ring.one, ring.zero)


def generator_t(ring: Ring) -> Mat2:
    return Mat2(ring.one, ring.one, ring.zero, ring.one)


def negate(ring: Ring, m: Mat2) -> Mat2:
    return Mat2(*(ring.neg(x) for x in m))


def det(ring: Ring, m: Mat2) -> int:
    return ring.sub(ring.mul(m.a, m.d), ring.mul(m.b, m.c))


def matmul(ring: Ring, x: Mat2, y: Mat2) -> Mat2:
    add, mul = ring.add, ring.mul
    return Mat2(
        add(mul(x.a, y.a), mul(x.b, y.c)),
        add(mul(x.a, y.b), mul(x.b, y.d)),
        add(mul(x.c, y.a), mul(x.d, y.c)),
        add(mul(x.c, y.b), mul(x.d, y.d)),
    )


def m1(ring: Ring, a: int) -> Mat2:
    return Mat2(a, ring.minus_one, ring.one, ring.zero)


def apply_m1(ring: Ring, a: int, m: Mat2) -> Mat2:
    """``m1(a) @ m`` without building the factor."""
    return Mat2(ring.sub(ring.mul(a, m.a), m.c), ring.sub(ring.mul(a, m.b), m.d), m.a, m.b)


def product(ring: Ring, entries: Sequence[int]) -> Mat2:
    if len(entries) == 0:
        raise ValueError("continuant product of an empty tuple is not defined")
    m = identity(ring)
    for a in entries:
        m = apply_m1(ring, a, m)
    return m


def classify(ring: Ring, m: Mat2) -> Target:
    """PLUS_ID / MINUS_ID / OTHER.

    When 1 == -1 the two targets are the same matrix and PLUS_ID is returned.
    """
    if m == identity(ring):
        return Target.PLUS_ID
    if m == minus_identity(ring):
        return Target.MINUS_ID
    return Target.OTHER
