"""Finite commutative coefficient rings: Z/NZ and F_{p^k}.

Elements are plain ints in ``range(len(ring))``.  For ``Zmod`` the index is
the residue; for ``GF`` it is the base-p digit encoding of the polynomial
representative, coefficient of x^i being digit i.  Index order is the total
order used for every lexicographic comparison in the package.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class RingError(ValueError):
    """Invalid ring specification."""


# Monic irreducible polynomials, coefficients listed from x^0 up to x^k.
DEFAULT_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (3, 3): (1, 2, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as {p: exponent}."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise RingError."""
    f = factorize(q) if q >= 2 else {}
    if len(f) != 1:
        raise RingError(f"{q} is not a prime power")
    ((p, k),) = f.items()
    return p, k


@dataclass(frozen=True)
class RingSpec:
    kind: str  # "zmod" | "gf"
    modulus: int = 0
    p: int = 0
    k: int = 0
    poly: tuple[int, ...] | None = None

    @classmethod
    def zmod(cls, n: int) -> "RingSpec":
        return cls("zmod", modulus=n)

    @classmethod
    def gf(cls, p: int, k: int = 1, poly=None) -> "RingSpec":
        return cls("gf", p=p, k=k, poly=None if poly is None else tuple(poly))

    def __str__(self) -> str:
        if self.kind == "zmod":
            return f"zmod:{self.modulus}"
        s = f"gf:{self.p}^{self.k}"
        if self.poly is not None:
            s += ":poly=" + ",".join(map(str, self.poly))
        return s


def parse_ring_spec(text: str) -> RingSpec:
    """Parse ``zmod:N`` or ``gf:p^k[:poly=c0,c1,...,ck]``.

    ``gf:q`` with q a prime power is accepted as shorthand for ``gf:p^k``.
    """
    parts = text.strip().split(":")
    head = parts[0].lower()
    try:
        if head == "zmod" and len(parts) == 2:
            return RingSpec.zmod(int(parts[1]))
        if head == "gf" and len(parts) in (2, 3):
            if "^" in parts[1]:
                p_str, k_str = parts[1].split("^")
                p, k = int(p_str), int(k_str)
            else:
                p, k = prime_power(int(parts[1]))
            poly = None
            if len(parts) == 3:
                key, _, val = parts[2].partition("=")
                if key != "poly":
                    raise RingError(f"unknown ring option {parts[2]!r}")
                poly = tuple(int(c) for c in val.split(","))
            return RingSpec.gf(p, k, poly)
    except ValueError as exc:
        if isinstance(exc, RingError):
            raise
        raise RingError(f"cannot parse ring spec {text!r}: {exc}") from exc
    raise RingError(f"cannot parse ring spec {text!r}")


class Ring:
    """Common interface; subclasses supply ``add``, ``mul``, ``neg`` and ``from_int``."""

    spec: RingSpec
    size: int
    characteristic: int

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"<Ring {self.spec}>"

    def __str__(self) -> str:
        return str(self.spec)

    zero = 0
    one = 1

    @property
    def minus_one(self) -> int:
        return self.neg(self.one)

    def elements(self) -> range:
        return range(self.size)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def is_unit(self, a: int) -> bool:
        return self.inv_table[a] >= 0

    def inv(self, a: int) -> int:
        b = int(self.inv_table[a])
        if b < 0:
            raise ZeroDivisionError(f"{self.format(a)} is not a unit in {self.spec}")
        return b

    def units(self) -> list[int]:
        return [a for a in self if self.is_unit(a)]

    def is_pm_one(self, a: int) -> bool:
        return a == self.one or a == self.minus_one

    def format(self, a: int) -> str:
        return str(a)

    # Dense tables for the numeric kernels.
    @cached_property
    def add_table(self) -> np.ndarray:
        return np.array([[self.add(a, b) for b in self] for a in self], dtype=np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        return np.array([[self.mul(a, b) for b in self] for a in self], dtype=np.int64)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in self], dtype=np.int64)

    @cached_property
    def inv_table(self) -> np.ndarray:
        inv = np.full(self.size, -1, dtype=np.int64)
        mt = self.mul_table
        for a in self:
            hits = np.nonzero(mt[a] == self.one)[0]
            if hits.size:
                inv[a] = hits[0]
        return inv

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]


class Zmod(Ring):
    def __init__(self, n: int):
        if n < 2:
            raise RingError(f"Z/NZ needs N >= 2, got {n}")
        self.n = n
        self.size = n
        self.characteristic = n
        self.spec = RingSpec.zmod(n)

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def from_int(self, n):
        return n % self.n

    def is_unit(self, a):
        return math.gcd(a, self.n) == 1

    def inv(self, a):
        try:
            return pow(a, -1, self.n)
        except ValueError:
            raise ZeroDivisionError(f"{a} is not a unit in Z/{self.n}") from None

    @cached_property
    def add_table(self):
        r = np.arange(self.n, dtype=np.int64)
        return (r[:, None] + r[None, :]) % self.n

    @cached_property
    def mul_table(self):
        r = np.arange(self.n, dtype=np.int64)
        return (r[:, None] * r[None, :]) % self.n

    @cached_property
    def neg_table(self):
        return (-np.arange(self.n, dtype=np.int64)) % self.n


def _poly_mulmod(a, b, modpoly, p):
    """Product of coefficient lists a*b reduced by the monic modpoly over F_p."""
    k = len(modpoly) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * modpoly[i]) % p
    prod = prod[:k] + [0] * max(0, k - len(prod))
    return prod


def _poly_divides(d, f, p) -> bool:
    """True if the monic d divides f over F_p."""
    r = list(f)
    dd = len(d) - 1
    for deg in range(len(r) - 1, dd - 1, -1):
        c = r[deg]
        if c:
            for i in range(dd + 1):
                r[deg - dd + i] = (r[deg - dd + i] - c * d[i]) % p
    return not any(r[:dd])


def is_irreducible(poly, p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= k/2."""
    k = len(poly) - 1
    if k < 1 or poly[-1] % p != 1:
        return False
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if _poly_divides(list(low) + [1], poly, p):
                return False
    return True


class GF(Ring):
    def __init__(self, p: int, k: int = 1, poly=None):
        if not is_prime(p):
            raise RingError(f"characteristic {p} is not prime")
        if k < 1:
            raise RingError(f"degree must be >= 1, got {k}")
        if poly is None:
            poly = (0, 1) if k == 1 else DEFAULT_POLYNOMIALS.get((p, k))
            if poly is None:
                raise RingError(f"no default polynomial for F_{p}^{k}; pass poly=")
        poly = tuple(int(c) % p for c in poly)
        if len(poly) != k + 1 or poly[-1] != 1:
            raise RingError(f"polynomial {poly} is not monic of degree {k}")
        if not is_irreducible(poly, p):
            raise RingError(f"polynomial {poly} is reducible over F_{p}")
        self.p, self.k, self.poly = p, k, poly
        self.size = p**k
        self.characteristic = p
        self.spec = RingSpec.gf(p, k, poly)
        self._digits = [self._to_digits(a) for a in range(self.size)]
        self._weights = [p**i for i in range(k)]
        q = self.size
        self._add = [[self._digit_add(a, b) for b in range(q)] for a in range(q)]
        self._mul = [[self._digit_mul(a, b) for b in range(q)] for a in range(q)]
        self._neg = [self._from_digits([(-x) % p for x in self._digits[a]]) for a in range(q)]

    def _to_digits(self, a):
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _from_digits(self, digits):
        return sum(d * w for d, w in zip(digits, self._weights))

    def _digit_add(self, a, b):
        da, db = self._digits[a], self._digits[b]
        return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def _digit_mul(self, a, b):
        return self._from_digits(_poly_mulmod(self._digits[a], self._digits[b], self.poly, self.p))

    def add(self, a, b):
        return self._add[a][b]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def from_int(self, n):
        return n % self.p

    def format(self, a):
        terms = []
        for i, c in enumerate(self._digits[a]):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                coef = "" if (c == 1 and i) else str(c)
                terms.append(f"{coef}{mono}")
        return "+".join(reversed(terms)) or "0"


def make_ring(spec: RingSpec | str) -> Ring:
    if isinstance(spec, str):
        spec = parse_ring_spec(spec)
    if spec.kind == "zmod":
        return Zmod(spec.modulus)
    if spec.kind == "gf":
        return GF(spec.p, spec.k, spec.poly)
    raise RingError(f"unknown ring kind {spec.kind!r}")


@dataclass(frozen=True)
class CRTSplit:
    """Componentwise reduction Z/NZ -> prod Z/m_i Z and its inverse."""

    modulus: int
    factors: tuple[int, ...]
    rings: tuple[Zmod, ...]

    def split(self, t) -> list[tuple[int, ...]]:
        return [tuple(a % m for a in t) for m in self.factors]

    def recombine(self, parts) -> tuple[int, ...]:
        parts = [tuple(p) for p in parts]
        if len(parts) != len(self.factors):
            raise ValueError("one tuple per factor expected")
        if len({len(p) for p in parts}) > 1:
            raise ValueError("component tuples differ in length")
        coeffs = []
        for m in self.factors:
            rest = self.modulus // m
            coeffs.append(rest * pow(rest, -1, m))
        return tuple(
            sum(c * p[i] for c, p in zip(coeffs, parts)) % self.modulus for i in range(len(parts[0]))
        )


def crt_split(modulus: int, factorization) -> CRTSplit:
    """Build the CRT decomposition for pairwise coprime factors multiplying to N."""
    factors = tuple(int(f) for f in factorization)
    if any(f < 2 for f in factors):
        raise ValueError("CRT factors must be >= 2")
    if math.prod(factors) != modulus:
        raise ValueError(f"factors {factors} do not multiply to {modulus}")
    for i, a in enumerate(factors):
        for b in factors[i + 1 :]:
            if math.gcd(a, b) != 1:
                raise ValueError(f"factors {a} and {b} are not coprime")
    return CRTSplit(modulus, factors, tuple(Zmod(f) for f in factors))


def prime_power_factors(n: int) -> list[int]:
    return [p**e for p, e in sorted(factorize(n).items())]
