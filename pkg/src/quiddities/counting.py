"""Exact counts of tuples by continuant product.

Closed forms (q-analogues, the Z/4Z and generator formulas, CRT products),
the general recurrence, and two independent exact counters: a transfer-matrix
dynamic program over SL2(R) and literal enumeration of every tuple.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import numpy as np

from . import kernels, mat2
from .errors import ResourceLimitError, UnsupportedRegime
from .mat2 import Mat2
from .quiddity import small_solutions
from .ring import GF, Ring, Zmod, factorize, is_prime, prime_power

# |R|^4 candidate matrices scanned when indexing SL2(R).
MAX_DENSE_SCAN = 1 << 20
NAIVE_GUARD = 10**9
_INT64_SAFE = 1 << 62


# --- q-analogues ------------------------------------------------------------


def q_int(m: int, q: int) -> int:
    """[m]_q = (q^m - 1)/(q - 1)."""
    if m < 0 or q < 2:
        raise ValueError("q_int needs m >= 0 and q >= 2")
    return (q**m - 1) // (q - 1)


def q_binom2(m: int, q: int) -> int:
    """Gaussian binomial (m choose 2)_q."""
    if m < 1 or q < 2:
        raise ValueError("q_binom2 needs m >= 1 and q >= 2")
    num = (q**m - 1) * (q ** (m - 1) - 1)
    den = (q - 1) * (q * q - 1)
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def q_binom2_step_holds(m: int, q: int) -> bool:
    """(q^{2m-2} - 1)/(q^2 - 1) + q * (m-1 choose 2)_q == (m choose 2)_q."""
    if m < 2:
        raise ValueError("identity needs m >= 2")
    lhs = Fraction(q ** (2 * m - 2) - 1, q * q - 1) + q * q_binom2(m - 1, q)
    return lhs == q_binom2(m, q)


# --- closed forms -----------------------------------------------------------


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return sign


def u_formula(n: int, q: int, p: int | None = None, sign: int = -1) -> int:
    """Number of n-tuples over F_q with product ``sign * Id`` (n > 4)."""
    _check_sign(sign)
    pp, _ = prime_power(q)
    if p is not None and p != pp:
        raise ValueError(f"{q} is not a power of {p}")
    p = pp
    if n <= 4:
        raise UnsupportedRegime("closed forms over F_q hold for n > 4; use small_solutions")
    if n % 2:
        return q_int((n - 1) // 2, q * q)
    m = n // 2
    base = (q - 1) * q_binom2(m, q)
    if sign == -1:
        if p == 2 or m % 2:
            return base + q ** (m - 1)
        return base
    if p == 2:
        raise UnsupportedRegime("no closed form for +Id, even n, characteristic 2")
    return base + q ** (m - 1) if m % 2 == 0 else base


def w4_formula(n: int, sign: int) -> int:
    """Number of n-tuples over Z/4Z with product ``sign * Id`` (n >= 3)."""
    _check_sign(sign)
    if n < 3:
        raise UnsupportedRegime("the Z/4Z closed form holds for n >= 3")
    big = 4 ** (n - 2)
    if n % 2:
        return (big - 2 ** (n - 3)) // 3
    high = (big + 4 * 2 ** (n - 3)) // 3
    low = (big - 2 ** (n - 2)) // 3
    m = n // 2
    if m % 2 == 0:
        return high if sign == 1 else low
    return low if sign == 1 else high


def _factor_count(n: int, modulus: int, sign: int) -> int:
    if n <= 4:
        return len(small_solutions(Zmod(modulus), n, sign))
    if modulus == 4:
        return w4_formula(n, sign)
    if modulus == 2:
        # 1 == -1 in F_2: the +Id count is the -Id count
        return u_formula(n, 2, 2, -1)
    return u_formula(n, modulus, modulus, sign)


def crt_count(n: int, modulus: int, sign: int) -> int:
    """Count over Z/NZ as a product over prime-power factors.

    Supported N: squarefree, or 4 times an odd squarefree number.
    """
    _check_sign(sign)
    if n < 1:
        raise ValueError("n must be >= 1")
    f = factorize(modulus)
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if f.get(2, 0) > 2:
        raise UnsupportedRegime(f"8 divides {modulus}: no closed form")
    odd_sq = [p for p, e in f.items() if p > 2 and e > 1]
    if odd_sq:
        raise UnsupportedRegime(f"{modulus} has the odd square factor {odd_sq[0]}^2")
    return math.prod(_factor_count(n, p**e, sign) for p, e in sorted(f.items()))


def st_formula(n: int, which: str) -> int:
    """Z/4Z counts for the generators: ``which`` in {"S", "-S", "T", "-T"}.

    Powers of i are resolved by the parity of the exponent; every odd power
    meets a vanishing factor, so the result stays in the rationals.
    """
    if n < 2:
        raise ValueError("n must be >= 2")

    def pow_frac(base, e):
        return Fraction(base) ** e

    def sgn(e):
        return -1 if e % 2 else 1

    def i_pow_times(e, factor):
        if factor == 0:
            return Fraction(0)
        if e % 2:
            raise AssertionError("odd power of i with a nonzero factor")
        return factor * (1 if e % 4 == 0 else -1)

    four = pow_frac(4, n - 2)
    if which in ("S", "-S"):
        head = (four - pow_frac(-2, n - 2)) / 3
        if which == "S":
            tail = pow_frac(2, n - 3) * i_pow_times(n - 3, sgn(n - 2) - 1)
        else:
            tail = pow_frac(2, n - 3) * i_pow_times(n - 3, 1 + sgn(n - 3))
    elif which in ("T", "-T"):
        head = (four - pow_frac(-2, n - 3)) / 3
        if which == "T":
            tail = pow_frac(2, n - 4) * i_pow_times(n - 2, sgn(n - 3) - 1)
        else:
            tail = pow_frac(2, n - 4) * i_pow_times(n - 2, 1 + sgn(n - 2))
    else:
        raise ValueError(f"unknown generator {which!r}")
    value = head + tail
    if value.denominator != 1:
        raise AssertionError(f"non-integral generator count {value}")
    return int(value)


def parity_count(n: int) -> int:
    """Number of parity sequences of triangulations of an n-gon."""
    if n < 3:
        raise ValueError("n must be >= 3")
    if n % 2:
        return q_int((n - 1) // 2, 4)
    m = n // 2
    return q_binom2(m, 2) + 2 ** (m - 1) - 1


# --- recurrences ------------------------------------------------------------


def recurrence_step(n: int, q: int, same: Mapping[int, int], opposite: Mapping[int, int]) -> int:
    """One step of the general F_q recurrence.

    ``same[k]`` is the count for target B at length k, ``opposite[k]`` for -B;
    lengths n-1 .. n-4 must be present.
    """
    if n <= 4:
        raise ValueError("the recurrence holds for n > 4")
    return (
        (q - 1) * (same[n - 1] - q * opposite[n - 3])
        + q * opposite[n - 2]
        + q * (same[n - 2] - q * opposite[n - 4])
    )


def _is_field(ring: Ring) -> bool:
    return isinstance(ring, GF) or (isinstance(ring, Zmod) and is_prime(ring.n))


def _base_counts(ring: Ring, target: Mat2, upto: int) -> dict[int, int]:
    if mat2.classify(ring, target) is not mat2.Target.OTHER:
        sign = 1 if target == mat2.identity(ring) else -1
        return {k: len(small_solutions(ring, k, sign)) for k in range(1, upto + 1)}
    return {k: naive_count(ring, k, target) for k in range(1, upto + 1)}


def recurrence_series(ring: Ring, target: Mat2, n: int) -> dict[int, int]:
    """Counts for ``target`` at lengths 1..n over a finite field, by recurrence."""
    if not _is_field(ring):
        raise UnsupportedRegime(f"the general recurrence needs a finite field, got {ring}")
    q = ring.size
    neg = mat2.negate(ring, target)
    same = _base_counts(ring, target, min(n, 4))
    opp = _base_counts(ring, neg, min(n, 4))
    for k in range(5, n + 1):
        same[k], opp[k] = recurrence_step(k, q, same, opp), recurrence_step(k, q, opp, same)
    return same


def recurrence_count(ring: Ring, target: Mat2, n: int) -> int:
    return recurrence_series(ring, target, n)[n]


def z4_recurrence(target: Mat2, n: int) -> int:
    """Counts over Z/4Z for any target via the order-2 recurrence (bases by enumeration)."""
    ring = Zmod(4)
    if n < 1:
        raise ValueError("n must be >= 1")
    neg = mat2.negate(ring, target)
    same = {k: naive_count(ring, k, target) for k in (1, 2, 3)}
    opp = {k: naive_count(ring, k, neg) for k in (1, 2, 3)}
    for k in range(4, n + 1):
        same[k], opp[k] = (
            same[k - 1] + opp[k - 1] + 6 * opp[k - 2] + 2 * same[k - 2],
            same[k - 1] + opp[k - 1] + 6 * same[k - 2] + 2 * opp[k - 2],
        )
    return same[n]


# --- SL2 indexing and the transfer-matrix counter ---------------------------


@dataclass(frozen=True)
class SL2Index:
    ring: Ring
    matrices: np.ndarray  # (S, 4) rows a, b, c, d
    lookup: np.ndarray  # code -> state index, -1 off SL2

    def code(self, m: Mat2) -> int:
        r = self.ring.size
        return ((m.a * r + m.b) * r + m.c) * r + m.d

    def index(self, m: Mat2) -> int:
        i = int(self.lookup[self.code(m)])
        if i < 0:
            raise KeyError(f"{m} is not in SL2({self.ring})")
        return i

    def matrix(self, i: int) -> Mat2:
        return Mat2(*(int(x) for x in self.matrices[i]))

    def __len__(self) -> int:
        return len(self.matrices)

    @property
    def transitions(self) -> np.ndarray:
        return _transitions(self.ring)


@lru_cache(maxsize=None)
def sl2_index(ring: Ring) -> SL2Index:
    r = ring.size
    if r**4 > MAX_DENSE_SCAN:
        raise ResourceLimitError(
            f"indexing SL2({ring}) scans |R|^4 = {r**4} matrices; limit is {MAX_DENSE_SCAN}"
        )
    mul, sub = ring.mul_table, ring.sub_table
    a, b, c, d = (x.ravel() for x in np.meshgrid(*(np.arange(r),) * 4, indexing="ij"))
    det = sub[mul[a, d], mul[b, c]]
    keep = det == ring.one
    mats = np.stack([a[keep], b[keep], c[keep], d[keep]], axis=1).astype(np.int64)
    lookup = np.full(r**4, -1, dtype=np.int64)
    codes = ((mats[:, 0] * r + mats[:, 1]) * r + mats[:, 2]) * r + mats[:, 3]
    lookup[codes] = np.arange(len(mats))
    return SL2Index(ring, mats, lookup)


@lru_cache(maxsize=None)
def _transitions(ring: Ring) -> np.ndarray:
    """``trans[x, s]`` = index of ``m1(x) @ M_s``."""
    idx = sl2_index(ring)
    r = ring.size
    mul, sub = ring.mul_table, ring.sub_table
    a, b, c, d = idx.matrices.T
    trans = np.empty((r, len(idx)), dtype=np.int64)
    for x in range(r):
        na = sub[mul[x, a], c]
        nb = sub[mul[x, b], d]
        trans[x] = idx.lookup[((na * r + nb) * r + a) * r + b]
    assert (trans >= 0).all()
    return trans


@dataclass(frozen=True)
class CountVector:
    """Exact number of n-tuples landing on each element of SL2(R)."""

    ring: Ring
    n: int
    counts: tuple[int, ...]

    @property
    def index(self) -> SL2Index:
        return sl2_index(self.ring)

    def __getitem__(self, m: Mat2) -> int:
        return self.counts[self.index.index(m)]

    @property
    def plus(self) -> int:
        return self[mat2.identity(self.ring)]

    @property
    def minus(self) -> int:
        return self[mat2.minus_identity(self.ring)]

    def signed(self, sign: int) -> int:
        return self.plus if sign > 0 else self.minus

    @property
    def total(self) -> int:
        return sum(self.counts)

    def items(self):
        idx = self.index
        return ((idx.matrix(i), c) for i, c in enumerate(self.counts))


@lru_cache(maxsize=64)
def _dp_series(ring: Ring, n_max: int) -> tuple[CountVector, ...]:
    idx = sl2_index(ring)
    trans = _transitions(ring)
    exact = ring.size**n_max >= _INT64_SAFE
    v = np.zeros(len(idx), dtype=object if exact else np.int64)
    if exact:
        v[:] = 0
    v[idx.index(mat2.identity(ring))] = 1
    out = [CountVector(ring, 0, tuple(int(x) for x in v))]
    for k in range(1, n_max + 1):
        v = kernels.dp_step(v, trans)
        out.append(CountVector(ring, k, tuple(int(x) for x in v)))
    return tuple(out)


def dp_series(ring: Ring, n_max: int) -> tuple[CountVector, ...]:
    """Count vectors for lengths 0..n_max (length 0: the empty product is Id)."""
    return _dp_series(ring, n_max)


def dp_count_all(ring: Ring, n: int) -> CountVector:
    if n < 0:
        raise ValueError("n must be >= 0")
    return dp_series(ring, n)[n]


# --- literal enumeration ----------------------------------------------------


def _tail_products(ring: Ring, length: int):
    """Products for every tuple of the given length, first entry most significant."""
    mul, sub = ring.mul_table, ring.sub_table
    a = np.array([ring.one], dtype=np.int64)
    b = np.array([ring.zero], dtype=np.int64)
    c = np.array([ring.zero], dtype=np.int64)
    d = np.array([ring.one], dtype=np.int64)
    r = ring.size
    for _ in range(length):
        x = np.tile(np.arange(r, dtype=np.int64), len(a))
        a, b, c, d = (np.repeat(y, r) for y in (a, b, c, d))
        a, b, c, d = sub[mul[x, a], c], sub[mul[x, b], d], a, b
    return a, b, c, d


def naive_codes(ring: Ring, n: int):
    """Yield arrays of SL2 codes, one per tuple, covering all |R|^n tuples."""
    r = ring.size
    if n < 1:
        raise ValueError("n must be >= 1")
    if r**n > NAIVE_GUARD:
        raise ResourceLimitError(f"{r}^{n} = {r**n} tuples exceeds the scan guard {NAIVE_GUARD}")
    tail_len = min(n, max(1, int(math.log(1 << 18, r))))
    ta, tb, tc, td = _tail_products(ring, tail_len)
    mul, add = ring.mul_table, ring.add_table
    for head in itertools.product(range(r), repeat=n - tail_len):
        h = mat2.product(ring, head) if head else mat2.identity(ring)
        # full product = tail @ head
        pa = add[mul[ta, h.a], mul[tb, h.c]]
        pb = add[mul[ta, h.b], mul[tb, h.d]]
        pc = add[mul[tc, h.a], mul[td, h.c]]
        pd = add[mul[tc, h.b], mul[td, h.d]]
        yield ((pa * r + pb) * r + pc) * r + pd


def naive_count(ring: Ring, n: int, target: Mat2) -> int:
    """Count n-tuples with product ``target`` by computing every tuple's product."""
    if n == 0:
        return int(target == mat2.identity(ring))
    r = ring.size
    code = ((target.a * r + target.b) * r + target.c) * r + target.d
    return int(sum(int(np.count_nonzero(codes == code)) for codes in naive_codes(ring, n)))


def naive_count_all(ring: Ring, n: int) -> dict[Mat2, int]:
    r = ring.size
    tally = np.zeros(r**4, dtype=np.int64)
    for codes in naive_codes(ring, n):
        tally += np.bincount(codes, minlength=r**4)
    out = {}
    for code in np.nonzero(tally)[0]:
        code = int(code)
        d = code % r
        c = (code // r) % r
        b = (code // r**2) % r
        a = code // r**3
        out[Mat2(a, b, c, d)] = int(tally[code])
    return out


def naive_solutions(ring: Ring, n: int, sign: int | None = None) -> np.ndarray:
    """All n-tuples whose product is ``sign * Id`` (either if None), as rows."""
    r = ring.size
    want = set()
    for s in ((1, -1) if sign is None else (sign,)):
        m = mat2.signed_identity(ring, s)
        want.add(((m.a * r + m.b) * r + m.c) * r + m.d)
    want_arr = np.array(sorted(want), dtype=np.int64)
    tail_len = min(n, max(1, int(math.log(1 << 18, r))))
    tails = np.array(list(itertools.product(range(r), repeat=tail_len)), dtype=np.int64)
    rows = []
    for head, codes in zip(itertools.product(range(r), repeat=n - tail_len), naive_codes(ring, n)):
        hit = np.isin(codes, want_arr)
        if hit.any():
            t = tails[hit]
            rows.append(np.hstack([np.tile(np.array(head, dtype=np.int64), (len(t), 1)), t]))
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    return np.vstack(rows)
