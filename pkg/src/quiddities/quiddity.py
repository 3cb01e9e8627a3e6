"""Tuples over a ring: the gluing sum, dihedral classes, reducibility.

A tuple is a *lambda-quiddity* when its continuant product is +Id or -Id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import mat2
from .mat2 import Target
from .ring import Ring, make_ring


@dataclass(frozen=True)
class Quiddity:
    ring: Ring
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(a) for a in self.entries))
        if any(not 0 <= a < self.ring.size for a in self.entries):
            raise ValueError(f"entries {self.entries} are not elements of {self.ring}")

    @classmethod
    def of(cls, ring: Ring, values: Sequence[int]) -> "Quiddity":
        """Build from arbitrary integers, reduced into the ring (Z/NZ style)."""
        return cls(ring, tuple(ring.from_int(v) for v in values))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def product(self) -> mat2.Mat2:
        return mat2.product(self.ring, self.entries)

    def __str__(self) -> str:
        return format_quiddity(self)


def format_quiddity(t: Quiddity) -> str:
    return f"{t.ring.spec}:(" + ",".join(map(str, t.entries)) + ")"


def parse_quiddity(text: str) -> Quiddity:
    """Inverse of ``format_quiddity``, e.g. ``zmod:8:(2,2,6,2)``."""
    text = text.strip()
    cut = text.rfind(":(")
    if cut < 0 or not text.endswith(")"):
        raise ValueError(f"cannot parse tuple {text!r}")
    ring = make_ring(text[:cut])
    body = text[cut + 2 : -1].strip()
    entries = tuple(int(x) for x in body.split(",")) if body else ()
    return Quiddity(ring, entries)


def _same_ring(a: Quiddity, b: Quiddity) -> Ring:
    if a.ring != b.ring:
        raise ValueError(f"tuples live in different rings: {a.ring} vs {b.ring}")
    return a.ring


def oplus(a: Quiddity, b: Quiddity) -> Quiddity:
    """``(a_1+b_m, a_2, ..., a_{n-1}, a_n+b_1, b_2, ..., b_{m-1})``."""
    ring = _same_ring(a, b)
    if len(a) < 2 or len(b) < 2:
        # with a length-1 summand the two glued ends coincide and n+m-2 entries cannot be formed
        raise ValueError("both summands need at least two entries")
    x, y = a.entries, b.entries
    head = (ring.add(x[0], y[-1]),) + x[1:-1] + (ring.add(x[-1], y[0]),)
    return Quiddity(ring, head + y[1:-1])


def dihedral_images(entries: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All n rotations of the tuple, then all n rotations of its reversal."""
    t = tuple(entries)
    n = len(t)
    for seq in (t, t[::-1]):
        for i in range(n):
            yield seq[i:] + seq[:i]


def canonical_tuple(entries: Sequence[int]) -> tuple[int, ...]:
    return min(dihedral_images(entries))


def canonical_rep(t: Quiddity) -> Quiddity:
    if len(t) < 1:
        raise ValueError("empty tuple has no class representative")
    return Quiddity(t.ring, canonical_tuple(t.entries))


def equivalent(a: Quiddity, b: Quiddity) -> bool:
    _same_ring(a, b)
    return len(a) == len(b) and canonical_tuple(a.entries) == canonical_tuple(b.entries)


def target_of(t: Quiddity) -> Target:
    return mat2.classify(t.ring, t.product())


def is_lambda_quiddity(t: Quiddity) -> bool:
    return len(t) >= 1 and target_of(t) is not Target.OTHER


def reduction_witness(t: Quiddity) -> tuple[tuple[int, ...], Quiddity, Quiddity] | None:
    """Find ``(image, a, b)`` with ``image ~ t``, ``image == a (+) b``, b a solution.

    Both ``a`` and ``b`` have length >= 3.  For a fixed image and split length
    the interior of ``b`` is read off the tail of the image; ``b_1`` is scanned
    and ``b_l`` is then the single value closing ``b`` (if any).
    """
    ring = t.ring
    n = len(t)
    if n < 3:
        raise ValueError("reducibility is defined for length >= 3")
    if not is_lambda_quiddity(t):
        raise ValueError(f"{t} is not a lambda-quiddity")
    one, minus_one = ring.one, ring.minus_one
    for image in dict.fromkeys(dihedral_images(t.entries)):
        for l in range(3, n):
            m = n - l + 2
            interior = image[m:]
            p = mat2.product(ring, interior)
            for b1 in ring:
                x = mat2.matmul(ring, p, mat2.m1(ring, b1))
                # m1(bl) @ x == eps*Id forces x = [[0, eps], [-eps, delta]], bl = eps*delta
                if x.a != ring.zero or x.b not in (one, minus_one):
                    continue
                bl = ring.mul(x.b, x.d)
                if mat2.classify(ring, mat2.apply_m1(ring, bl, x)) is Target.OTHER:
                    continue
                b = Quiddity(ring, (b1,) + interior + (bl,))
                a_entries = (ring.sub(image[0], bl),) + image[1 : m - 1] + (ring.sub(image[m - 1], b1),)
                return image, Quiddity(ring, a_entries), b
    return None


def is_reducible(t: Quiddity) -> bool:
    return reduction_witness(t) is not None


def is_irreducible(t: Quiddity) -> bool:
    return not is_reducible(t)


def negate(t: Quiddity) -> Quiddity:
    return Quiddity(t.ring, tuple(t.ring.neg(a) for a in t.entries))


def scale(t: Quiddity, lam: int) -> Quiddity:
    """Multiply odd positions by ``lam`` and even positions by ``lam**-1``."""
    ring = t.ring
    if len(t) % 2:
        raise ValueError("alternating scaling needs an even length")
    if not ring.is_unit(lam):
        raise ValueError(f"{ring.format(lam)} is not a unit")
    lam_inv = ring.inv(lam)
    return Quiddity(
        ring, tuple(ring.mul(a, lam if i % 2 == 0 else lam_inv) for i, a in enumerate(t.entries))
    )


def matches_sign(ring: Ring, m: mat2.Mat2, sign: int | None) -> bool:
    """``sign`` is +1, -1, or None for either; in characteristic 2 they coincide."""
    if sign is None:
        return mat2.classify(ring, m) is not Target.OTHER
    return m == mat2.signed_identity(ring, sign)


def small_solutions(ring: Ring, n: int, sign: int | None = None) -> list[Quiddity]:
    """Every solution of length n <= 4 with product ``sign * Id`` (either sign if None)."""
    if n < 1 or n > 4:
        raise ValueError("closed inventories exist only for lengths 1..4")
    one, mo, zero = ring.one, ring.minus_one, ring.zero
    if n == 1:
        candidates = []
    elif n == 2:
        candidates = [(zero, zero)]
    elif n == 3:
        candidates = [(one, one, one), (mo, mo, mo)]
    else:
        two = ring.add(one, one)
        candidates = []
        for a in ring:
            for b in ring:
                if ring.mul(a, b) == zero:
                    candidates.append((ring.neg(a), b, a, ring.neg(b)))
                if ring.mul(a, b) == two:
                    candidates.append((a, b, a, b))
    out = []
    for c in dict.fromkeys(candidates):
        if matches_sign(ring, mat2.product(ring, c), sign):
            out.append(Quiddity(ring, c))
    return out
