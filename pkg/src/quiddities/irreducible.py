"""Irreducible solution classes over Z/NZ.

The enumerator walks prefixes depth first, carrying the last two frieze
columns; a +-1 strictly inside a column means the prefix already contains a
reducible block, and a +-1 at the bottom means the tuple can be closed with
exactly two more entries.  ``oracle_irreducible_classes`` recomputes the same
set straight from the definition, for small rings.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .counting import naive_solutions
from .errors import ResourceLimitError, UnsupportedRegime
from .quiddity import Quiddity, canonical_tuple, is_irreducible, is_lambda_quiddity
from .ring import Ring, Zmod

ORACLE_GUARD = 5 * 10**7


def extend_columns(ring: Ring, u: Sequence[int], v: Sequence[int], x: int) -> tuple[int, ...]:
    """Next frieze column after appending ``x`` to a prefix of length n.

    ``u`` has n+1 entries and ``v`` has n+2; the result has n+3, starting
    ``(0, 1, x)`` and continuing ``x * v[j-1] - u[j-2]``.
    """
    n = len(u) - 1
    if n < 0 or len(v) != n + 2:
        raise ValueError(f"column lengths {len(u)}, {len(v)} do not describe a prefix")
    w = [ring.zero, ring.one, x]
    for j in range(3, n + 3):
        w.append(ring.sub(ring.mul(x, v[j - 1]), u[j - 2]))
    return tuple(w)


@dataclass
class ClassSet:
    """Canonical representatives of irreducible classes, sorted by (length, entries)."""

    N: int
    classes: tuple[tuple[int, ...], ...]
    max_len: int
    truncated: int = 0
    tallies: Counter = field(init=False)

    def __post_init__(self):
        self.classes = tuple(sorted(set(self.classes), key=lambda c: (len(c), c)))
        self.tallies = Counter(len(c) for c in self.classes)

    @property
    def complete(self) -> bool:
        return self.truncated == 0

    @property
    def v(self) -> int:
        return len(self.classes)

    @property
    def ell(self) -> int:
        return max((len(c) for c in self.classes), default=0)

    def __len__(self) -> int:
        return len(self.classes)

    def __contains__(self, item) -> bool:
        return canonical_tuple(item) in set(self.classes)

    def restricted(self, max_len: int) -> "ClassSet":
        return ClassSet(self.N, tuple(c for c in self.classes if len(c) <= max_len), max_len, self.truncated)

    def quiddities(self) -> list[Quiddity]:
        ring = Zmod(self.N)
        return [Quiddity(ring, c) for c in self.classes]

    def as_record(self) -> dict:
        return {
            "N": self.N,
            "v": self.v,
            "ell": self.ell,
            "complete": self.complete,
            "truncated_branches": int(self.truncated),
        }


def _rows_to_tuples(found: np.ndarray) -> Iterable[tuple[int, ...]]:
    for row in found:
        yield tuple(int(x) for x in row[1 : 1 + row[0]])


def _subtree(args):
    n_mod, start, max_len, prune = args
    found, truncated, _ = kernels.search(n_mod, start, max_len, prune)
    return set(_rows_to_tuples(found)), int(truncated)


def resolve_jobs(jobs: int | None) -> int:
    env = os.environ.get("QUIDDITY_JOBS")
    if env:
        jobs = int(env)
    return max(1, jobs or 1)


def enumerate_irreducible(ring: Ring, max_len: int, jobs: int | None = None, prune: bool = True) -> ClassSet:
    """All irreducible classes of length <= max_len over Z/NZ.

    Branches still open at ``max_len`` are counted in ``truncated``; a
    nonzero count marks the result incomplete.  With several jobs the search
    forest is split at prefixes of length two and the subtrees run in worker
    processes.
    """
    if not isinstance(ring, Zmod):
        raise UnsupportedRegime(f"irreducible enumeration runs over Z/NZ, got {ring}")
    if max_len < 4:
        raise ValueError("max_len must be at least 4")
    n_mod = ring.n
    jobs = resolve_jobs(jobs)
    empty = np.zeros(0, dtype=np.int64)
    if jobs == 1:
        found, truncated, _ = kernels.search(n_mod, empty, max_len, prune)
        return ClassSet(n_mod, tuple(_rows_to_tuples(found)), max_len, int(truncated))

    found, truncated, frontier = kernels.search(n_mod, empty, max_len, prune, split_len=2)
    classes = set(_rows_to_tuples(found))
    truncated = int(truncated)
    tasks = [(n_mod, start.copy(), max_len, prune) for start in frontier]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part, cut in pool.map(_subtree, tasks):
            classes |= part
            truncated += cut
    return ClassSet(n_mod, tuple(classes), max_len, truncated)


def oracle_irreducible_classes(ring: Ring, max_len: int) -> ClassSet:
    """Classes found by scanning every tuple of length 3..max_len and testing the definition."""
    if not isinstance(ring, Zmod):
        raise UnsupportedRegime(f"the oracle runs over Z/NZ, got {ring}")
    n_mod = ring.n
    work = sum(n_mod**n for n in range(3, max_len + 1))
    if work > ORACLE_GUARD:
        raise ResourceLimitError(f"scanning {work} tuples exceeds the oracle guard {ORACLE_GUARD}")
    classes = set()
    for n in range(3, max_len + 1):
        reps = {canonical_tuple(row) for row in naive_solutions(ring, n).tolist()}
        for rep in sorted(reps):
            if is_irreducible(Quiddity(ring, rep)):
                classes.add(rep)
    return ClassSet(n_mod, tuple(classes), max_len, 0)


def pow2_family(m: int, part: str = "both") -> list[Quiddity]:
    """Size-4 irreducible solutions over Z/2^{2m}Z.

    ``part="zero"``: (a, 0, -a, 0) with 0 <= a <= N/2, a != 1.
    ``part="odd"``: (2^{m+k} a, 2^{m-k} b, -2^{m+k} a, -2^{m-k} b) with
    1 <= k <= m-1, a odd below 2^{m-k}, b odd below 2^{m+k}.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    if part not in ("zero", "odd", "both"):
        raise ValueError(f"unknown part {part!r}")
    n_mod = 2 ** (2 * m)
    ring = Zmod(n_mod)
    out = []
    if part in ("zero", "both"):
        for a in range(n_mod // 2 + 1):
            if a != 1:
                out.append(Quiddity.of(ring, (a, 0, -a, 0)))
    if part in ("odd", "both"):
        for k in range(1, m):
            x, y = 2 ** (m + k), 2 ** (m - k)
            for a in range(1, y, 2):
                for b in range(1, x, 2):
                    out.append(Quiddity.of(ring, (x * a, y * b, -x * a, -y * b)))
    return out


def check_member(ring: Ring, rep: Sequence[int]) -> bool:
    t = Quiddity(ring, tuple(rep))
    return is_lambda_quiddity(t) and is_irreducible(t)


@dataclass
class CensusRow:
    N: int
    v: int
    ell: int
    max_len: int
    complete: bool


def v_table(N_max: int, budget: int = 40, N_min: int = 2, jobs: int | None = None, start_len: int = 8) -> list[CensusRow]:
    """Census rows for N_min..N_max with an adaptive depth cap.

    The cap starts at ``start_len`` and grows by 4 until no branch is cut,
    or until it would exceed ``budget``.  With no cut branch the whole search
    tree has been walked, so a larger cap cannot add a class.  Rows that
    never closed are reported with ``complete=False``.
    """
    rows = []
    for n_mod in range(N_min, N_max + 1):
        ring = Zmod(n_mod)
        max_len = start_len
        while True:
            cs = enumerate_irreducible(ring, max_len, jobs)
            if cs.complete or max_len + 4 > budget:
                break
            max_len += 4
        rows.append(CensusRow(n_mod, cs.v, cs.ell, max_len, cs.complete))
    return rows
