"""Hot loops: the SL2 transfer step and the irreducible-class search.

Each kernel has a jitted implementation and a pure-numpy (or interpreted)
one.  ``dp_step`` and ``search`` dispatch on ``_accel.USE_NUMBA``; the
explicit ``*_numba`` / ``*_numpy`` entry points exist for benchmarking and
for the object-dtype (big integer) DP path, which numba cannot handle.
"""

from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit


# --- transfer-matrix step ---------------------------------------------------


@njit
def _dp_step_loop(v, trans):
    out = np.zeros_like(v)
    n_elems, n_states = trans.shape
    for a in range(n_elems):
        row = trans[a]
        for s in range(n_states):
            out[row[s]] += v[s]
    return out


def dp_step_numpy(v: np.ndarray, trans: np.ndarray) -> np.ndarray:
    """``out[trans[a, s]] += v[s]`` for every element a and state s.

    Each ``trans[a]`` is a permutation of the states (left multiplication by
    an invertible matrix), so one fancy-indexed add per element is exact.
    Works for int64 and object arrays alike.
    """
    out = np.zeros_like(v)
    for row in trans:
        out[row] += v
    return out


def dp_step_numba(v: np.ndarray, trans: np.ndarray) -> np.ndarray:
    return _dp_step_loop(v, trans)


def dp_step(v: np.ndarray, trans: np.ndarray) -> np.ndarray:
    if v.dtype == object or not _accel.USE_NUMBA:
        return dp_step_numpy(v, trans)
    return dp_step_numba(v, trans)


# --- irreducible search -----------------------------------------------------
#
# Row r of ``cols`` holds the frieze column of the prefix of length r-1:
# row 0 is (0), row 1 is (0, 1), and the column of a prefix of length k has
# k+2 entries, entry j >= 2 being the continuant of the last j-1 prefix terms.


@njit
def _extend(n_mod, cols, n, x):
    """Column of prefix[:n] + (x,) into row n+2, from rows n+1 and n."""
    w = cols[n + 2]
    v = cols[n + 1]
    u = cols[n]
    w[0] = 0
    w[1] = 1
    w[2] = x
    for j in range(3, n + 3):
        w[j] = (x * v[j - 1] - u[j - 2]) % n_mod


@njit
def _has_pm_one(arr, lo, hi, n_mod):
    for j in range(lo, hi):
        if arr[j] == 1 or arr[j] == n_mod - 1:
            return True
    return False


@njit
def _reversal_keeps(prefix, length):
    for i in range(length):
        a = prefix[length - 1 - i]
        b = prefix[i]
        if a != b:
            return a > b
    return True


@njit
def _canonical_into(t, length, out):
    """Lexicographically least dihedral image of t[:length] written to out[:length]."""
    best_start = 0
    best_dir = 1
    for direction in (1, -1):
        for start in range(length):
            if direction == 1 and start == 0:
                continue
            for i in range(length):
                a = t[(start + direction * i) % length]
                b = t[(best_start + best_dir * i) % length]
                if a != b:
                    if a < b:
                        best_start = start
                        best_dir = direction
                    break
    for i in range(length):
        out[i] = t[(best_start + best_dir * i) % length]


@njit
def _search_kernel(n_mod, start, max_len, prune, split_len):
    width = max_len + 1
    prefix = np.zeros(max_len + 2, np.int64)
    cols = np.zeros((max_len + 3, max_len + 5), np.int64)
    cols[1, 1] = 1
    w1 = np.zeros(max_len + 5, np.int64)
    w2 = np.zeros(max_len + 6, np.int64)
    tmp = np.zeros(max_len + 2, np.int64)

    cap = 256
    found = np.full((cap, width), -1, np.int64)
    n_found = 0
    fcap = 64
    frontier = np.zeros((fcap, max(split_len, 1)), np.int64)
    n_front = 0
    truncated = 0

    s = start.shape[0]
    for k in range(s):
        prefix[k] = start[k]
        _extend(n_mod, cols, k, start[k])

    xs = np.zeros(max_len + 2, np.int64)
    depth = s
    while depth >= s:
        x = xs[depth]
        if x == n_mod:
            depth -= 1
            continue
        xs[depth] = x + 1
        prefix[depth] = x
        dlen = depth + 1
        if prune and not _reversal_keeps(prefix, dlen):
            continue
        n = depth
        _extend(n_mod, cols, n, x)
        w = cols[n + 2]
        if _has_pm_one(w, 2, n + 2, n_mod):
            continue
        eps = w[n + 2]
        if eps != 1 and eps != n_mod - 1:
            if dlen == split_len:
                if n_front == fcap:
                    grown = np.zeros((2 * fcap, frontier.shape[1]), np.int64)
                    grown[:fcap] = frontier
                    frontier = grown
                    fcap *= 2
                frontier[n_front, :dlen] = prefix[:dlen]
                n_front += 1
            elif dlen + 3 > max_len:
                truncated += 1
            else:
                depth += 1
                xs[depth] = 0
            continue
        # closing step: the whole prefix has continuant eps, so exactly two more terms fit
        v = cols[n + 1]
        y = (eps * v[n + 1]) % n_mod
        w1[0] = 0
        w1[1] = 1
        w1[2] = y
        for j in range(3, n + 4):
            w1[j] = (y * w[j - 1] - v[j - 2]) % n_mod
        if _has_pm_one(w1, 2, n + 2, n_mod):
            continue
        z = (eps * w[n + 1]) % n_mod
        w2[0] = 0
        w2[1] = 1
        w2[2] = z
        for j in range(3, n + 5):
            w2[j] = (z * w1[j - 1] - w[j - 2]) % n_mod
        if _has_pm_one(w2, 2, n + 2, n_mod) or w2[n + 4] != (n_mod - eps) % n_mod:
            continue
        length = dlen + 2
        tmp[:dlen] = prefix[:dlen]
        tmp[dlen] = y
        tmp[dlen + 1] = z
        if n_found == cap:
            grown = np.full((2 * cap, width), -1, np.int64)
            grown[:cap] = found
            found = grown
            cap *= 2
        found[n_found, 0] = length
        _canonical_into(tmp, length, found[n_found, 1:])
        n_found += 1
    return found[:n_found], truncated, frontier[:n_front]


def search_numba(n_mod, start, max_len, prune=True, split_len=0):
    return _search_kernel(n_mod, np.asarray(start, dtype=np.int64), max_len, prune, split_len)


def search_python(n_mod, start, max_len, prune=True, split_len=0):
    return _search_kernel.py_func(n_mod, np.asarray(start, dtype=np.int64), max_len, prune, split_len)


def search(n_mod, start, max_len, prune=True, split_len=0):
    """Depth-first search below ``start`` for closed irreducible tuples over Z/n_mod.

    Returns ``(found, truncated, frontier)``: ``found`` rows are
    ``[length, canonical entries..., -1 padding]`` (duplicates possible),
    ``truncated`` counts branches cut by ``max_len`` and ``frontier`` lists
    live prefixes of length ``split_len`` left unexplored (0 disables).
    ``start`` must be a live prefix (as produced in ``frontier``).
    """
    fn = search_numba if _accel.USE_NUMBA else search_python
    return fn(n_mod, start, max_len, prune, split_len)
