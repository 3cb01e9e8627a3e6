import numpy as np
import pytest

from quiddities import mat2
from quiddities.errors import ResourceLimitError, UnsupportedRegime
from quiddities.irreducible import (
    check_member,
    enumerate_irreducible,
    extend_columns,
    oracle_irreducible_classes,
    pow2_family,
    v_table,
)
from quiddities.quiddity import Quiddity, canonical_tuple, is_lambda_quiddity
from quiddities.ring import GF, Zmod


def test_extend_columns_base_cases():
    z5 = Zmod(5)
    assert extend_columns(z5, (0,), (0, 1), 3) == (0, 1, 3)
    assert extend_columns(z5, (0, 1), (0, 1, 2), 4) == (0, 1, 4, (4 * 2 - 1) % 5)
    with pytest.raises(ValueError):
        extend_columns(z5, (0, 1), (0, 1), 4)


def columns_of(ring, prefix):
    u, v = (ring.zero,), (ring.zero, ring.one)
    for x in prefix:
        u, v = v, extend_columns(ring, u, v, x)
    return v


def test_columns_hold_continuants_of_suffixes():
    # entry j >= 2 is the top-left entry of the product of the last j-1 terms
    rng = np.random.default_rng(3)
    for n_mod in (5, 7, 12):
        ring = Zmod(n_mod)
        for _ in range(30):
            prefix = [int(x) for x in rng.integers(0, n_mod, size=rng.integers(1, 9))]
            col = columns_of(ring, prefix)
            assert len(col) == len(prefix) + 2
            for j in range(2, len(col)):
                assert col[j] == mat2.product(ring, prefix[-(j - 1):]).a


def test_final_column_of_a_solution():
    z5 = Zmod(5)
    col = columns_of(z5, (1, 1, 1))
    assert 0 in col
    assert col[-1] == mat2.product(z5, (1, 1, 1)).a == z5.minus_one


@pytest.mark.parametrize(
    "n_mod, max_len, v, ell",
    [(5, 8, 9, 6), (2, 6, 2, 4), (7, 11, 42, 9), (3, 8, 3, 4), (6, 8, 10, 6)],
)
def test_enumerator_examples(n_mod, max_len, v, ell):
    cs = enumerate_irreducible(Zmod(n_mod), max_len)
    assert (cs.v, cs.ell, cs.complete) == (v, ell, True)


def test_truncation_is_flagged():
    cs = enumerate_irreducible(Zmod(7), 8)
    assert not cs.complete and cs.truncated > 0
    assert cs.ell <= 8
    assert cs.as_record()["complete"] is False


def test_enumerator_rejects_other_rings():
    with pytest.raises(UnsupportedRegime):
        enumerate_irreducible(GF(2, 2), 8)
    with pytest.raises(ValueError):
        enumerate_irreducible(Zmod(5), 3)


def test_oracle_examples():
    assert oracle_irreducible_classes(Zmod(3), 7).v == 3
    cs = oracle_irreducible_classes(Zmod(6), 8)
    assert (cs.v, cs.ell) == (10, 6)


def test_z4_classes_listed_explicitly():
    # size 3: the two constant solutions; size 4: the +-1 free members of the
    # (-a, b, a, -b), ab = 0 family; nothing longer survives
    expected = {(1, 1, 1), (3, 3, 3), (0, 0, 0, 0), (0, 2, 0, 2), (2, 2, 2, 2)}
    assert set(oracle_irreducible_classes(Zmod(4), 9).classes) == expected
    assert set(enumerate_irreducible(Zmod(4), 12).classes) == expected


def test_oracle_guard():
    with pytest.raises(ResourceLimitError):
        oracle_irreducible_classes(Zmod(9), 12)


@pytest.mark.parametrize("n_mod, depth", [(2, 8), (3, 8), (4, 8), (5, 8), (6, 8)])
def test_enumerator_equals_oracle(n_mod, depth):
    ring = Zmod(n_mod)
    assert enumerate_irreducible(ring, depth).classes == oracle_irreducible_classes(ring, depth).classes


def test_enumerator_equals_oracle_z7_short_lengths():
    ring = Zmod(7)
    full = enumerate_irreducible(ring, 12)
    assert full.restricted(7).classes == oracle_irreducible_classes(ring, 7).classes


@pytest.mark.parametrize("n_mod", [2, 3, 4, 5])
def test_prune_does_not_change_result(n_mod):
    ring = Zmod(n_mod)
    assert enumerate_irreducible(ring, 10, prune=True).classes == enumerate_irreducible(ring, 10, prune=False).classes


def test_parallel_matches_serial():
    ring = Zmod(9)
    assert enumerate_irreducible(ring, 16, jobs=2).classes == enumerate_irreducible(ring, 16, jobs=1).classes


def test_env_overrides_jobs(monkeypatch):
    from quiddities.irreducible import resolve_jobs

    monkeypatch.setenv("QUIDDITY_JOBS", "3")
    assert resolve_jobs(1) == 3
    monkeypatch.delenv("QUIDDITY_JOBS")
    assert resolve_jobs(None) == 1


def test_members_are_distinct_canonical_representatives():
    cs = enumerate_irreducible(Zmod(11), 24)
    assert cs.complete
    assert all(canonical_tuple(c) == c for c in cs.classes)
    assert len(set(cs.classes)) == cs.v
    assert sum(cs.tallies.values()) == cs.v


def test_members_pass_definitional_check_sample():
    rng = np.random.default_rng(11)
    checked = 0
    for n_mod, max_len, take in ((9, 16, None), (10, 16, None), (11, 24, 600)):
        ring = Zmod(n_mod)
        classes = enumerate_irreducible(ring, max_len).classes
        if take is not None:
            picks = rng.choice(len(classes), size=take, replace=False)
            classes = [classes[i] for i in picks]
        for c in classes:
            assert check_member(ring, c)
            checked += 1
    assert checked >= 1000


def test_pow2_family_zero_part():
    fam = pow2_family(2, "zero")
    assert len({canonical_tuple(q.entries) for q in fam}) == 8


def test_pow2_family_members():
    for m in (2, 3):
        ring = Zmod(4**m)
        for q in pow2_family(m):
            assert q.ring == ring
            assert is_lambda_quiddity(q)
            assert not any(ring.is_pm_one(a) for a in q)


def test_pow2_family_odd_part_collapses_at_most_four_per_class():
    fam = pow2_family(2, "odd")
    assert len(fam) == 4
    classes = {}
    for q in fam:
        classes.setdefault(canonical_tuple(q.entries), []).append(q)
    assert all(len(v) <= 4 for v in classes.values())


def test_pow2_family_in_census():
    cs = enumerate_irreducible(Zmod(16), 8)
    for q in pow2_family(2):
        assert q.entries in cs


def test_v_table_small():
    rows = v_table(6, N_min=5)
    assert [(r.N, r.v, r.ell, r.complete) for r in rows] == [(5, 9, 6, True), (6, 10, 6, True)]


def test_v_table_budget_exhausted():
    (row,) = v_table(7, N_min=7, budget=8)
    assert not row.complete
