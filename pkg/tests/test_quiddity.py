import itertools

import numpy as np
import pytest

from quiddities import mat2
from quiddities.counting import naive_solutions
from quiddities.mat2 import Target
from quiddities.quiddity import (
    Quiddity,
    canonical_rep,
    canonical_tuple,
    dihedral_images,
    equivalent,
    format_quiddity,
    is_irreducible,
    is_lambda_quiddity,
    is_reducible,
    negate,
    oplus,
    parse_quiddity,
    reduction_witness,
    scale,
    small_solutions,
    target_of,
)
from quiddities.ring import GF, Zmod


def Q(n, *xs):
    return Quiddity.of(Zmod(n), xs)


def test_oplus_examples():
    assert oplus(Q(8, 1, 2, 3), Q(8, 3, 2, 1)) == Q(8, 2, 2, 6, 2)
    assert oplus(Q(8, 5, 2, 1, 1, 3), Q(8, 2, 2, 3, 0)) == Q(8, 5, 2, 1, 1, 5, 2, 3)


def test_oplus_with_zero_pair_is_identity():
    for t in itertools.product(range(4), repeat=3):
        q = Q(4, *t)
        assert oplus(q, Q(4, 0, 0)) == q


def test_oplus_rejects_short_or_mixed():
    with pytest.raises(ValueError):
        oplus(Q(5, 1), Q(5, 1, 1, 1))
    with pytest.raises(ValueError):
        oplus(Q(5, 1, 1, 1), Q(7, 1, 1, 1))


def test_oplus_not_commutative():
    a, b = Q(5, 1, 2, 3), Q(5, 1, 1, 1)
    assert oplus(a, b) != oplus(b, a)


def test_oplus_not_associative():
    a, b, c = Q(5, 1, 2, 3), Q(5, 4, 0, 2), Q(5, 1, 1, 1)
    assert oplus(oplus(a, b), c) != oplus(a, oplus(b, c))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_oplus_compatibility_exhaustive(n):
    ring = Zmod(n)
    sols = [q for k in (2, 3, 4) for q in small_solutions(ring, k)]
    for la in (2, 3, 4):
        for a in itertools.product(range(n), repeat=la):
            qa = Quiddity(ring, a)
            for b in sols:
                assert is_lambda_quiddity(oplus(qa, b)) == is_lambda_quiddity(qa)


def test_canonical_rep_examples():
    assert canonical_rep(Q(5, 2, 1, 0)).entries == (0, 1, 2)
    assert canonical_rep(Q(8, 3, 0, 5, 0)).entries == (0, 3, 0, 5)
    assert canonical_rep(Q(8, 6, 6, 6, 6, 6)).entries == (6,) * 5


def test_canonical_rep_constant_on_orbits_and_idempotent():
    rng = np.random.default_rng(7)
    for _ in range(200):
        t = tuple(int(x) for x in rng.integers(0, 6, size=rng.integers(1, 9)))
        c = canonical_tuple(t)
        assert canonical_tuple(c) == c
        for img in dihedral_images(t):
            assert canonical_tuple(img) == c
        assert len(list(dihedral_images(t))) == 2 * len(t)


def test_equivalent():
    assert equivalent(Q(7, 1, 2, 3, 4), Q(7, 3, 2, 1, 4))
    assert not equivalent(Q(7, 1, 2, 3, 4), Q(7, 1, 3, 2, 4))


def test_is_lambda_quiddity_examples():
    assert is_lambda_quiddity(Q(9, 0, 0))
    assert is_lambda_quiddity(Q(7, 1, 1, 1))
    assert not is_lambda_quiddity(Q(7, 1, 1, 2))
    for n in range(2, 13):
        for a in range(n):
            assert is_lambda_quiddity(Q(n, a, 0, -a, 0))


def test_target_of():
    assert target_of(Q(5, 1, 1, 1)) is Target.MINUS_ID
    assert target_of(Q(5, 0, 0, 0, 0)) is Target.PLUS_ID


@pytest.mark.parametrize("n", [4, 5, 6])
def test_dihedral_images_preserve_solutions(n):
    ring = Zmod(n)
    for length in (4, 5, 6):
        for row in naive_solutions(ring, length).tolist():
            for img in dihedral_images(row):
                assert is_lambda_quiddity(Quiddity(ring, img))


def test_is_reducible_examples():
    assert is_reducible(Q(5, -1, 0, 1, 0))
    assert not is_reducible(Q(5, 2, 0, 3, 0))
    assert not is_reducible(Q(5, 1, 1, 1))
    assert is_irreducible(Q(5, 2, 0, 3, 0))


def test_is_reducible_rejects_non_solutions():
    with pytest.raises(ValueError):
        is_reducible(Q(7, 1, 1, 2))
    with pytest.raises(ValueError):
        is_reducible(Q(7, 0, 0))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_reduction_witness_is_a_real_decomposition(n):
    ring = Zmod(n)
    for length in (4, 5, 6):
        for row in naive_solutions(ring, length).tolist()[:200]:
            w = reduction_witness(Quiddity(ring, row))
            if w is None:
                continue
            image, a, b = w
            assert canonical_tuple(image) == canonical_tuple(row)
            assert len(a) >= 3 and len(b) >= 3
            assert is_lambda_quiddity(b) and is_lambda_quiddity(a)
            assert oplus(a, b).entries == image


@pytest.mark.parametrize("n", range(2, 9))
def test_size_four_reducible_iff_contains_pm_one(n):
    ring = Zmod(n)
    for row in naive_solutions(ring, 4).tolist():
        q = Quiddity(ring, row)
        has_pm_one = any(ring.is_pm_one(a) for a in row)
        assert is_reducible(q) == has_pm_one


def test_negate_examples():
    assert negate(Q(5, 1, 1, 1)) == Q(5, 4, 4, 4)
    q = Q(9, 3, 1, 4, 1, 5)
    assert negate(negate(q)) == q


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("length", [3, 5, 7])
def test_negation_swaps_plus_and_minus_for_odd_length(n, length):
    ring = Zmod(n)
    plus = {tuple(r) for r in naive_solutions(ring, length, 1).tolist()}
    minus = {tuple(r) for r in naive_solutions(ring, length, -1).tolist()}
    assert {negate(Quiddity(ring, t)).entries for t in plus} == minus
    assert len(plus) == len(minus)


def test_scale_examples():
    assert scale(Q(5, 2, 0, 3, 0), 2) == Q(5, 4, 0, 1, 0)
    q = Q(5, 1, 2, 3, 4)
    assert scale(q, 1) == q
    with pytest.raises(ValueError):
        scale(Q(5, 1, 1, 1), 2)
    with pytest.raises(ValueError):
        scale(Q(6, 0, 0, 0, 0), 2)


@pytest.mark.parametrize("ring", [Zmod(5), Zmod(6), GF(2, 2)], ids=str)
def test_scaling_preserves_target_size_four(ring):
    for t in itertools.product(ring, repeat=4):
        q = Quiddity(ring, t)
        m = q.product()
        if mat2.classify(ring, m) is Target.OTHER:
            continue
        for lam in ring.units():
            assert scale(q, lam).product() == m


def test_small_solutions_inventories():
    z5 = Zmod(5)
    assert len(small_solutions(z5, 4)) == 13
    assert len(small_solutions(z5, 4, -1)) == 4
    assert len(small_solutions(z5, 4, 1)) == 9
    assert small_solutions(z5, 1) == []
    assert small_solutions(z5, 2, -1) == [Q(5, 0, 0)]
    assert small_solutions(z5, 2, 1) == []
    assert {q.entries for q in small_solutions(z5, 3)} == {(1, 1, 1), (4, 4, 4)}
    assert len(small_solutions(Zmod(2), 3)) == 1
    with pytest.raises(ValueError):
        small_solutions(z5, 5)


@pytest.mark.parametrize("ring", [Zmod(n) for n in range(2, 9)] + [GF(2, 2), GF(3, 2)], ids=str)
def test_small_solutions_match_exhaustive_scan(ring):
    for n in (2, 3, 4):
        for sign in (1, -1):
            want = {
                t for t in itertools.product(ring, repeat=n)
                if mat2.product(ring, t) == mat2.signed_identity(ring, sign)
            }
            assert {q.entries for q in small_solutions(ring, n, sign)} == want


def test_serialization_round_trip():
    q = Q(8, 2, 2, 6, 2)
    assert format_quiddity(q) == "zmod:8:(2,2,6,2)"
    assert parse_quiddity("zmod:8:(2,2,6,2)") == q
    f = Quiddity(GF(2, 2), (1, 2, 3))
    assert parse_quiddity(str(f)) == f
    with pytest.raises(ValueError):
        parse_quiddity("zmod:8:2,2")
    with pytest.raises(ValueError):
        Quiddity(Zmod(3), (0, 3))
