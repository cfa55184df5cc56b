import random

import pytest
from hypothesis import given, strategies as st
from sympy import isprime, prime

from ogglab.curves import (
    BadReduction,
    WeierstrassCurve,
    add,
    bundled_curve,
    detect,
    group_structure,
    multiply,
    mod3_irreducible_sufficient,
    newness_congruence,
    points,
    reduce_and_count,
    scalar_frobenius,
    torsion_count,
    twist,
)

C701 = bundled_curve("701a1")
C571 = bundled_curve("571b1")


def brute_count(E, p):
    a1, a2, a3, a4, a6 = E.to_list()
    return 1 + sum(1 for x in range(p) for y in range(p)
                   if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p == 0)


def test_bundled_curves():
    assert C701.to_list() == [0, -1, 1, -2, 1]
    assert C701.discriminant == 701
    assert C571.to_list() == [0, 1, 1, -4, 2]
    assert abs(C571.discriminant) == 571


def test_reduce_examples():
    assert reduce_and_count(C701, 7) == (9, -1)
    with pytest.raises(BadReduction):
        reduce_and_count(C701, 701)
    E = WeierstrassCurve(0, 0, 0, 1, 0)
    assert reduce_and_count(E, 3)[0] == brute_count(E, 3) == 4


def test_group_structure_examples():
    assert group_structure(C701, 7) == (3, 3)
    n, _ = reduce_and_count(C571, 13)
    assert group_structure(C571, 13) == (1, n)
    assert n % 3  # no rational 3-torsion
    # prime order groups are cyclic
    for p in (5, 11, 17, 23, 29):
        n, _ = reduce_and_count(C701, p)
        if isprime(n):
            assert group_structure(C701, p) == (1, n)


def test_scalar_frobenius_examples():
    assert scalar_frobenius(C701, 7, 3) == (True, False)
    assert scalar_frobenius(C571, 13, 3) == (False, True)


def test_newness_examples():
    assert newness_congruence(-1, 7, 3)
    assert newness_congruence(-2, 13, 3)
    assert not newness_congruence(0, 7, 3)


def test_mod3_examples():
    assert mod3_irreducible_sufficient(C701)
    assert mod3_irreducible_sufficient(C571)
    assert not mod3_irreducible_sufficient(WeierstrassCurve(0, 0, 0, 0, 1))


def test_detect_examples():
    r = detect(C701, 7, 3)
    assert (r.point_count, r.group_structure, r.scalar_plus, r.newness_congruence, r.irreducible) == \
        (9, (3, 3), True, True, True)
    assert r.candidate
    assert "dim J^{pq}[m] = 4" in r.to_json()["citedFacts"]
    r = detect(C571, 13, 3)
    assert r.scalar_minus and r.candidate
    r = detect(C701, 11, 3)
    assert not r.candidate
    assert (r.point_count, r.scalar_plus, r.scalar_minus) == (12, False, False)
    with pytest.raises(BadReduction):
        detect(C701, 701, 3)


# --- properties -------------------------------------------------------------


def _good(pc):
    p, c = pc
    a1, a2, a3, a4, a6 = c
    b2, b4, b6 = a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return disc % p != 0


curves_mod_p = lambda: st.tuples(
    st.integers(1, 26).map(prime),  # p <= 101
    st.lists(st.integers(-20, 20), min_size=5, max_size=5),
).filter(_good).map(lambda pc: (WeierstrassCurve.from_list(pc[1]), pc[0]))


@given(curves_mod_p())
def test_count_matches_brute_force_and_hasse(Ep):
    E, p = Ep
    n, a = reduce_and_count(E, p)
    assert n == brute_count(E, p) == len(points(E, p))
    assert a * a <= 4 * p


@given(curves_mod_p())
def test_group_structure_invariants(Ep):
    E, p = Ep
    n, _ = reduce_and_count(E, p)
    d1, d2 = group_structure(E, p)
    assert d1 * d2 == n and d2 % d1 == 0 and (p - 1) % d1 == 0


@given(curves_mod_p())
def test_group_law(Ep):
    E, p = Ep
    pts = points(E, p)
    rng = random.Random(p)
    n = len(pts)
    for _ in range(5):
        P, Q, R = (rng.choice(pts) for _ in range(3))
        assert E.on_curve(add(E, P, Q, p), p)
        assert add(E, add(E, P, Q, p), R, p) == add(E, P, add(E, Q, R, p), p)
        assert multiply(E, n, P, p) is None


@given(curves_mod_p(), st.sampled_from([3, 5, 7]))
def test_scalar_exclusive_and_twist_duality(Ep, ell):
    E, p = Ep
    if p == ell or p == 2:
        return
    plus, minus = scalar_frobenius(E, p, ell)
    assert not (plus and minus)
    if plus:
        assert reduce_and_count(E, p)[0] % ell == 0
    Et = twist(E, p)
    assert minus == scalar_frobenius(Et, p, ell)[0]
    assert plus == scalar_frobenius(Et, p, ell)[1]
    # the twist has trace -a_p
    assert reduce_and_count(Et, p)[1] == -reduce_and_count(E, p)[1]


@given(curves_mod_p())
def test_full_torsion_criterion_brute(Ep):
    E, p = Ep
    if p in (2, 3):
        return
    plus, _ = scalar_frobenius(E, p, 3)
    assert plus == (torsion_count(E, p, 3) == 9)
