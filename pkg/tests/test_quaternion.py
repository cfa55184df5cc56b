from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import factorint

from ogglab.quaternion import (
    QLattice,
    QuaternionAlgebra,
    algebra_for_prime,
    eichler_order,
    hilbert_symbol,
    is_order,
    maximal_order,
    quat,
    reduced_discriminant,
    standard_order,
)

nonzero = st.integers(-60, 60).filter(lambda t: t != 0)
SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 41]


def places(*ns):
    out = {2}
    for n in ns:
        out |= set(factorint(abs(n)))
    return sorted(out) + ["inf"]


def test_hilbert_known_values():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, 3) == 1
    assert hilbert_symbol(-1, -1, "inf") == -1
    assert hilbert_symbol(2, 5, 5) == -1  # 2 is a non-residue mod 5
    assert hilbert_symbol(2, 7, 7) == 1


@given(nonzero, nonzero)
def test_hilbert_product_formula(a, b):
    prod = 1
    for v in places(a, b):
        prod *= hilbert_symbol(a, b, v)
    assert prod == 1


@given(nonzero, nonzero, nonzero)
def test_hilbert_bimultiplicative(a, b, c):
    for v in places(a, b, c):
        assert hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v)
        assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)


@given(nonzero)
def test_hilbert_steinberg(a):
    for v in places(a, 1 - a if a != 1 else 2):
        assert hilbert_symbol(a, -a, v) == 1
        if a != 1:
            assert hilbert_symbol(a, 1 - a, v) == 1


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_algebra_ramification(p):
    alg = algebra_for_prime(p)
    assert alg.a < 0 and alg.b < 0
    assert alg.ramified_primes() == {p}
    assert hilbert_symbol(alg.a, alg.b, "inf") == -1


def test_algebra_examples():
    assert algebra_for_prime(2) == QuaternionAlgebra(-1, -1)
    assert algebra_for_prime(5).ramified_primes() == {5}
    assert algebra_for_prime(13).ramified_primes() == {13}
    with pytest.raises(ValueError):
        QuaternionAlgebra(1, -1)


quats = st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=4)] * 4)


@given(quats, quats, quats)
def test_multiplication_associative(x, y, z):
    alg = QuaternionAlgebra(-2, -5)
    assert alg.mul(alg.mul(x, y), z) == alg.mul(x, alg.mul(y, z))


@given(quats, quats)
def test_norm_multiplicative_and_conj(x, y):
    alg = QuaternionAlgebra(-3, -7)
    xy = alg.mul(x, y)
    assert alg.nrd(xy) == alg.nrd(x) * alg.nrd(y)
    assert alg.conj(xy) == alg.mul(alg.conj(y), alg.conj(x))
    assert alg.mul(x, alg.conj(x)) == (alg.nrd(x), 0, 0, 0)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_maximal_order(p):
    alg = algebra_for_prime(p)
    O = maximal_order(alg)
    assert is_order(alg, O)
    assert O.contains_lattice(standard_order(alg))
    assert reduced_discriminant(alg, O) == p


@pytest.mark.parametrize("p,q", [(5, 13), (13, 5), (3, 7), (2, 3), (2, 11), (7, 13)])
def test_eichler_order(p, q):
    alg = algebra_for_prime(p)
    O = maximal_order(alg)
    E = eichler_order(alg, O, q)
    assert is_order(alg, E)
    assert O.contains_lattice(E)
    assert reduced_discriminant(alg, E) == p * q
    assert E.index_in(O) == q


def test_qlattice_canonical():
    a = QLattice.from_gens([quat(1, 0, 0, 0), quat(0, 1, 0, 0), quat(0, 0, 1, 0), quat(Fraction(1, 2), 0, 0, 1)])
    b = QLattice.from_gens([quat(1, 0, 0, 0), quat(0, 1, 0, 0), quat(0, 0, 1, 0), quat(Fraction(-1, 2), 0, 0, 1),
                            quat(1, 1, 0, 0)])
    assert a == b
    assert QLattice.from_json(a.to_json()) == a
