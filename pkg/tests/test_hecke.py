import pytest
from sympy import factorint

from ogglab.brandt import BrandtModule
from ogglab.hecke import (
    NonCommuting,
    build_hecke_algebra,
    discriminant,
    eisenstein_quotient,
    generation_check,
    sturm_bound,
)
from ogglab.linalg import IntMatrix


@pytest.fixture(scope="module")
def alg65(m65):
    b = sturm_bound(5, 13)
    return build_hecke_algebra(m65.hecke_family(b), b, (5, 13))


def level_algebra(p, q):
    B = BrandtModule(p, q)
    b = sturm_bound(p, q)
    return build_hecke_algebra(B.hecke_family(b), b, (p, q))


def test_sturm_bound():
    assert sturm_bound(5, 13) == 14
    assert sturm_bound(2, 3) == 2
    assert sturm_bound(7, 13) == 2 * 8 * 14 // 12 + 1  # 224/12 is not an integer


def test_rank_and_faithfulness(alg65):
    assert alg65.rank == 5
    # injective on the basis: the basis matrices are linearly independent as matrices
    assert build_hecke_algebra({i: m for i, m in enumerate(alg65.basis, 1)}).rank == 5


def test_identity_algebra():
    alg = build_hecke_algebra({1: IntMatrix.identity(5)})
    assert alg.rank == 1
    assert discriminant(alg) == 5


def test_noncommuting_rejected():
    with pytest.raises(NonCommuting):
        build_hecke_algebra({1: IntMatrix([[1, 1], [0, 1]]), 2: IntMatrix([[1, 0], [1, 1]])})


def test_generation_65(alg65):
    assert generation_check(alg65, [1, 2, 3, 5, 11]) == (True, 1)
    assert generation_check(alg65, [1]) == (False, None)
    assert generation_check(alg65, [1, 2, 3, 5, 7, 11, 13]) == (True, 1)
    assert alg65.span([1, 2, 3, 5, 11]).basis == alg65.lattice.basis


def test_span_stable_to_twice_sturm(m65, alg65):
    big = build_hecke_algebra(m65.hecke_family(28), 28, (5, 13))
    assert big.lattice.basis == alg65.lattice.basis


def test_discriminant_65(alg65):
    assert discriminant(alg65) == 6144


def test_eisenstein_65(alg65):
    E = eisenstein_quotient(alg65, 5, 13, "E")
    assert E.invariant_factors == (84,)
    # away from 2 and 3 only the 7-part survives, matching 48, 72, 56
    assert E.away_from([2, 3]) == [7]
    m = eisenstein_quotient(alg65, 5, 13, "m-+", 7)
    assert m.invariant_factors == (7,) and m.is_residue_field
    assert eisenstein_quotient(alg65, 5, 13, "m+-", 7).invariant_factors == ()
    assert eisenstein_quotient(alg65, 5, 13, "m-+", 11).invariant_factors == ()


def test_eisenstein_bad_variant(alg65):
    with pytest.raises(ValueError):
        eisenstein_quotient(alg65, 5, 13, "m-+")
    with pytest.raises(ValueError):
        eisenstein_quotient(alg65, 5, 13, "bogus")


def _big_primary(n):
    return sorted(l ** e for l, e in factorint(n).items() if l >= 5)


@pytest.mark.parametrize("p,q", [(5, 13), (3, 7), (2, 13), (7, 13)])
def test_eisenstein_matches_cuspidal_orders(p, q):
    alg = level_algebra(p, q)
    E = eisenstein_quotient(alg, p, q, "E")
    got = sorted(x for d in E.invariant_factors for x in _big_primary(d))
    want = sorted(x for n in ((p - 1) * (q - 1), (p + 1) * (q - 1), (p - 1) * (q + 1))
                  for x in _big_primary(n))
    assert got == want


def test_2_11_has_no_cusp_forms():
    B = BrandtModule(2, 11)
    assert B.cuspidal_rank == 0
