import json

import pytest
import sympy
from hypothesis import given, strategies as st

from ogglab.linalg import (
    IntMatrix,
    Lattice,
    NonSquare,
    charpoly,
    det,
    hnf,
    hnf_with_transform,
    kernel_lattice,
    pivots,
    saturation,
    snf,
    solve_hnf,
)

import level65


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5), lo=-9, hi=9):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(
            st.lists(st.integers(lo, hi), min_size=rc[1], max_size=rc[1]),
            min_size=rc[0], max_size=rc[0],
        )
    )


def square(n_lo=1, n_hi=5, lo=-9, hi=9):
    return st.integers(n_lo, n_hi).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def cofactor_det(m):
    if not m:
        return 1
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in m[1:]])
               for j in range(len(m)) if m[0][j])


def in_span(v, h: IntMatrix) -> bool:
    return solve_hnf(h, v) is not None if h.rows else not any(v)


# --- examples ---------------------------------------------------------------


def test_hnf_examples():
    assert hnf([[2, 4], [6, 8]]) == IntMatrix([[2, 0], [0, 4]])
    assert hnf(IntMatrix.identity(3)) == IntMatrix.identity(3)
    z = hnf([[0, 0], [0, 0]])
    assert z.rows == 0 and z.cols == 2


def test_hnf_example_index_preserved():
    assert abs(det([[2, 4], [6, 8]])) == 8 == abs(det(hnf([[2, 4], [6, 8]])))


def test_snf_examples():
    assert snf([[2, 0], [0, 4]])[0] == [2, 4]
    d, L, R = snf([[1, 1], [1, 1]])
    assert d == [1, 0]
    assert L @ IntMatrix([[1, 1], [1, 1]]) @ R == IntMatrix.diagonal([1, 0])
    assert snf(IntMatrix.identity(5))[0] == [1] * 5


def test_det_examples():
    assert det(level65.A) == 1
    assert det(level65.A_PRIME) == -1
    assert det(IntMatrix.identity(5)) == 1
    with pytest.raises(NonSquare):
        det([[1, 2, 3], [4, 5, 6]])


def test_kernel_examples():
    assert kernel_lattice([[1], [1]]).basis == IntMatrix([[1, -1]])
    assert kernel_lattice(IntMatrix.identity(3)).rank == 0
    # saturated: [3, -2], never [6, -4]
    assert kernel_lattice([[2, 4], [3, 6]]).basis == IntMatrix([[3, -2]])


def test_charpoly_examples():
    x = sympy.symbols("x")
    expected = sympy.Poly(sympy.Matrix(level65.S[5]).charpoly(x).as_expr(), x).all_coeffs()[::-1]
    assert charpoly(level65.S[5]) == [int(c) for c in expected]
    assert charpoly(IntMatrix.identity(2)) == [1, -2, 1]
    assert charpoly([[0, 1], [1, 0]]) == [-1, 0, 1]
    with pytest.raises(NonSquare):
        charpoly([[1, 2]])


def test_matrix_json_roundtrip():
    big = 2 ** 80 + 1
    m = IntMatrix([[big, -3], [0, 7]])
    obj = json.loads(m.dumps())
    assert obj["entries"][0][0] == str(big)
    assert IntMatrix.from_json(obj) == m


def test_big_entries_do_not_overflow():
    m = IntMatrix([[2 ** 70, 1], [1, 2 ** 70]])
    assert det(m) == 2 ** 140 - 1


# --- properties -------------------------------------------------------------


@given(matrices())
def test_hnf_idempotent(m):
    h = hnf(m)
    assert hnf(h) == h


@given(matrices())
def test_hnf_shape(m):
    h = hnf(m)
    piv = pivots(h)
    assert piv == sorted(piv) and len(set(piv)) == len(piv)
    for i, j in enumerate(piv):
        assert h[i, j] > 0
        for k in range(i):
            assert 0 <= h[k, j] < h[i, j]


@given(matrices())
def test_hnf_preserves_row_span(m):
    h = hnf(m)
    assert all(in_span(r, h) for r in m)
    M = IntMatrix(m)
    if h.rows:
        # every HNF row is an integer combination of the input rows
        H, U = hnf_with_transform(M)
        assert U @ M == H
        assert abs(det(U)) == 1


@given(square())
def test_det_matches_hnf_pivots(m):
    h = hnf(m)
    d = det(m)
    if h.rows == len(m):
        prod = 1
        for i in range(h.rows):
            prod *= h[i, i]
        assert abs(d) == prod
    else:
        assert d == 0


@given(square(4, 4))
def test_det_matches_cofactor_4x4(m):
    assert det(m) == cofactor_det(m)


@given(square())
def test_det_matches_sympy(m):
    assert det(m) == sympy.Matrix(m).det()


@given(matrices())
def test_snf_reconstructs(m):
    d, L, R = snf(m)
    M = IntMatrix(m)
    D = IntMatrix([[d[i] if i == j and i < len(d) else 0 for j in range(M.cols)] for i in range(M.rows)])
    assert L @ M @ R == D
    assert abs(det(L)) == 1 and abs(det(R)) == 1
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert d == nz + [0] * (len(d) - len(nz))
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(matrices(rows=st.integers(1, 5), cols=st.integers(1, 3)))
def test_kernel_is_saturated_and_correct(m):
    K = kernel_lattice(m)
    M = IntMatrix(m)
    for v in K.basis:
        assert not any(M.vecmul(v))
    assert K.rank == M.rows - sympy.Matrix(m).rank()
    assert K.is_saturated()


@given(matrices())
def test_saturation_contains_and_is_saturated(m):
    L = saturation(m)
    assert all(r in L for r in m)
    assert L.is_saturated()


@given(square(1, 4))
def test_charpoly_matches_sympy(m):
    x = sympy.symbols("x")
    expected = sympy.Poly(sympy.Matrix(m).charpoly(x).as_expr(), x).all_coeffs()[::-1]
    assert charpoly(m) == [int(c) for c in expected]


@given(matrices(), matrices())
def test_lattice_equality_is_hnf_equality(a, b):
    if len(a[0]) != len(b[0]):
        return
    La, Lb = Lattice.from_generators(a), Lattice.from_generators(b)
    same = all(r in Lb for r in a) and all(r in La for r in b)
    assert same == (La.basis == Lb.basis)
