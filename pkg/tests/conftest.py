import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def m65():
    from ogglab.brandt import BrandtModule

    return BrandtModule(5, 13)


@pytest.fixture(scope="session")
def m65_dual_side():
    from ogglab.brandt import BrandtModule

    return BrandtModule(13, 5)


@pytest.fixture(scope="session")
def m21():
    from ogglab.brandt import BrandtModule

    return BrandtModule(3, 7)


@pytest.fixture(scope="session")
def ref65():
    """Reference families at 65 as IntMatrix dicts, with M_13 rebuilt from A, A'."""
    from fractions import Fraction

    import level65
    import sympy
    from ogglab.linalg import IntMatrix

    S = {n: IntMatrix(m) for n, m in level65.S.items()}
    A, Ap = sympy.Matrix(level65.A), sympy.Matrix(level65.A_PRIME)
    # both modules are free on e_1, so S'_n = A'^-1 A S_n A^-1 A'
    conj = Ap.inv() * A
    Sp = {}
    for n, m in level65.S.items():
        M = conj * sympy.Matrix(m) * conj.inv()
        assert all(Fraction(int(x.p), int(x.q)).denominator == 1 for x in M)
        Sp[n] = IntMatrix([[int(x) for x in M.row(i)] for i in range(5)])
    return S, Sp
