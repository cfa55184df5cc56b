"""Ideal classes of Eichler orders and Brandt matrices.

A BrandtModule for (p, q) lives in the definite quaternion algebra ramified
at p, on an Eichler order of level q. Its basis is a set of right ideal class
representatives I_1..I_h and

    B(n)[i][j] = #{x in I_i conj(I_j) : nrd(x) = n nrd(I_i) nrd(I_j)} / #O_l(I_j)^x

so that e_i B(n) = sum_j B(n)[i][j] e_j is the Hecke action on row vectors.
Row sums are sigma(n) for n prime to pq, and the degree-zero sublattice
{v : sum v_i = 0} is the cuspidal (character group) part.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from sympy import isprime, nextprime

from .linalg import IntMatrix, Lattice, kernel_lattice, solve_hnf
from .quaternion import (
    QLattice,
    QuaternionAlgebra,
    algebra_for_prime,
    eichler_order,
    lattice_conj,
    lattice_product,
    maximal_order,
    norm_gram,
)
from .shortvec import find_vector, theta_counts

log = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    pass


def eichler_mass(p: int, q: int) -> Fraction:
    """Sum over ideal classes of 1/#(unit group of the left order)."""
    return Fraction((p - 1) * (q + 1), 24)


@dataclass(frozen=True)
class RightIdeal:
    lattice: QLattice
    norm: int


@dataclass(frozen=True)
class IdealClassSet:
    representatives: tuple[RightIdeal, ...]
    weights: tuple[int, ...]  # w_i = #O_l(I_i)^x / 2
    grams: tuple[IntMatrix, ...]  # nrd(x)/nrd(I_i) on I_i

    def __len__(self):
        return len(self.representatives)

    def mass(self) -> Fraction:
        return sum((Fraction(1, 2 * w) for w in self.weights), Fraction(0))


def connecting_gram(alg: QuaternionAlgebra, I: RightIdeal, J: RightIdeal) -> list[list[int]]:
    """Gram matrix of nrd(x)/(N(I)N(J)) on the lattice I conj(J)."""
    L = lattice_product(alg, I.lattice, lattice_conj(J.lattice))
    return norm_gram(alg, L, I.norm * J.norm)


def is_equivalent(alg: QuaternionAlgebra, I: RightIdeal, J: RightIdeal) -> bool:
    """I and J are in the same right class iff I conj(J) has an element of norm N(I)N(J)."""
    return find_vector(connecting_gram(alg, I, J), 1) is not None


def unit_count(alg: QuaternionAlgebra, I: RightIdeal) -> int:
    """#O_l(I)^x, counted as norm-N(I)^2 elements of I conj(I)."""
    return theta_counts(connecting_gram(alg, I, I), 1)[1]


def neighbors(alg: QuaternionAlgebra, order: QLattice, I: RightIdeal, r: int) -> list[RightIdeal]:
    """The r + 1 right ideals J of norm r N(I) with r I < J < I."""
    el = I.lattice.elements()
    order_el = order.elements()
    rI = [tuple(r * c for c in x) for x in el]
    seen = {}
    for coeffs in itertools.product(range(r), repeat=4):
        if not any(coeffs):
            continue
        x = tuple(sum(c * e[t] for c, e in zip(coeffs, el)) for t in range(4))
        if (alg.nrd(x) / I.norm) % r:
            continue
        J = QLattice.from_gens([alg.mul(x, o) for o in order_el] + rI)
        if J not in seen:
            seen[J] = RightIdeal(J, I.norm * r)
    return list(seen.values())


def enumerate_classes(
    alg: QuaternionAlgebra,
    order: QLattice,
    p: int,
    q: int,
    max_ideals: int = 10_000,
) -> IdealClassSet:
    """Breadth-first r-neighbour search, stopped by the mass formula."""
    target = eichler_mass(p, q)
    r = 2
    while (p * q) % r == 0:
        r = nextprime(r)
    start = RightIdeal(order, 1)
    reps = [start]
    units = [unit_count(alg, start)]
    mass = Fraction(1, units[0])
    queue = deque([start])
    visited = 0
    while mass < target:
        if not queue or visited > max_ideals:
            raise BudgetExceeded(f"class search exhausted with mass {mass} < {target}")
        I = queue.popleft()
        for J in neighbors(alg, order, I, r):
            visited += 1
            if any(is_equivalent(alg, J, K) for K in reps):
                continue
            reps.append(J)
            units.append(unit_count(alg, J))
            mass += Fraction(1, units[-1])
            queue.append(J)
            if mass >= target:
                break
    if mass != target:
        raise AssertionError(f"mass overshoot: {mass} != {target}")
    grams = tuple(IntMatrix(norm_gram(alg, J.lattice, J.norm)) for J in reps)
    return IdealClassSet(tuple(reps), tuple(u // 2 for u in units), grams)


class BrandtModule:
    """Brandt module of the level-q Eichler order in the algebra ramified at p."""

    def __init__(self, p: int, q: int, classes: IdealClassSet | None = None, *,
                 algebra: QuaternionAlgebra | None = None, order: QLattice | None = None,
                 maximal: QLattice | None = None):
        if p == q or not isprime(p) or not isprime(q):
            raise ValueError("p and q must be distinct primes")
        self.p, self.q = p, q
        self.algebra = algebra or algebra_for_prime(p)
        self.maximal_order = maximal or maximal_order(self.algebra)
        self.order = order or eichler_order(self.algebra, self.maximal_order, q)
        self.classes = classes or enumerate_classes(self.algebra, self.order, p, q)
        self._theta: dict[tuple[int, int], list[int]] = {}
        self._hecke: dict[int, IntMatrix] = {}
        self._cusp: dict[int, IntMatrix] = {}
        self._grams: dict[tuple[int, int], list[list[int]]] = {}
        self.cuspidal_basis = self._cuspidal_lattice()

    @property
    def rank(self) -> int:
        return len(self.classes)

    @property
    def cuspidal_rank(self) -> int:
        return self.cuspidal_basis.rank

    @property
    def weights(self) -> tuple[int, ...]:
        return self.classes.weights

    def _gram(self, i: int, j: int):
        if (i, j) not in self._grams:
            reps = self.classes.representatives
            self._grams[(i, j)] = connecting_gram(self.algebra, reps[i], reps[j])
        return self._grams[(i, j)]

    def _counts(self, i: int, j: int, n: int) -> int:
        key = (min(i, j), max(i, j))  # conj swaps I_i conj(I_j) and I_j conj(I_i)
        cached = self._theta.get(key)
        if cached is None or len(cached) <= n:
            bound = max(n, 2 * len(cached) if cached else 20)
            self._theta[key] = theta_counts(self._gram(*key), bound)
        return self._theta[key][n]

    def brandt_matrix(self, n: int) -> IntMatrix:
        if n < 1:
            raise ValueError("n must be positive")
        if n not in self._hecke:
            h = self.rank
            rows = []
            for i in range(h):
                row = []
                for j in range(h):
                    c = self._counts(i, j, n)
                    u = 2 * self.weights[j]
                    if c % u:
                        raise AssertionError(f"B({n})[{i}][{j}] is not integral")
                    row.append(c // u)
                rows.append(row)
            self._hecke[n] = IntMatrix(rows)
        return self._hecke[n]

    def _cuspidal_lattice(self) -> Lattice:
        return kernel_lattice(IntMatrix([[1]] * self.rank))

    def cuspidal_hecke(self, n: int) -> IntMatrix:
        """B(n) restricted to the degree-zero lattice, in its HNF basis (row action)."""
        if n not in self._cusp:
            B = self.brandt_matrix(n)
            K = self.cuspidal_basis.basis
            rows = []
            for v in K.entries:
                c = solve_hnf(K, B.vecmul(v))
                if c is None:
                    raise AssertionError("degree-zero lattice is not Hecke stable")
                rows.append(c)
            self._cusp[n] = IntMatrix(rows, cols=K.rows)
        return self._cusp[n]

    def hecke_family(self, nmax: int) -> dict[int, IntMatrix]:
        return {n: self.cuspidal_hecke(n) for n in range(1, nmax + 1)}
