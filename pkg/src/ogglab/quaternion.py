"""Definite quaternion algebras over Q, their lattices and orders.

Elements are 4-tuples of Fractions in the basis 1, i, j, k with
i^2 = a, j^2 = b, k = ij = -ji.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Sequence

from sympy import factorint, isprime

from .linalg import IntMatrix, det, hnf

Quat = tuple  # (Fraction, Fraction, Fraction, Fraction)

ONE: Quat = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))


# ---------------------------------------------------------------------------
# Hilbert symbols


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _split_val(x: int, p: int) -> tuple[int, int]:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v, x


def hilbert_symbol(a: int, b: int, p) -> int:
    """Hilbert symbol (a, b)_p for a prime p, or p = 'inf'."""
    if p == "inf":
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split_val(a, p)
    beta, v = _split_val(b, p)
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2
        omega = lambda t: ((t * t - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    e = alpha * beta * ((p - 1) // 2)
    s = (-1) ** (e % 2)
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


# ---------------------------------------------------------------------------
# The algebra


@dataclass(frozen=True)
class QuaternionAlgebra:
    a: int
    b: int

    def __post_init__(self):
        if not (self.a < 0 and self.b < 0):
            raise ValueError("only definite algebras (a, b < 0) are supported")

    def mul(self, x: Quat, y: Quat) -> Quat:
        a, b = self.a, self.b
        x0, x1, x2, x3 = x
        y0, y1, y2, y3 = y
        return (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        )

    @staticmethod
    def conj(x: Quat) -> Quat:
        return (x[0], -x[1], -x[2], -x[3])

    def nrd(self, x: Quat) -> Fraction:
        a, b = self.a, self.b
        return x[0] ** 2 - a * x[1] ** 2 - b * x[2] ** 2 + a * b * x[3] ** 2

    @staticmethod
    def trd(x: Quat) -> Fraction:
        return 2 * x[0]

    def ramified_primes(self) -> set[int]:
        """Finite primes at which the algebra is ramified, by Hilbert symbols."""
        candidates = {2} | set(factorint(abs(self.a))) | set(factorint(abs(self.b)))
        return {p for p in candidates if hilbert_symbol(self.a, self.b, p) == -1}

    def discriminant(self) -> int:
        return reduce(lambda s, t: s * t, self.ramified_primes(), 1)


def quat(*coords) -> Quat:
    return tuple(Fraction(c) for c in coords)


def algebra_for_prime(p: int) -> QuaternionAlgebra:
    """Definite algebra ramified exactly at {p, inf}, verified by Hilbert symbols."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        alg = QuaternionAlgebra(-1, -1)
    elif p % 4 == 3:
        alg = QuaternionAlgebra(-1, -p)
    elif p % 8 == 5:
        alg = QuaternionAlgebra(-2, -p)
    else:
        r = 3
        while not (isprime(r) and r % 4 == 3 and legendre(r, p) == -1):
            r += 1
        alg = QuaternionAlgebra(-r, -p)
    if alg.ramified_primes() != {p}:
        raise AssertionError(f"algebra {alg} does not ramify exactly at {p}")
    return alg


# ---------------------------------------------------------------------------
# Full-rank lattices inside the algebra


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class QLattice:
    """Z-lattice of rank 4: rows of ``basis`` divided by ``denom``.

    The integer basis is kept in HNF with gcd(entries, denom) = 1, so two
    QLattice values are equal exactly when the lattices are equal.
    """

    basis: IntMatrix
    denom: int

    @classmethod
    def from_gens(cls, gens: Iterable[Quat]) -> QLattice:
        gens = list(gens)
        d = reduce(_lcm, (c.denominator for g in gens for c in g), 1)
        rows = [[int(c * d) for c in g] for g in gens]
        h = hnf(rows)
        if h.rows != 4:
            raise ValueError("generators do not span a full-rank lattice")
        g = reduce(gcd, h.flatten(), d)
        if g > 1:
            h = IntMatrix([[x // g for x in r] for r in h.entries])
            d //= g
        return cls(h, d)

    def elements(self) -> list[Quat]:
        return [tuple(Fraction(x, self.denom) for x in r) for r in self.basis.entries]

    def contains(self, x: Quat) -> bool:
        from .linalg import solve_hnf

        v = [c * self.denom for c in x]
        if any(c.denominator != 1 for c in v):
            return False
        return solve_hnf(self.basis, [int(c) for c in v]) is not None

    def contains_lattice(self, other: QLattice) -> bool:
        return all(self.contains(x) for x in other.elements())

    def index_in(self, other: QLattice) -> Fraction:
        """[other : self] as a rational number (volume ratio)."""
        return Fraction(abs(det(self.basis)) * other.denom ** 4, abs(det(other.basis)) * self.denom ** 4)

    def scale(self, c) -> QLattice:
        c = Fraction(c)
        return QLattice.from_gens(tuple(c * t for t in x) for x in self.elements())

    def to_json(self) -> dict:
        return {"denominator": str(self.denom), "basis": [[str(x) for x in r] for r in self.basis.entries]}

    @classmethod
    def from_json(cls, obj) -> QLattice:
        return cls(IntMatrix([[int(x) for x in r] for r in obj["basis"]]), int(obj["denominator"]))


def lattice_product(alg: QuaternionAlgebra, L: QLattice, M: QLattice) -> QLattice:
    return QLattice.from_gens(alg.mul(x, y) for x in L.elements() for y in M.elements())


def lattice_conj(L: QLattice) -> QLattice:
    return QLattice.from_gens(QuaternionAlgebra.conj(x) for x in L.elements())


def trace_gram(alg: QuaternionAlgebra, elems: Sequence[Quat]) -> list[list[Fraction]]:
    return [[alg.trd(alg.mul(x, y)) for y in elems] for x in elems]


def norm_gram(alg: QuaternionAlgebra, L: QLattice, scale=1) -> list[list[int]]:
    """Even Gram matrix of the form nrd(x)/scale on L (must be integral)."""
    el = L.elements()
    g = [[alg.trd(alg.mul(x, alg.conj(y))) / scale for y in el] for x in el]
    for i, row in enumerate(g):
        for j, v in enumerate(row):
            if v.denominator != 1 or (i == j and v.numerator % 2):
                raise ValueError("nrd/scale is not integral on this lattice")
    return [[int(v) for v in row] for row in g]


def reduced_discriminant(alg: QuaternionAlgebra, L: QLattice) -> Fraction:
    d = abs(_frac_det(trace_gram(alg, L.elements())))
    num, den = isqrt(d.numerator), isqrt(d.denominator)
    if num * num != d.numerator or den * den != d.denominator:
        raise ValueError("trace discriminant is not a square")
    return Fraction(num, den)


def _frac_det(m: list[list[Fraction]]) -> Fraction:
    d = reduce(_lcm, (x.denominator for r in m for x in r), 1)
    n = len(m)
    return Fraction(det([[int(x * d) for x in r] for r in m]), d ** n)


# ---------------------------------------------------------------------------
# Orders


def is_order(alg: QuaternionAlgebra, L: QLattice) -> bool:
    if not L.contains(ONE):
        return False
    el = L.elements()
    return all(L.contains(alg.mul(x, y)) for x in el for y in el)


def _ring_closure(alg: QuaternionAlgebra, gens: list[Quat], max_steps: int = 12) -> QLattice | None:
    """Smallest order containing ``gens``, or None when the gens are not integral."""
    L = QLattice.from_gens(gens)
    for _ in range(max_steps):
        el = L.elements()
        for x in el:
            for y in el:
                if alg.trd(alg.mul(x, y)).denominator != 1:
                    return None
            if alg.nrd(x).denominator != 1:
                return None
        new = QLattice.from_gens(el + [alg.mul(x, y) for x in el for y in el])
        if new == L:
            return L
        L = new
    return None


def standard_order(alg: QuaternionAlgebra) -> QLattice:
    return QLattice.from_gens(
        [quat(1, 0, 0, 0), quat(0, 1, 0, 0), quat(0, 0, 1, 0), quat(0, 0, 0, 1)]
    )


def maximal_order(alg: QuaternionAlgebra) -> QLattice:
    """A maximal order, reached by enlarging Z<1,i,j,k> one prime step at a time."""
    target = alg.discriminant()
    O = standard_order(alg)
    while True:
        disc = reduced_discriminant(alg, O)
        if disc == target:
            return O
        extra = int(disc) // target
        for ell in sorted(factorint(extra)):
            bigger = _enlarge_at(alg, O, ell)
            if bigger is not None:
                O = bigger
                break
        else:
            raise RuntimeError(f"could not enlarge order with discriminant {disc}")


def _enlarge_at(alg: QuaternionAlgebra, O: QLattice, ell: int) -> QLattice | None:
    el = O.elements()
    for coeffs in itertools.product(range(ell), repeat=4):
        if not any(coeffs):
            continue
        x = tuple(sum(Fraction(c, ell) * e[t] for c, e in zip(coeffs, el)) for t in range(4))
        if alg.trd(x).denominator != 1 or alg.nrd(x).denominator != 1:
            continue
        R = _ring_closure(alg, el + [x])
        if R is not None and R != O:
            return R
    return None


def eichler_order(alg: QuaternionAlgebra, O: QLattice, q: int) -> QLattice:
    """Eichler order of level q inside the maximal order O.

    With x in O of norm divisible by q and x not in qO, the image of x mod q
    is a rank-one matrix under any splitting O/qO = M_2(F_q), and
    Z + xO + qO is the preimage of the stabiliser of its image line.
    """
    el = O.elements()
    x = None
    for bound in itertools.count(1):
        for coeffs in itertools.product(range(-bound, bound + 1), repeat=4):
            if max(map(abs, coeffs)) != bound or all(c % q == 0 for c in coeffs):
                continue
            cand = tuple(sum(c * e[t] for c, e in zip(coeffs, el)) for t in range(4))
            if alg.nrd(cand) % q == 0:
                x = cand
                break
        if x is not None:
            break
    gens = [ONE] + [alg.mul(x, e) for e in el] + [tuple(q * c for c in e) for e in el]
    E = QLattice.from_gens(gens)
    if not is_order(alg, E):
        raise AssertionError("Eichler order construction failed to close under multiplication")
    if reduced_discriminant(alg, E) != alg.discriminant() * q:
        raise AssertionError("Eichler order has the wrong discriminant")
    return E


def left_order(alg: QuaternionAlgebra, I: QLattice, norm: int) -> QLattice:
    """O_l(I) = I * conj(I) / nrd(I) for an invertible right ideal."""
    return lattice_product(alg, I, lattice_conj(I)).scale(Fraction(1, norm))
