"""Short vector enumeration for positive definite integral quadratic forms.

Forms are given by an even symmetric Gram matrix ``G`` and evaluated as
``Q(x) = x G x^T / 2``. The search is Fincke-Pohst over the exact rational
LDL^T decomposition, so no floating point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterator, Sequence


def _ldl(gram: Sequence[Sequence[int]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2."""
    n = len(gram)
    q = [[Fraction(gram[i][j], 2) for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("quadratic form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    d = [q[i][i] for i in range(n)]
    mu = [[q[i][j] if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    return d, mu


def _interval(center: Fraction, radius_sq: Fraction) -> range:
    """Integers x with (x - center)^2 <= radius_sq."""
    if radius_sq < 0:
        return range(0)
    t = isqrt(radius_sq.numerator // radius_sq.denominator) + 1
    lo = -((-(center - t).numerator) // (center - t).denominator)
    hi = (center + t).numerator // (center + t).denominator
    while lo <= hi and (lo - center) ** 2 > radius_sq:
        lo += 1
    while hi >= lo and (hi - center) ** 2 > radius_sq:
        hi -= 1
    return range(lo, hi + 1)


def qform(gram: Sequence[Sequence[int]], x: Sequence[int]) -> int:
    n = len(gram)
    s = sum(gram[i][j] * x[i] * x[j] for i in range(n) for j in range(n))
    assert s % 2 == 0, "Gram matrix must be even"
    return s // 2


def lll_gram(gram: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)):
    """Exact LLL on a Gram matrix. Returns (G', U) with G' = U G U^T, U unimodular."""
    n = len(gram)
    G = [list(r) for r in gram]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(i, j):
        G[i], G[j] = G[j], G[i]
        for r in G:
            r[i], r[j] = r[j], r[i]
        U[i], U[j] = U[j], U[i]

    def reduce(k, j, c):  # b_k -= c b_j
        for t in range(n):
            G[k][t] -= c * G[j][t]
        for t in range(n):
            G[t][k] -= c * G[t][j]
        U[k] = [a - c * b for a, b in zip(U[k], U[j])]

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        B = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                mu[i][j] = (G[i][j] - sum(mu[j][t] * mu[i][t] * B[t] for t in range(j))) / B[j]
            B[i] = G[i][i] - sum(mu[i][t] ** 2 * B[t] for t in range(i))
        return mu, B

    k = 1
    while k < n:
        mu, B = gso()
        for j in range(k - 1, -1, -1):
            c = round(mu[k][j])
            if c:
                reduce(k, j, c)
                mu, B = gso()
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            swap(k, k - 1)
            k = max(k - 1, 1)
    return G, U


def _enumerate(gram: Sequence[Sequence[int]], bound: int, with_vectors: bool):
    """Fincke-Pohst walk; the innermost coordinate is a plain integer quadratic."""
    n = len(gram)
    if n == 0:
        return
    gram, U = lll_gram(gram)
    d, mu = _ldl(gram)
    x = [0] * n
    a0 = gram[0][0] // 2

    def leaf(remaining: Fraction):
        center = -sum((mu[0][j] * x[j] for j in range(1, n)), Fraction(0))
        b = sum(gram[0][j] * x[j] for j in range(1, n))
        c = sum(gram[i][j] * x[i] * x[j] for i in range(1, n) for j in range(1, n)) // 2
        tail_zero = not any(x[1:])
        for x0 in _interval(center, remaining / d[0]):
            if x0 == 0 and tail_zero:
                continue
            v = a0 * x0 * x0 + b * x0 + c
            if with_vectors:
                x[0] = x0
                yield tuple(sum(x[i] * U[i][t] for i in range(n)) for t in range(n)), v
            else:
                yield v
        x[0] = 0

    def rec(i: int, remaining: Fraction):
        if i == 0:
            yield from leaf(remaining)
            return
        center = -sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        for xi in _interval(center, remaining / d[i]):
            x[i] = xi
            yield from rec(i - 1, remaining - d[i] * (xi - center) ** 2)
        x[i] = 0

    yield from rec(n - 1, Fraction(bound))


def short_vectors(gram: Sequence[Sequence[int]], bound: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(x, Q(x))`` for every nonzero x with Q(x) <= bound.

    Both x and -x are produced. Order is deterministic.
    """
    return _enumerate(gram, bound, True)


def theta_counts(gram: Sequence[Sequence[int]], bound: int) -> list[int]:
    """counts[k] = #{x : Q(x) = k} for 0 <= k <= bound (counts[0] = 1)."""
    counts = [0] * (bound + 1)
    counts[0] = 1
    for v in _enumerate(gram, bound, False):
        counts[v] += 1
    return counts


def find_vector(gram: Sequence[Sequence[int]], target: int) -> tuple[int, ...] | None:
    """First vector with Q(x) == target, or None."""
    for x, v in short_vectors(gram, target):
        if v == target:
            return x
    return None
