"""Dense univariate polynomials over Q (coefficient lists, low degree first)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = list  # list[Fraction]


def _strip(f: Sequence) -> Poly:
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Sequence) -> int:
    return len(_strip(f)) - 1


def evaluate(f: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def derivative(f: Sequence) -> Poly:
    return _strip([i * c for i, c in enumerate(f)][1:])


def divmod_poly(f: Sequence, g: Sequence) -> tuple[Poly, Poly]:
    f, g = _strip(f), _strip(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    rem = list(f)
    while len(rem) >= len(g) and rem:
        shift = len(rem) - len(g)
        c = rem[-1] / g[-1]
        quo[shift] = c
        for i, gc in enumerate(g):
            rem[shift + i] -= c * gc
        rem = _strip(rem)
    return _strip(quo), rem


def gcd_poly(f: Sequence, g: Sequence) -> Poly:
    f, g = _strip(f), _strip(g)
    while g:
        f, g = g, divmod_poly(f, g)[1]
    return [c / f[-1] for c in f] if f else f


def squarefree_part(f: Sequence) -> Poly:
    f = _strip(f)
    g = gcd_poly(f, derivative(f))
    return divmod_poly(f, g)[0] if degree(g) > 0 else f


def sturm_chain(f: Sequence) -> list[Poly]:
    chain = [_strip(f), derivative(f)]
    while chain[-1]:
        r = divmod_poly(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_above(f: Sequence, a) -> int:
    """Number of distinct real roots of f in (a, +inf)."""
    f = squarefree_part(f)
    if degree(f) <= 0:
        return 0
    chain = sturm_chain(f)
    at_a = _sign_changes([evaluate(g, a) for g in chain])
    at_inf = _sign_changes([g[-1] for g in chain])
    return at_a - at_inf


def count_real_roots(f: Sequence) -> int:
    f = squarefree_part(f)
    if degree(f) <= 0:
        return 0
    chain = sturm_chain(f)
    at_minus = _sign_changes([g[-1] * (-1) ** (len(g) - 1) for g in chain])
    at_plus = _sign_changes([g[-1] for g in chain])
    return at_minus - at_plus


def squares_of_roots(f: Sequence) -> Poly:
    """g with g(x^2) = +-f(x) f(-x): the roots of g are the squares of the roots of f."""
    f = _strip(f)
    fneg = [c * (-1) ** i for i, c in enumerate(f)]
    prod = [Fraction(0)] * (2 * len(f) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(fneg):
            prod[i + j] += a * b
    return _strip(prod[0::2])


def roots_bounded_by(f: Sequence, bound_sq) -> bool:
    """Every complex root a of f is real with a^2 <= bound_sq (exact)."""
    f = _strip(f)
    if count_real_roots(f) != degree(squarefree_part(f)):
        return False
    g = squares_of_roots(f)
    return count_roots_above(g, Fraction(bound_sq)) == 0
