"""Elliptic curves over Q reduced mod p: point counts, group structure and
the scalar-Frobenius test on E[l].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from sympy import Poly, factor_list, isprime, symbols

from .quaternion import legendre

Point = tuple[int, int] | None  # None is the point at infinity

CITED_FACTS = (
    "dim J^{pq}[m] = 4",
    "dim J_0(pq)^new[m] = 2",
)


class BadReduction(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError("singular curve (discriminant 0)")

    @classmethod
    def from_list(cls, coeffs) -> WeierstrassCurve:
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) != 5:
            raise ValueError("expected [a1, a2, a3, a4, a6]")
        return cls(*coeffs)

    def to_list(self) -> list[int]:
        return [self.a1, self.a2, self.a3, self.a4, self.a6]

    @property
    def b2(self) -> int:
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self) -> int:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> int:
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self) -> int:
        a1, a2, a3, a4, a6 = self.to_list()
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def on_curve(self, P: Point, p: int) -> bool:
        if P is None:
            return True
        x, y = P
        a1, a2, a3, a4, a6 = self.to_list()
        return (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % p == 0


def _check_good(E: WeierstrassCurve, p: int) -> None:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if E.discriminant % p == 0:
        raise BadReduction(f"{p} divides the discriminant {E.discriminant}")


def points(E: WeierstrassCurve, p: int) -> list[Point]:
    """All points of E(F_p), the point at infinity first."""
    _check_good(E, p)
    return [None] + [(x, y) for x in range(p) for y in range(p) if E.on_curve((x, y), p)]


def reduce_and_count(E: WeierstrassCurve, p: int) -> tuple[int, int]:
    """(#E(F_p), a_p) with a_p = p + 1 - #E(F_p)."""
    _check_good(E, p)
    if p == 2:
        n = len(points(E, p))
    else:
        # complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        b2, b4, b6 = E.b2, E.b4, E.b6
        n = 1 + sum(1 + legendre(4 * x ** 3 + b2 * x * x + 2 * b4 * x + b6, p) for x in range(p))
    return n, p + 1 - n


def negate(E: WeierstrassCurve, P: Point, p: int) -> Point:
    if P is None:
        return None
    x, y = P
    return x, (-y - E.a1 * x - E.a3) % p


def add(E: WeierstrassCurve, P: Point, Q: Point, p: int) -> Point:
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, _ = E.to_list()
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2 + a1 * x2 + a3) % p == 0:
        return None
    if x1 == x2:
        num = 3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1
        den = 2 * y1 + a1 * x1 + a3
    else:
        num, den = y2 - y1, x2 - x1
    lam = num * pow(den, -1, p) % p
    nu = (y1 - lam * x1) % p
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
    y3 = (-(lam + a1) * x3 - nu - a3) % p
    return x3, y3


def multiply(E: WeierstrassCurve, n: int, P: Point, p: int) -> Point:
    if n < 0:
        return multiply(E, -n, negate(E, P, p), p)
    out: Point = None
    while n:
        if n & 1:
            out = add(E, out, P, p)
        P = add(E, P, P, p)
        n >>= 1
    return out


def torsion_count(E: WeierstrassCurve, p: int, n: int) -> int:
    """#E(F_p)[n]."""
    return sum(1 for P in points(E, p) if multiply(E, n, P, p) is None)


def _factor(n: int) -> dict[int, int]:
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def group_structure(E: WeierstrassCurve, p: int) -> tuple[int, int]:
    """(d1, d2) with E(F_p) = Z/d1 x Z/d2 and d1 | d2."""
    n, _ = reduce_and_count(E, p)
    d1 = 1
    for ell, e in _factor(n).items():
        if e < 2:
            continue
        # the l-part is Z/l^a x Z/l^b with a <= b; a is the largest k with #E[l^k] = l^2k
        k = 0
        while 2 * (k + 1) <= e and torsion_count(E, p, ell ** (k + 1)) == ell ** (2 * (k + 1)):
            k += 1
        d1 *= ell ** k
    return d1, n // d1


def least_nonresidue(p: int) -> int:
    d = 2
    while legendre(d, p) != -1:
        d += 1
    return d


def twist(E: WeierstrassCurve, p: int, d: int | None = None) -> WeierstrassCurve:
    """Quadratic twist over F_p (odd p) by d, the least nonresidue by default.

    E is first put in the form y^2 = x^3 + b2 x^2 + 8 b4 x + 16 b6, which is
    F_p-isomorphic to E for odd p; coefficients are returned reduced mod p.
    """
    if p == 2:
        raise ValueError("twists are only built for odd p")
    _check_good(E, p)
    d = d if d is not None else least_nonresidue(p)
    return WeierstrassCurve(0, d * E.b2 % p, 0, 8 * d * d * E.b4 % p, 16 * d ** 3 * E.b6 % p)


def scalar_frobenius(E: WeierstrassCurve, p: int, ell: int) -> tuple[bool, bool]:
    """(Frob_p = +1 on E[l], Frob_p = -1 on E[l])."""
    if p % ell == 0:
        raise ValueError("need l != p")
    _check_good(E, p)
    # E[l] inside E(F_p) forces mu_l inside F_p by the Weil pairing
    if (p - 1) % ell:
        return False, False
    plus = torsion_count(E, p, ell) == ell * ell
    minus = torsion_count(twist(E, p), p, ell) == ell * ell
    return plus, minus


def newness_congruence(trace: int, p: int, ell: int) -> bool:
    return (trace - (p + 1)) % ell == 0 or (trace + (p + 1)) % ell == 0


def division_polynomial_3(E: WeierstrassCurve) -> list[int]:
    """psi_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8, low degree first."""
    return [E.b8, 3 * E.b6, 3 * E.b4, E.b2, 3]


def mod3_irreducible_sufficient(E: WeierstrassCurve) -> bool:
    """True proves E has no rational 3-isogeny, hence E[3] is irreducible.

    The kernel of a rational 3-isogeny is cut out by a rational root or a
    rational quadratic factor of psi_3; absent both, there is none. False
    only means the check is inconclusive.
    """
    x = symbols("x")
    f = Poly(list(reversed(division_polynomial_3(E))), x)
    _, factors = factor_list(f)
    return all(g.degree() > 2 for g, _ in factors)


@dataclass(frozen=True)
class FrobeniusReport:
    p: int
    ell: int
    point_count: int
    trace: int
    group_structure: tuple[int, int]
    scalar_plus: bool
    scalar_minus: bool
    newness_congruence: bool
    irreducible: bool | None  # None: not known for this l
    irreducible_source: str
    candidate: bool

    def hypotheses(self) -> list[str]:
        out = [
            "the residual representation on E[l] comes from a newform of level q",
            "multiplicity-one and level-raising inputs (cited, not computed)",
        ]
        if self.irreducible_source == "asserted":
            out.append(f"E[{self.ell}] is irreducible (asserted by the caller)")
        return out

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "ell": self.ell,
            "pointCount": self.point_count,
            "traceAp": self.trace,
            "groupStructure": list(self.group_structure),
            "scalarPlus": self.scalar_plus,
            "scalarMinus": self.scalar_minus,
            "newnessCongruence": self.newness_congruence,
            "irreducible": self.irreducible,
            "irreducibleSource": self.irreducible_source,
            "COUNTEREXAMPLE-CANDIDATE": self.candidate,
            "citedFacts": list(CITED_FACTS) if self.candidate else [],
            "unprovedHypotheses": self.hypotheses() if self.candidate else [],
        }

    def text(self) -> str:
        d1, d2 = self.group_structure
        lines = [
            f"E(F_{self.p}) has {self.point_count} points, a_p = {self.trace}, structure Z/{d1} x Z/{d2}",
            f"Frob_{self.p} on E[{self.ell}]: +1 {self.scalar_plus}, -1 {self.scalar_minus}",
            f"a_p = +-(p+1) mod {self.ell}: {self.newness_congruence}",
            f"E[{self.ell}] irreducible: {self.irreducible} ({self.irreducible_source})",
            f"COUNTEREXAMPLE-CANDIDATE: {self.candidate}",
        ]
        if self.candidate:
            lines += [f"  cited: {f}" for f in CITED_FACTS]
            lines += [f"  unproved: {h}" for h in self.hypotheses()]
        return "\n".join(lines)


def detect(E: WeierstrassCurve, p: int, ell: int, irreducible: bool | None = None) -> FrobeniusReport:
    """Run every criterion; l = 3 gets the division-polynomial check, other l
    take irreducibility as an asserted flag."""
    count, trace = reduce_and_count(E, p)
    structure = group_structure(E, p)
    plus, minus = scalar_frobenius(E, p, ell)
    cong = newness_congruence(trace, p, ell)
    if ell == 3:
        irred, source = mod3_irreducible_sufficient(E), "3-division polynomial"
        if not irred and irreducible:
            irred, source = True, "asserted"
    else:
        irred, source = irreducible, "asserted" if irreducible is not None else "unknown"
    candidate = bool(irred) and (plus or minus) and cong
    return FrobeniusReport(p, ell, count, trace, structure, plus, minus, cong, irred, source, candidate)


def bundled_curves() -> dict[str, dict]:
    text = resources.files("ogglab").joinpath("data/curves.json").read_text()
    return json.loads(text)


def bundled_curve(label: str) -> WeierstrassCurve:
    data = bundled_curves()
    if label not in data:
        raise KeyError(f"no bundled curve {label!r}; have {sorted(data)}")
    return WeierstrassCurve.from_list(data[label]["coefficients"])
