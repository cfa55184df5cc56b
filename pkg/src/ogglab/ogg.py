"""Ogg's kernel predictions and the arithmetic around Eisenstein primes.

Everything here is elementary arithmetic in p, q and l; no modular
computation happens in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from sympy import isprime, primerange

OGG_PRIMES = (2, 3, 5, 7, 13)

# Names of the two Eisenstein-prime conditions.
P_SIDE = "p+1"  # l | p+1, l does not divide q-1 or q+1
Q_SIDE = "q+1"  # l | q+1, l does not divide p-1 or p+1
NEITHER = "neither"

UNCHECKED_ASSUMPTION = "J^new/J^new[m] is isomorphic to J^new"


class NotApplicable(ValueError):
    pass


def _check_pair(p: int, q: int) -> None:
    if p == q or not isprime(p) or not isprime(q):
        raise ValueError("p and q must be distinct primes")


def numerator_m(q: int) -> int:
    """Numerator of (q+1)/12 in lowest terms."""
    if not isprime(q):
        raise ValueError(f"{q} is not prime")
    return Fraction(q + 1, 12).numerator


def _divisor_chain(orders) -> list[int]:
    """Invariant factors d1 | d2 | ... of a product of cyclic groups, units dropped."""
    from .linalg import IntMatrix, snf

    orders = [d for d in orders if d != 1]
    if not orders:
        return []
    diag = snf(IntMatrix.diagonal(orders))[0]
    return [d for d in diag if d != 1]


@dataclass(frozen=True)
class OggPrediction:
    p: int
    q: int
    M: int
    kernel_shape: tuple[int, ...]  # divisor chain; () is the trivial group
    applicable: bool

    @property
    def order(self) -> int:
        out = 1
        for d in self.kernel_shape:
            out *= d
        return out

    def describe(self) -> str:
        if not self.kernel_shape:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.kernel_shape)

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "M": self.M, "kernelShape": list(self.kernel_shape),
                "applicable": self.applicable}


def predicted_kernel(p: int, q: int) -> OggPrediction:
    _check_pair(p, q)
    if p not in OGG_PRIMES:
        raise NotApplicable(f"no kernel prediction for p = {p} (needs p in {OGG_PRIMES})")
    M = numerator_m(q)
    if p in (2, 3, 5):
        orders = [M]
    elif p == 7:
        orders = [2 * M]
    else:
        orders = [7, M]
    return OggPrediction(p, q, M, tuple(_divisor_chain(orders)), True)


@dataclass(frozen=True)
class GroupOrders:
    cuspidal: tuple[int, int, int]  # (p-1)(q-1), (p+1)(q-1), (p-1)(q+1)
    shimura_subgroup: int
    phi_q: int  # component group of J_0(pq) at q
    shimura_curve_component_q: int
    up_to_2_and_3: tuple[str, ...] = ("cuspidal", "shimura_subgroup")

    def to_json(self) -> dict:
        return {
            "cuspidal": list(self.cuspidal),
            "shimuraSubgroup": self.shimura_subgroup,
            "phiQ": self.phi_q,
            "shimuraCurveComponentQ": self.shimura_curve_component_q,
            "upTo2And3": list(self.up_to_2_and_3),
        }


def group_orders(p: int, q: int) -> GroupOrders:
    _check_pair(p, q)
    return GroupOrders(
        ((p - 1) * (q - 1), (p + 1) * (q - 1), (p - 1) * (q + 1)),
        (p - 1) * (q - 1),
        q - 1,
        q + 1,
    )


@dataclass(frozen=True)
class ValuationRecord:
    ell: int
    ell1: int
    ell2: int
    m: int
    val1: int
    val2: int
    val1_ok: bool  # val_l(l1^2 - 1) = m - 1
    val2_ok: bool  # val_l(l2^2 - 1) = 0
    coprime_ok: bool  # l does not divide l_i (l_i - 1) for i = 1, 2

    @property
    def all_hold(self) -> bool:
        return self.val1_ok and self.val2_ok and self.coprime_ok

    def to_json(self) -> dict:
        return {"ell": self.ell, "ell1": self.ell1, "ell2": self.ell2, "m": self.m,
                "val1": self.val1, "val2": self.val2, "val1Ok": self.val1_ok,
                "val2Ok": self.val2_ok, "coprimeOk": self.coprime_ok, "allHold": self.all_hold}


def valuation(n: int, ell: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def valuation_hypotheses(ell: int, ell1: int, ell2: int, m: int) -> ValuationRecord:
    if ell % 2 == 0 or not isprime(ell):
        raise ValueError("ell must be an odd prime")
    v1 = valuation(ell1 * ell1 - 1, ell)
    v2 = valuation(ell2 * ell2 - 1, ell)
    coprime = all((li * (li - 1)) % ell for li in (ell1, ell2))
    return ValuationRecord(ell, ell1, ell2, m, v1, v2, v1 == m - 1, v2 == 0, coprime)


@dataclass(frozen=True)
class EisensteinPrimeReport:
    ell: int
    condition: str
    ideal_generators: tuple[str, ...]
    variant: str | None  # matching hecke.eisenstein_quotient variant
    theorem_applies: bool
    valuation: ValuationRecord | None = None

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "condition": self.condition,
            "idealGenerators": list(self.ideal_generators),
            "variant": self.variant,
            "theoremApplies": self.theorem_applies,
            "valuation": self.valuation.to_json() if self.valuation else None,
        }


def classify_eisenstein_prime(p: int, q: int, ell: int) -> EisensteinPrimeReport:
    """Which of the two conditions holds for l, and the matching maximal ideal.

    The valuation record is taken with (l1, l2) = (q, p) on the q-side and
    (p, q) on the p-side: the prime whose l-adic behaviour drives the
    condition goes first.
    """
    _check_pair(p, q)
    if ell < 5 or not isprime(ell):
        raise ValueError("ell must be a prime >= 5")
    p_side = (p + 1) % ell == 0 and (q - 1) % ell != 0 and (q + 1) % ell != 0
    q_side = (q + 1) % ell == 0 and (p - 1) % ell != 0 and (p + 1) % ell != 0
    assert not (p_side and q_side)
    if p_side:
        gens = (f"T_{p} + 1", f"T_{q} - 1", "E", str(ell))
        rec = valuation_hypotheses(ell, p, q, 2)
        return EisensteinPrimeReport(ell, P_SIDE, gens, "m+-", True, rec)
    if q_side:
        gens = (f"T_{p} - 1", f"T_{q} + 1", "E", str(ell))
        rec = valuation_hypotheses(ell, q, p, 2)
        return EisensteinPrimeReport(ell, Q_SIDE, gens, "m-+", True, rec)
    return EisensteinPrimeReport(ell, NEITHER, (), None, False)


def candidate_primes(p: int, q: int) -> list[int]:
    """Primes l >= 5 dividing one of p-1, p+1, q-1, q+1."""
    out = set()
    for n in (p - 1, p + 1, q - 1, q + 1):
        out.update(l for l in primerange(5, n + 1) if n % l == 0)
    return sorted(out)


def eisenstein_primes(p: int, q: int) -> list[EisensteinPrimeReport]:
    """Classification of every candidate l >= 5; flagged ones have a condition."""
    return [classify_eisenstein_prime(p, q, l) for l in candidate_primes(p, q)]


def flagged_primes(p: int, q: int) -> list[int]:
    return [r.ell for r in eisenstein_primes(p, q) if r.condition != NEITHER]


@dataclass
class KernelReport:
    p: int
    q: int
    ell: int
    status: str  # "conclusion" | "no-certificate" | "out-of-scope" | "condition-fails"
    conclusion: str | None
    hypotheses: list[tuple[str, bool]] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=list)

    def text(self) -> str:
        lines = [f"kernel report for N = {self.p * self.q} = {self.p}*{self.q}, l = {self.ell}: {self.status}"]
        for name, ok in self.hypotheses:
            lines.append(f"  [{'ok' if ok else 'FAILS'}] {name}")
        for a in self.assumptions:
            lines.append(f"  [assumed, not checked] {a}")
        if self.conclusion:
            lines.append(f"  conclusion: {self.conclusion}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "ell": self.ell,
            "status": self.status,
            "conclusion": self.conclusion,
            "hypotheses": [{"name": n, "holds": ok} for n, ok in self.hypotheses],
            "assumptions": list(self.assumptions),
            "text": self.text(),
        }


def kernel_report(p: int, q: int, ell: int, certificate: bool) -> KernelReport:
    """Assemble the l-primary kernel statement from its checkable inputs.

    ``certificate`` says whether an integral isomorphism of character groups
    M_p = M_q was certified. The hypothesis that J^new/J^new[m] = J^new is
    never checked here and is always listed as an assumption.
    """
    _check_pair(p, q)
    if ell < 5 or not isprime(ell):
        return KernelReport(p, q, ell, "out-of-scope", None,
                            [("l is a prime >= 5", False)])
    rep = classify_eisenstein_prime(p, q, ell)
    hyps = [
        ("l is a prime >= 5", True),
        (f"l satisfies the {rep.condition} condition" if rep.condition != NEITHER
         else "l satisfies one of the p+1 / q+1 conditions", rep.condition != NEITHER),
        ("M_p and M_q are isomorphic as T-modules (certificate)", certificate),
    ]
    if rep.condition == NEITHER:
        return KernelReport(p, q, ell, "condition-fails", None, hyps)
    if not certificate:
        return KernelReport(p, q, ell, "no-certificate", None, hyps)
    m = "(" + ", ".join(rep.ideal_generators) + ")"
    conclusion = f"the {ell}-primary part of ker(pi) is contained in C[{ell}] = Z/{ell}, with m = {m}"
    return KernelReport(p, q, ell, "conclusion", conclusion, hyps, [UNCHECKED_ASSUMPTION])


def counterexample_candidates(p: int, q_range) -> list[tuple[int, dict]]:
    """Primes q != p in the range, each with the data the detector needs."""
    if p not in OGG_PRIMES:
        raise NotApplicable(f"p = {p} is not one of {OGG_PRIMES}")
    out = []
    for q in q_range:
        if q == p or not isprime(q):
            continue
        pred = predicted_kernel(p, q)
        out.append((q, {
            "M": pred.M,
            "predictedKernel": list(pred.kernel_shape),
            "detect": f"curves of conductor {q}: test Frobenius at {p} on E[3]",
        }))
    return out


def ogg_report(p: int, q: int, certificate: bool | None = None) -> dict:
    """The CLI's JSON report: prediction (when applicable), orders, Eisenstein primes."""
    _check_pair(p, q)
    try:
        pred = predicted_kernel(p, q)
        shape, M = list(pred.kernel_shape), pred.M
    except NotApplicable:
        pred, shape, M = None, None, numerator_m(q)
    primes = eisenstein_primes(p, q)
    lines = []
    if pred:
        lines.append(f"predicted kernel for p = {p}, q = {q}: {pred.describe()} (M = {M})")
    else:
        lines.append(f"p = {p} is outside {list(OGG_PRIMES)}: no kernel prediction")
    flagged = [r for r in primes if r.condition != NEITHER]
    lines.append("flagged Eisenstein primes l >= 5: " + (", ".join(str(r.ell) for r in flagged) or "none"))
    if certificate is not None:
        for r in flagged:
            lines.append(kernel_report(p, q, r.ell, certificate).text())
    return {
        "p": p,
        "q": q,
        "M": M,
        "kernelShape": shape,
        "groupOrders": group_orders(p, q).to_json(),
        "eisensteinPrimes": [r.to_json() for r in primes],
        "report": "\n".join(lines),
    }
