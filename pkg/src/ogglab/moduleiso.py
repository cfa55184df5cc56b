"""Integral isomorphism of Hecke modules given by commuting matrix families.

A family is a dict n -> S_n of r x r integer matrices acting on row vectors.
A module map v -> vX from (S) to (S') is equivariant iff S_n X = X S'_n for
every n. The maps form a lattice (HomLattice); an integral isomorphism is an
element of determinant +-1.

Deciding whether such an element exists is not a finite search in general,
so the answers are three-valued: a certificate, a definitive obstruction, or
Unknown within the given budget.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import IntMatrix, as_matrix, charpoly, det, det_mod, kernel_lattice

LOCAL_PRIMES = (2, 3, 5, 7, 11, 13)
DEFAULT_BUDGET = 5
LOCAL_LIMIT = 13 ** 5  # largest F_ell^k exhausted by the local test

Family = Mapping[int, IntMatrix]


class GeneratorCountMismatch(ValueError):
    pass


@dataclass(frozen=True)
class HomLattice:
    basis: tuple[IntMatrix, ...]
    size: int  # r, for square r x r maps

    @property
    def rank(self) -> int:
        return len(self.basis)

    def combine(self, coeffs: Sequence[int]) -> IntMatrix:
        r = self.size
        flat = [0] * (r * r)
        for c, X in zip(coeffs, self.basis):
            if c:
                for t, x in enumerate(X.flatten()):
                    flat[t] += c * x
        return IntMatrix.unflatten(flat, r, r)


@dataclass(frozen=True)
class IsoCertificate:
    witness: IntMatrix
    determinant: int
    coefficients: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"witness": self.witness.to_json(), "determinant": self.determinant}


@dataclass(frozen=True)
class FreenessCertificate:
    vector: tuple[int, ...]
    determinant: int
    generators: tuple[int, ...]


@dataclass(frozen=True)
class Obstruction:
    kind: str  # "RationalMismatch" | "LocalDetObstruction" | "Unknown"
    prime: int | None = None
    budget: int | None = None
    evidence: dict = field(default_factory=dict)

    @property
    def definitive(self) -> bool:
        return self.kind != "Unknown"


def _as_family(S) -> dict[int, IntMatrix]:
    if isinstance(S, Mapping):
        return {n: as_matrix(m) for n, m in S.items()}
    return {i: as_matrix(m) for i, m in enumerate(S, start=1)}


def family_digest(S: Family) -> str:
    """sha256 over the canonical JSON of a family (sorted by index)."""
    blob = json.dumps({str(n): as_matrix(S[n]).to_json() for n in sorted(S)}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _common_indices(S: Family, Sp: Family) -> list[int]:
    if set(S) != set(Sp):
        raise ValueError("families must be indexed identically")
    return sorted(S)


def hom_lattice(S, Sp) -> HomLattice:
    """Saturated lattice of X with S_n X = X S'_n for all n, HNF basis."""
    S, Sp = _as_family(S), _as_family(Sp)
    idx = _common_indices(S, Sp)
    r = S[idx[0]].rows
    if any(S[n].rows != r or Sp[n].rows != r for n in idx):
        raise ValueError("all matrices must be r x r for the same r")
    # rows: unknowns X[a][b]; columns: equations (n, i, j)
    cols = []
    for n in idx:
        A, B = S[n].entries, Sp[n].entries
        for i in range(r):
            for j in range(r):
                col = [0] * (r * r)
                for a in range(r):
                    col[a * r + j] += A[i][a]
                for b in range(r):
                    col[i * r + b] -= B[b][j]
                cols.append(col)
    system = IntMatrix(zip(*cols), cols=len(cols)) if cols else IntMatrix.zeros(r * r, 0)
    K = kernel_lattice(system)
    return HomLattice(tuple(IntMatrix.unflatten(row, r, r) for row in K.basis.entries), r)


def _search_order(rank: int, budget: int) -> Iterator[tuple[int, ...]]:
    """Standard basis vectors first, then boxes of growing max-norm."""
    seen = set()
    for i in range(rank):
        e = tuple(int(i == t) for t in range(rank))
        seen.add(e)
        yield e
    for k in range(1, budget + 1):
        for c in itertools.product(range(-k, k + 1), repeat=rank):
            if max(map(abs, c)) == k and c not in seen:
                yield c


def _form_vanishes_mod(value, k: int, ell: int, limit: int) -> bool | None:
    """Does c -> value(c) (a form mod ell) vanish on all of F_ell^k?

    Cheap probes come first, since one nonzero value settles the question.
    The exhaustive pass that proves vanishing only runs when ell^k <= limit;
    past that the answer is None (undecided).
    """
    for c in itertools.islice(_search_order(k, 1), 2000):
        if value([x % ell for x in c]):
            return False
    rng = random.Random(ell * 1000003 + k)
    for _ in range(200):
        if value([rng.randrange(ell) for _ in range(k)]):
            return False
    if ell ** k > limit:
        return None
    for c in itertools.product(range(ell), repeat=k):
        if any(c) and value(c):
            return False
    return True


def det_form_vanishes_mod(mats: Sequence[IntMatrix], ell: int, limit: int = LOCAL_LIMIT) -> bool | None:
    """True iff det(sum c_i M_i) = 0 mod ell for every c in F_ell^k; None if too large to decide."""
    if not mats:
        return True
    reduced = [[x % ell for x in M.flatten()] for M in mats]
    r = mats[0].rows

    def value(c):
        flat = [sum(ci * m[t] for ci, m in zip(c, reduced)) % ell for t in range(r * r)]
        return det_mod([flat[i * r:(i + 1) * r] for i in range(r)], ell)

    return _form_vanishes_mod(value, len(mats), ell, limit)


def rational_iso_test(S, Sp, samples: int = 64, seed: int = 0) -> tuple[bool, dict]:
    """Is there a rational module isomorphism? Returns (answer, evidence)."""
    S, Sp = _as_family(S), _as_family(Sp)
    for n in _common_indices(S, Sp):
        f, g = charpoly(S[n]), charpoly(Sp[n])
        if f != g:
            return False, {"kind": "RationalMismatch", "index": n, "charpolys": [f, g]}
    h = hom_lattice(S, Sp)
    if h.size == 0:
        return True, {"kind": "Witness", "coefficients": []}
    if h.rank == 0:
        return False, {"kind": "RationalMismatch", "hom_rank": 0}
    for c in _search_order(h.rank, 1):
        if det(h.combine(c)):
            return True, {"kind": "Witness", "coefficients": list(c)}
    # det is a polynomial of degree r on the Hom lattice: random points
    # detect a nonzero one with overwhelming probability ...
    rng = random.Random(seed)
    spread = 100 * h.size
    for _ in range(samples):
        c = [rng.randint(-spread, spread) for _ in range(h.rank)]
        if det(h.combine(c)):
            return True, {"kind": "Witness", "coefficients": c}
    # ... and vanishing on the grid {0..r}^k proves it is identically zero.
    if (h.size + 1) ** h.rank <= 200_000:
        for c in itertools.product(range(h.size + 1), repeat=h.rank):
            if det(h.combine(c)):
                return True, {"kind": "Witness", "coefficients": list(c)}
        return False, {"kind": "DetIdenticallyZero", "hom_rank": h.rank}
    return False, {"kind": "Unknown", "hom_rank": h.rank, "samples": samples}


def find_unimodular(h: HomLattice, budget: int = DEFAULT_BUDGET,
                    primes: Iterable[int] = LOCAL_PRIMES) -> IsoCertificate | Obstruction:
    if h.rank == 0:
        if h.size == 0:
            return IsoCertificate(IntMatrix([], cols=0), 1)
        return Obstruction("RationalMismatch", evidence={"hom_rank": 0})
    skipped = []
    for ell in primes:
        verdict = det_form_vanishes_mod(h.basis, ell)
        if verdict:
            return Obstruction("LocalDetObstruction", prime=ell,
                               evidence={"hom_rank": h.rank, "points_checked": ell ** h.rank - 1})
        if verdict is None:
            skipped.append(ell)
    for c in _search_order(h.rank, budget):
        X = h.combine(c)
        d = det(X)
        if d in (1, -1):
            return IsoCertificate(X, d, tuple(c))
    return Obstruction("Unknown", budget=budget, evidence={"hom_rank": h.rank, "local_primes_undecided": skipped})


def module_isomorphism(S, Sp, budget: int = DEFAULT_BUDGET) -> IsoCertificate | Obstruction:
    """Rational screen, then Hom lattice and unimodular search."""
    S, Sp = _as_family(S), _as_family(Sp)
    ok, ev = rational_iso_test(S, Sp)
    if not ok and ev["kind"] in ("RationalMismatch", "DetIdenticallyZero"):
        return Obstruction("RationalMismatch", evidence=ev)
    return find_unimodular(hom_lattice(S, Sp), budget)


def cyclic_det(gens: Sequence[IntMatrix], v: Sequence[int]) -> int:
    return det(IntMatrix([g.vecmul(v) for g in gens]))


def freeness_test(gens, budget: int = DEFAULT_BUDGET,
                  primes: Iterable[int] = LOCAL_PRIMES) -> FreenessCertificate | Obstruction:
    """Look for v with M = Z v g_1 + ... + Z v g_r, i.e. |det(stack(v g_i))| = 1.

    ``gens`` is a dict n -> matrix (or a list) of exactly r operators that
    span the algebra over Z.
    """
    fam = _as_family(gens)
    idx = sorted(fam)
    mats = [fam[n] for n in idx]
    r = mats[0].rows
    if len(mats) != r:
        raise GeneratorCountMismatch(f"{len(mats)} generators for a rank-{r} module")
    skipped = []
    for ell in primes:
        verdict = _cyclic_form_vanishes_mod(mats, ell)
        if verdict:
            return Obstruction("LocalDetObstruction", prime=ell,
                               evidence={"rank": r, "points_checked": ell ** r - 1})
        if verdict is None:
            skipped.append(ell)
    for v in _search_order(r, budget):
        d = cyclic_det(mats, v)
        if d in (1, -1):
            return FreenessCertificate(tuple(v), d, tuple(idx))
    return Obstruction("Unknown", budget=budget, evidence={"rank": r, "local_primes_undecided": skipped})


def _cyclic_form_vanishes_mod(mats: Sequence[IntMatrix], ell: int, limit: int = LOCAL_LIMIT) -> bool | None:
    r = mats[0].rows
    red = [[[x % ell for x in row] for row in M.entries] for M in mats]

    def value(v):
        rows = [[sum(v[i] * M[i][j] for i in range(r)) % ell for j in range(r)] for M in red]
        return det_mod(rows, ell)

    return _form_vanishes_mod(value, r, ell, limit)


def verify_certificate(S, Sp, cert: IsoCertificate, up_to: int) -> bool:
    """Independent recheck: det(X) = +-1 and S_n X = X S'_n for all n <= up_to."""
    S, Sp = _as_family(S), _as_family(Sp)
    X = cert.witness
    if not X.is_square or det(X) not in (1, -1):
        return False
    for n in range(1, up_to + 1):
        if n not in S or n not in Sp:
            return False
        if S[n] @ X != X @ Sp[n]:
            return False
    return True


def conjugacy_check(A, B, budget: int = DEFAULT_BUDGET) -> IsoCertificate | Obstruction:
    """GL_n(Z) conjugacy of single matrices: X with A X = X B, det X = +-1."""
    A, B = as_matrix(A), as_matrix(B)
    if A.rows != B.rows or not A.is_square or not B.is_square:
        raise ValueError("A and B must be square of the same size")
    return module_isomorphism({1: A}, {1: B}, budget)


def dual_family(S) -> dict[int, IntMatrix]:
    """Action on Hom(M, Z): transpose of each operator."""
    return {n: m.T for n, m in _as_family(S).items()}
