"""The Hecke algebra T as a Z-lattice of integer matrices.

Matrices are vectorized row-major and the algebra is the Z-span of the
given operators, stored as an HNF basis. Ideals are computed in the
algebra's own coordinates, so an SNF of the ideal lattice gives T/I
directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil
from typing import Iterable, Mapping, Sequence

from sympy import factorint, isprime, primerange

from .linalg import IntMatrix, Lattice, as_matrix, det, snf, solve_hnf


class NonCommuting(ValueError):
    pass


def sturm_bound(p: int, q: int, weight: int = 2) -> int:
    """ceil(k * [SL_2(Z) : Gamma_0(pq)] / 12) for squarefree level pq."""
    index = (p + 1) * (q + 1)
    return ceil(weight * index / 12)


@dataclass(frozen=True)
class HeckeAlgebra:
    level: tuple[int, int] | None
    operators: Mapping[int, IntMatrix]  # every supplied T_n, including any beyond the span bound
    lattice: Lattice  # rows are vectorized basis matrices
    size: int

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def basis(self) -> list[IntMatrix]:
        r = self.size
        return [IntMatrix.unflatten(row, r, r) for row in self.lattice.basis.entries]

    @property
    def identity(self) -> IntMatrix:
        return IntMatrix.identity(self.size)

    def coordinates(self, m: IntMatrix) -> list[int]:
        c = self.lattice.coordinates(as_matrix(m).flatten())
        if c is None:
            raise ValueError("matrix is not in the algebra")
        return c

    def __contains__(self, m) -> bool:
        return self.lattice.coordinates(as_matrix(m).flatten()) is not None

    def span(self, indices: Iterable[int]) -> Lattice:
        return Lattice.from_generators(
            IntMatrix([self.operators[n].flatten() for n in indices], cols=self.size ** 2),
            self.size ** 2,
        )

    def ideal(self, generators: Sequence[IntMatrix]) -> IntMatrix:
        """Coordinates (in the algebra basis) of the ideal generated by ``generators``."""
        rows = []
        for g in generators:
            for b in self.basis:
                rows.append(self.coordinates(g @ b))
        return IntMatrix(rows, cols=self.rank)


def build_hecke_algebra(S: Mapping[int, IntMatrix], bound: int | None = None,
                        level: tuple[int, int] | None = None) -> HeckeAlgebra:
    ops = {n: as_matrix(m) for n, m in S.items()}
    span_idx = sorted(n for n in ops if bound is None or n <= bound)
    if not span_idx:
        raise ValueError("no operators")
    if bound is not None and level is not None and bound < sturm_bound(*level):
        raise ValueError(f"bound {bound} is below the Sturm bound {sturm_bound(*level)}")
    idx = sorted(ops)
    for a in idx:
        for b in idx:
            if b > a and ops[a] @ ops[b] != ops[b] @ ops[a]:
                raise NonCommuting(f"T_{a} and T_{b} do not commute")
    size = ops[idx[0]].rows
    lat = Lattice.from_generators(IntMatrix([ops[n].flatten() for n in span_idx], cols=size * size), size * size)
    return HeckeAlgebra(level, ops, lat, size)


def generation_check(alg: HeckeAlgebra, indices: Iterable[int]) -> tuple[bool, int | None]:
    """Do the listed operators span T over Z? Returns (answer, index); index None means infinite."""
    sub = alg.span(indices)
    if sub.rank < alg.rank:
        return False, None
    coords = IntMatrix([alg.lattice.coordinates(row) for row in sub.basis.entries])
    index = abs(det(coords))
    return index == 1, index


def discriminant(alg: HeckeAlgebra) -> int:
    """det of the trace form Tr(b_i b_j) on the Z-basis."""
    B = alg.basis
    return det([[(x @ y).trace() for y in B] for x in B])


@dataclass(frozen=True)
class EisensteinData:
    variant: str
    generators: tuple[str, ...]
    invariant_factors: tuple[int, ...]  # non-unit SNF factors of T/I; 0 = infinite cyclic
    ell: int | None = None

    @property
    def order(self) -> int | None:
        if 0 in self.invariant_factors:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def is_residue_field(self) -> bool:
        """T/I = F_ell, i.e. I is maximal of residue characteristic ell."""
        return self.ell is not None and self.invariant_factors == (self.ell,)

    def primary_parts(self) -> dict[int, list[int]]:
        parts: dict[int, list[int]] = {}
        for d in self.invariant_factors:
            if d == 0:
                continue
            for ell, e in factorint(d).items():
                parts.setdefault(ell, []).append(ell ** e)
        return parts

    def away_from(self, primes: Iterable[int]) -> list[int]:
        """Invariant factors with the listed primes removed (units dropped)."""
        primes = set(primes)
        out = []
        for d in self.invariant_factors:
            if d == 0:
                out.append(0)
                continue
            for ell in primes:
                while d % ell == 0:
                    d //= ell
            if d != 1:
                out.append(d)
        return out

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "generators": list(self.generators),
            "invariant_factors": list(self.invariant_factors),
            "ell": self.ell,
            "residue_field": self.is_residue_field,
        }


VARIANTS = ("E", "m+-", "m-+")


def eisenstein_quotient(alg: HeckeAlgebra, p: int, q: int, variant: str = "E",
                        ell: int | None = None, bound: int | None = None) -> EisensteinData:
    """Invariant factors of T/I for the Eisenstein ideal or one of its maximal overideals.

    variant "E":   I = (T_r - (r+1) : r prime, r not dividing pq, r <= bound)
    variant "m+-": I = (T_p + 1, T_q - 1, E, ell)
    variant "m-+": I = (T_p - 1, T_q + 1, E, ell)
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant != "E" and (ell is None or not isprime(ell)):
        raise ValueError("m-variants need a prime ell")
    bound = bound or sturm_bound(p, q)
    I = alg.identity
    gens, names = [], []
    for r in primerange(2, bound + 1):
        if (p * q) % r == 0:
            continue
        if r not in alg.operators:
            raise ValueError(f"T_{r} missing from the operator family")
        gens.append(alg.operators[r] - (r + 1) * I)
        names.append(f"T_{r} - {r + 1}")
    if variant != "E":
        sp, sq = (1, -1) if variant == "m+-" else (-1, 1)
        for n, s in ((p, sp), (q, sq)):
            gens.append(alg.operators[n] + s * I)
            names.append(f"T_{n} {'+' if s > 0 else '-'} 1")
        gens.append(ell * I)
        names.append(str(ell))
    ideal = alg.ideal(gens)
    diag = list(snf(ideal)[0]) if ideal.rows else []
    diag += [0] * (alg.rank - len(diag))
    factors = tuple(d for d in diag if d != 1)
    return EisensteinData(variant, tuple(names), factors, ell if variant != "E" else None)
