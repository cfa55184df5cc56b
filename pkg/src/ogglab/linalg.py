"""Exact integer linear algebra.

Everything here works on Python ints, so nothing overflows. Matrices are
small (at most a few hundred columns) and the algorithms are the plain
textbook ones: extended-gcd row reduction for HNF, pivot/eliminate for SNF,
Bareiss for determinants and Faddeev-LeVerrier for characteristic
polynomials.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class NonSquare(ValueError):
    pass


class IntMatrix:
    """Immutable dense integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, data: Iterable[Sequence[int]], cols: int | None = None):
        entries = tuple(tuple(int(x) for x in row) for row in data)
        if entries:
            ncols = len(entries[0])
            if any(len(r) != ncols for r in entries):
                raise ValueError("ragged rows")
            if cols is not None and cols != ncols:
                raise ValueError("column count mismatch")
        else:
            ncols = cols or 0
        self.rows = len(entries)
        self.cols = ncols
        self.entries = entries
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, r: int, c: int) -> IntMatrix:
        return cls([[0] * c for _ in range(r)], cols=c)

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> IntMatrix:
        n = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def __str__(self):
        if not self.rows:
            return f"[{self.rows}x{self.cols} empty]"
        width = max(len(str(x)) for r in self.entries for x in r)
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in self.entries)

    def transpose(self) -> IntMatrix:
        return IntMatrix(zip(*self.entries), cols=self.rows) if self.rows else IntMatrix([], cols=0)

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_shape(other)
        return IntMatrix(([a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)), cols=self.cols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_shape(other)
        return IntMatrix(([a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)), cols=self.cols)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(([-a for a in r] for r in self.entries), cols=self.cols)

    def __mul__(self, k: int) -> IntMatrix:
        if not isinstance(k, int):
            return NotImplemented
        return IntMatrix(([k * a for a in r] for r in self.entries), cols=self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(
            ([sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries), cols=other.cols
        )

    def vecmul(self, v: Sequence[int]) -> list[int]:
        """Row vector times matrix."""
        return [sum(v[i] * self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)]

    def trace(self) -> int:
        if not self.is_square:
            raise NonSquare("trace of a non-square matrix")
        return sum(self.entries[i][i] for i in range(self.rows))

    def flatten(self) -> list[int]:
        return [x for r in self.entries for x in r]

    @classmethod
    def unflatten(cls, flat: Sequence[int], r: int, c: int) -> IntMatrix:
        return cls([flat[i * c:(i + 1) * c] for i in range(r)], cols=c)

    def _check_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    # JSON matrix format: entries are decimal strings.
    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> IntMatrix:
        m = cls([[int(x) for x in r] for r in obj["entries"]], cols=int(obj["cols"]))
        if m.rows != int(obj["rows"]):
            raise ValueError("row count does not match entries")
        return m

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# Hermite normal form


def _hnf_rows(rows: list[list[int]], ncols: int, transform: list[list[int]] | None):
    """In-place row HNF. Returns the number of nonzero (pivot) rows.

    ``transform`` (if given) receives the same row operations.
    """
    m = len(rows)
    piv = 0
    for col in range(ncols):
        if piv == m:
            break
        # gcd-combine all rows below into the pivot row
        for i in range(piv + 1, m):
            b = rows[i][col]
            if b == 0:
                continue
            a = rows[piv][col]
            if a == 0:
                rows[piv], rows[i] = rows[i], rows[piv]
                if transform is not None:
                    transform[piv], transform[i] = transform[i], transform[piv]
                continue
            if b % a == 0:
                f = b // a
                rows[i] = [y - f * x for x, y in zip(rows[piv], rows[i])]
                if transform is not None:
                    transform[i] = [y - f * x for x, y in zip(transform[piv], transform[i])]
                continue
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            rp, ri = rows[piv], rows[i]
            rows[piv] = [x * u + y * v for u, v in zip(rp, ri)]
            rows[i] = [ag * v - bg * u for u, v in zip(rp, ri)]
            if transform is not None:
                tp, ti = transform[piv], transform[i]
                transform[piv] = [x * u + y * v for u, v in zip(tp, ti)]
                transform[i] = [ag * v - bg * u for u, v in zip(tp, ti)]
        a = rows[piv][col]
        if a == 0:
            continue
        if a < 0:
            rows[piv] = [-u for u in rows[piv]]
            if transform is not None:
                transform[piv] = [-u for u in transform[piv]]
            a = -a
        for k in range(piv):
            f = rows[k][col] // a
            if f:
                rows[k] = [u - f * v for u, v in zip(rows[k], rows[piv])]
                if transform is not None:
                    transform[k] = [u - f * v for u, v in zip(transform[k], transform[piv])]
        piv += 1
    return piv


def hnf(m) -> IntMatrix:
    """Row Hermite normal form with zero rows dropped."""
    m = as_matrix(m)
    rows = [list(r) for r in m.entries]
    rank = _hnf_rows(rows, m.cols, None)
    return IntMatrix(rows[:rank], cols=m.cols)


def hnf_with_transform(m) -> tuple[IntMatrix, IntMatrix]:
    """Return (H, U) with U unimodular and U @ m == H (zero rows kept at the bottom of H)."""
    m = as_matrix(m)
    rows = [list(r) for r in m.entries]
    u = [[int(i == j) for j in range(m.rows)] for i in range(m.rows)]
    _hnf_rows(rows, m.cols, u)
    return IntMatrix(rows, cols=m.cols), IntMatrix(u, cols=m.rows)


def pivots(h: IntMatrix) -> list[int]:
    """Pivot columns of a matrix already in echelon form."""
    out = []
    for r in h.entries:
        for j, x in enumerate(r):
            if x:
                out.append(j)
                break
    return out


def rank(m) -> int:
    return hnf(m).rows


# ---------------------------------------------------------------------------
# Smith normal form


def snf(m) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Smith normal form.

    Returns ``(diag, left, right)`` with ``left @ m @ right`` equal to the
    rectangular diagonal matrix carrying ``diag`` (length min(rows, cols)),
    each entry dividing the next, zeros last.
    """
    m = as_matrix(m)
    r, c = m.rows, m.cols
    A = [list(row) for row in m.entries]
    L = [[int(i == j) for j in range(r)] for i in range(r)]
    R = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        L[dst] = [x + f * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, f):
        for row in A:
            row[dst] += f * row[src]
        for row in R:
            row[dst] += f * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            # divisibility of the remaining block
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            L[t] = [-x for x in L[t]]
    diag = [A[i][i] for i in range(min(r, c))]
    return diag, IntMatrix(L, cols=r), IntMatrix(R, cols=c)


def invariant_factors(m) -> list[int]:
    return snf(m)[0]


# ---------------------------------------------------------------------------
# Determinant, kernel, characteristic polynomial


def det(m) -> int:
    """Bareiss fraction-free determinant."""
    m = as_matrix(m)
    if not m.is_square:
        raise NonSquare(f"det of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    A = [list(r) for r in m.entries]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def det_mod(rows: Sequence[Sequence[int]], ell: int) -> int:
    """Determinant modulo a prime ``ell`` by Gaussian elimination over F_ell."""
    A = [[x % ell for x in r] for r in rows]
    n = len(A)
    d = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            d = -d
        akk = A[k][k]
        d = d * akk % ell
        inv = pow(akk, -1, ell)
        for i in range(k + 1, n):
            f = A[i][k] * inv % ell
            if f:
                A[i] = [(x - f * y) % ell for x, y in zip(A[i], A[k])]
    return d % ell


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^ambient_rank given by an HNF basis (rows)."""

    ambient_rank: int
    basis: IntMatrix

    @classmethod
    def from_generators(cls, gens, ambient_rank: int | None = None) -> Lattice:
        gens = as_matrix(gens)
        n = gens.cols if ambient_rank is None else ambient_rank
        if gens.rows == 0:
            return cls(n, IntMatrix([], cols=n))
        return cls(n, hnf(gens))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def coordinates(self, v: Sequence[int]) -> list[int] | None:
        """Integer coordinates of ``v`` in the HNF basis, or None if v is not in the lattice."""
        return solve_hnf(self.basis, v)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def is_saturated(self) -> bool:
        if self.rank == 0:
            return True
        return all(d == 1 for d in snf(self.basis)[0])


def solve_hnf(h: IntMatrix, v: Sequence[int]) -> list[int] | None:
    """Solve ``c @ h == v`` for integer ``c`` when ``h`` is in row echelon form."""
    v = list(v)
    coeffs = []
    for r in h.entries:
        j = next(k for k, x in enumerate(r) if x)
        if v[j] % r[j]:
            return None
        f = v[j] // r[j]
        coeffs.append(f)
        if f:
            v = [a - f * b for a, b in zip(v, r)]
    if any(v):
        return None
    return coeffs


def kernel_lattice(m) -> Lattice:
    """Integer left kernel {v : v @ m == 0}, HNF basis. Automatically saturated."""
    m = as_matrix(m)
    H, U = hnf_with_transform(m)
    kern = [U.row(i) for i in range(H.rows) if not any(H.row(i))]
    return Lattice.from_generators(IntMatrix(kern, cols=m.rows), m.rows)


def saturation(gens) -> Lattice:
    """(Q-span of the rows) intersected with Z^n."""
    gens = as_matrix(gens)
    n = gens.cols
    if gens.rows == 0:
        return Lattice(n, IntMatrix([], cols=n))
    # kernel of the kernel: the orthogonal complement taken twice
    perp = kernel_lattice(gens.T)
    if perp.rank == 0:
        return Lattice(n, IntMatrix.identity(n))
    return kernel_lattice(perp.basis.T)


def charpoly(m) -> list[int]:
    """Characteristic polynomial det(xI - m), coefficients low degree first."""
    m = as_matrix(m)
    if not m.is_square:
        raise NonSquare("charpoly of a non-square matrix")
    n = m.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = IntMatrix.zeros(n, n)
    I = IntMatrix.identity(n)
    for k in range(1, n + 1):
        M = m @ M + coeffs[n - k + 1] * I
        t = (m @ M).trace()
        assert t % k == 0
        coeffs[n - k] = -t // k
    return coeffs
