"""Exact linear algebra over prime fields GF(p) and over the integers.

Two representations are used throughout the package:

* :class:`FpMatrix` is an immutable dense matrix over GF(p) with a small,
  deterministic API (rank, left kernel, solve).  It is the convenient form
  for small systems and for anything user facing.
* For the large GF(2) systems produced by lattice instantiation the rows
  are packed into Python integers (bit ``j`` of a row integer is column
  ``j``).  The ``gf2_*`` functions operate directly on such packed rows and
  are the fast path; :class:`FpMatrix` delegates to them when ``p == 2``.

Everything here is exact: no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "is_prime",
    "FpMatrix",
    "IntMatrix",
    "rank",
    "kernel_basis",
    "solve",
    "smith_normal_form",
    "gf2_rank",
    "gf2_left_kernel",
    "gf2_solve",
    "modp_rank",
    "modp_left_kernel",
    "modp_solve",
]


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (fields here are small)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Packed GF(2) engine: rows are Python ints, bit j = column j.
# ---------------------------------------------------------------------------


def _gf2_echelon(rows: Iterable[int], track: bool):
    """Incremental echelon form with lowest-set-bit pivoting.

    Returns (pivot table, kernel trackers).  The pivot table maps a pivot
    column to a reduced row (paired with its tracker mask when ``track``).
    Tracker masks record which input rows were combined: bit i set means
    input row i participates.
    """
    table: dict[int, tuple[int, int]] = {}
    kernel: list[int] = []
    for i, r in enumerate(rows):
        t = 1 << i
        while r:
            piv = (r & -r).bit_length() - 1
            hit = table.get(piv)
            if hit is None:
                table[piv] = (r, t)
                break
            r ^= hit[0]
            if track:
                t ^= hit[1]
        else:
            if track:
                kernel.append(t)
    return table, kernel


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of a GF(2) matrix given as packed rows."""
    table, _ = _gf2_echelon(rows, track=False)
    return len(table)


def gf2_left_kernel(rows: Sequence[int]) -> list[int]:
    """Basis of the left kernel {c : c.M = 0}, as packed coefficient masks.

    The basis has exactly ``len(rows) - rank`` elements and is produced in
    a deterministic order (order of the rows that complete a dependency).
    """
    _, kernel = _gf2_echelon(rows, track=True)
    return kernel


def gf2_solve(rows: Sequence[int], rhs: int) -> Optional[int]:
    """Solve c.M = rhs over GF(2); returns a packed coefficient mask or None."""
    table, _ = _gf2_echelon(rows, track=True)
    acc = 0
    r = rhs
    while r:
        piv = (r & -r).bit_length() - 1
        hit = table.get(piv)
        if hit is None:
            return None
        r ^= hit[0]
        acc ^= hit[1]
    return acc


# ---------------------------------------------------------------------------
# Dense mod-p engine (numpy int64, exact arithmetic).
# ---------------------------------------------------------------------------


def _modp_rref_tracked(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray, list[int]]:
    """Row reduce ``a`` mod p, tracking the transform.

    Returns (R, T, pivot_cols) with T.a = R (mod p), T square invertible.
    Pivoting is deterministic: leftmost nonzero column, first nonzero row.
    """
    m, n = a.shape
    R = np.mod(a.astype(np.int64), p)
    T = np.eye(m, dtype=np.int64)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
            T[[r, piv]] = T[[piv, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = (R[r] * inv) % p
        T[r] = (T[r] * inv) % p
        hits = np.nonzero(R[:, c])[0]
        hits = hits[hits != r]
        if hits.size:
            f = R[hits, c][:, None]
            R[hits] = (R[hits] - f * R[r]) % p
            T[hits] = (T[hits] - f * T[r]) % p
        pivots.append(c)
        r += 1
    return R, T, pivots


def modp_rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    _, _, pivots = _modp_rref_tracked(a, p)
    return len(pivots)


def modp_left_kernel(a: np.ndarray, p: int) -> np.ndarray:
    """Rows form a basis of {c : c.a = 0 mod p}."""
    m = a.shape[0]
    if m == 0:
        return np.zeros((0, 0), dtype=np.int64)
    R, T, pivots = _modp_rref_tracked(a, p)
    zero_rows = [i for i in range(m) if not R[i].any()]
    return T[zero_rows]


def modp_solve(a: np.ndarray, p: int, rhs: np.ndarray) -> Optional[np.ndarray]:
    """Solve c.a = rhs mod p for a row vector c, or return None."""
    m, n = a.shape
    rhs = np.mod(rhs.astype(np.int64), p)
    if m == 0:
        return np.zeros(0, dtype=np.int64) if not rhs.any() else None
    R, T, pivots = _modp_rref_tracked(a, p)
    c = np.zeros(m, dtype=np.int64)
    rem = rhs.copy()
    for i, col in enumerate(pivots):
        f = int(rem[col]) % p
        if f:
            rem = (rem - f * R[i]) % p
            c = (c + f * T[i]) % p
    if rem.any():
        return None
    return c


# ---------------------------------------------------------------------------
# Public matrix types.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FpMatrix:
    """Immutable matrix over GF(p), p prime; entries reduced to [0, p)."""

    p: int
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged rows")
            for v in row:
                if not (0 <= v < self.p):
                    raise ValueError(f"entry {v} out of range for GF({self.p})")

    @classmethod
    def from_rows(cls, p: int, rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> "FpMatrix":
        norm = tuple(tuple(int(v) % p for v in row) for row in rows)
        if ncols is None:
            if not norm:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(norm[0])
        return cls(p=p, rows=norm, ncols=ncols)

    @classmethod
    def zeros(cls, p: int, nrows: int, ncols: int) -> "FpMatrix":
        return cls(p=p, rows=tuple((0,) * ncols for _ in range(nrows)), ncols=ncols)

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p=p, rows=tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), ncols=n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_numpy(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.nrows, self.ncols)

    def to_bitrows(self) -> list[int]:
        if self.p != 2:
            raise ValueError("bit packing requires p == 2")
        out = []
        for row in self.rows:
            acc = 0
            for j, v in enumerate(row):
                if v:
                    acc |= 1 << j
            out.append(acc)
        return out

    def select_columns(self, cols: Sequence[int]) -> "FpMatrix":
        cols = list(cols)
        return FpMatrix(
            p=self.p,
            rows=tuple(tuple(row[c] for c in cols) for row in self.rows),
            ncols=len(cols),
        )

    def stack(self, other: "FpMatrix") -> "FpMatrix":
        if other.p != self.p or other.ncols != self.ncols:
            raise ValueError("shape or modulus mismatch")
        return FpMatrix(p=self.p, rows=self.rows + other.rows, ncols=self.ncols)

    def mul_row(self, c: Sequence[int]) -> tuple[int, ...]:
        """Row vector times matrix: returns c.M reduced mod p."""
        if len(c) != self.nrows:
            raise ValueError("length mismatch")
        out = [0] * self.ncols
        for ci, row in zip(c, self.rows):
            if ci % self.p == 0:
                continue
            for j, v in enumerate(row):
                if v:
                    out[j] = (out[j] + ci * v) % self.p
        return tuple(out)


def rank(m: FpMatrix) -> int:
    """Rank of m over GF(p)."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.p == 2:
        return gf2_rank(m.to_bitrows())
    return modp_rank(m.to_numpy(), m.p)


def kernel_basis(m: FpMatrix) -> FpMatrix:
    """Basis of the left kernel {c : c.m = 0}; has (nrows - rank) rows."""
    if m.nrows == 0:
        return FpMatrix(p=m.p, rows=(), ncols=0)
    if m.ncols == 0:
        return FpMatrix.identity(m.p, m.nrows)
    if m.p == 2:
        masks = gf2_left_kernel(m.to_bitrows())
        rows = tuple(tuple((mask >> i) & 1 for i in range(m.nrows)) for mask in masks)
        return FpMatrix(p=2, rows=rows, ncols=m.nrows)
    ker = modp_left_kernel(m.to_numpy(), m.p)
    return FpMatrix.from_rows(m.p, ker.tolist(), ncols=m.nrows)


def solve(m: FpMatrix, rhs: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Find c with c.m = rhs over GF(p); None exactly when rhs is outside the row space."""
    if len(rhs) != m.ncols:
        raise ValueError("rhs length mismatch")
    rhs_red = [int(v) % m.p for v in rhs]
    if m.nrows == 0:
        return () if not any(rhs_red) else None
    if m.p == 2:
        packed = 0
        for j, v in enumerate(rhs_red):
            if v:
                packed |= 1 << j
        mask = gf2_solve(m.to_bitrows(), packed)
        if mask is None:
            return None
        return tuple((mask >> i) & 1 for i in range(m.nrows))
    c = modp_solve(m.to_numpy(), m.p, np.array(rhs_red, dtype=np.int64))
    if c is None:
        return None
    return tuple(int(v) for v in c)


# ---------------------------------------------------------------------------
# Integer matrices and Smith normal form.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with arbitrary-precision entries."""

    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> "IntMatrix":
        norm = tuple(tuple(int(v) for v in row) for row in rows)
        if ncols is None:
            if not norm:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(norm[0])
        return cls(rows=norm, ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(rows=tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), ncols=n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for row in self.rows:
            acc = [0] * other.ncols
            for k, v in enumerate(row):
                if v:
                    orow = other.rows[k]
                    for j in range(other.ncols):
                        acc[j] += v * orow[j]
            out.append(tuple(acc))
        return IntMatrix(rows=tuple(out), ncols=other.ncols)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(min(self.nrows, self.ncols)))


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form over the integers with tracked transforms.

    Returns (D, L, R) with L.m.R = D exactly, L and R unimodular, and the
    diagonal of D nonnegative with each entry dividing the next.
    """
    a = [list(row) for row in m.rows]
    nr, nc = m.nrows, m.ncols
    L = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    R = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        L[dst] = [x + f * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in R:
            row[dst] += f * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        L[i] = [-x for x in L[i]]

    t = 0
    while t < min(nr, nc):
        # pivot selection: smallest nonzero |value| in the trailing submatrix
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v != 0 and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        while True:
            bi, bj = best
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
            # reduce column t and row t modulo the corner; if any remainder
            # survives it is strictly smaller than the corner, so restart
            restart = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t] != 0:
                        best = (i, t)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j] != 0:
                        best = (t, j)
                        restart = True
                        break
            if restart:
                continue
            # corner divides its row and column; now enforce that it divides
            # the whole trailing submatrix (this yields the chain d_i | d_{i+1})
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % a[t][t] != 0:
                        offender = (i, j)
                        break
                if offender:
                    break
            if offender is None:
                break
            add_row(t, offender[0], 1)
            best = (t, t)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    D = IntMatrix.from_rows(a, ncols=nc)
    Lm = IntMatrix.from_rows(L, ncols=nr)
    Rm = IntMatrix.from_rows(R, ncols=nc)
    return D, Lm, Rm
