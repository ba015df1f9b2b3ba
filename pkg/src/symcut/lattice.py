"""Integer lattice maps: Smith and Hermite normal forms with deterministic pivoting."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

IntMatrix = list  # list of lists of int


def _eye(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _copy(m) -> IntMatrix:
    return [[int(x) for x in row] for row in m]


def int_matmul(a, b) -> IntMatrix:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def int_det(m) -> int:
    """Bareiss fraction-free determinant."""
    a = _copy(m)
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U m V = D diagonal, U and V unimodular.

    Pivot: smallest nonzero absolute value in the remaining block, ties
    broken by lowest (row, column).  Diagonal entries are nonnegative and
    each divides the next.
    """
    d = _copy(m)
    rows = len(d)
    cols = len(d[0]) if rows else 0
    u, v = _eye(rows), _eye(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        d[dst] = [a + f * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + f * b for a, b in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    dirty |= d[i][t] != 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    dirty |= d[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if t < rows and t < cols and d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def hermite_rows(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Pivots are positive and entries above each pivot are reduced into [0, pivot).
    Zero rows are dropped.
    """
    a = _copy(vectors)
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    done &= a[i][c] == 0
            if done:
                break
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [row for row in a if any(row)]


@dataclass(frozen=True)
class LatticeMap:
    """Integer matrix Z^n -> Z^r (columns are images of basis vectors) and its Smith form."""

    matrix: tuple
    smith: tuple  # (U, D, V)

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence[int]]) -> "LatticeMap":
        mm = tuple(tuple(int(x) for x in row) for row in m)
        u, d, v = smith_normal_form(mm)
        return cls(mm, (tuple(map(tuple, u)), tuple(map(tuple, d)), tuple(map(tuple, v))))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.matrix), len(self.matrix[0]) if self.matrix else 0

    @property
    def invariant_factors(self) -> list[int]:
        _, d, _ = self.smith
        return [d[i][i] for i in range(min(self.shape)) if d[i][i]]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def kernel_basis(self) -> list[tuple]:
        """Basis of the kernel lattice, in Hermite normal form."""
        _, _, v = self.smith
        r = self.rank
        n = self.shape[1]
        cols = [tuple(v[i][j] for i in range(n)) for j in range(r, n)]
        return [tuple(row) for row in hermite_rows(cols)]

    def cokernel(self) -> dict:
        return {
            "torsion": [f for f in self.invariant_factors if f != 1],
            "free_rank": self.shape[0] - self.rank,
        }

    def check(self) -> bool:
        u, d, v = self.smith
        ok = int_matmul(int_matmul(u, self.matrix), v) == [list(r) for r in d]
        ok &= abs(int_det(u)) == 1 and abs(int_det(v)) == 1
        for k in self.kernel_basis():
            image = int_matmul(self.matrix, [[c] for c in k])
            ok &= all(row[0] == 0 for row in image)
        return ok
