"""Exact rational linear algebra on tuples of :class:`fractions.Fraction`.

Vectors are tuples, matrices are tuples of row tuples.  Everything here is
small-dimensional (rank <= 4 or so), so plain Python beats any clever
representation.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are rejected: they would silently import rounding error into
    exact computations.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def vec(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def fraction_str(q: Fraction) -> str:
    return str(Fraction(q))


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def neg(u: Sequence) -> Vector:
    return tuple(-a for a in u)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def vecmat(v: Sequence, m: Sequence[Sequence]) -> Vector:
    """Row vector times matrix."""
    ncols = len(m[0]) if m else 0
    return tuple(sum((v[i] * m[i][j] for i in range(len(m))), Fraction(0)) for j in range(ncols))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Sequence[Sequence]) -> Matrix:
    if not m:
        return ()
    return tuple(zip(*m))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [[Fraction(x) for x in r] for r in m]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {v : m v = 0}; ``ncols`` is required when ``m`` has no rows."""
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return list(identity(ncols))
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(m: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of m x = b, or None when inconsistent."""
    ncols = len(m[0])
    aug = [list(r) + [bi] for r, bi in zip(m, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(r) + list(e) for r, e in zip(m, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def det(m: Sequence[Sequence]) -> Fraction:
    rows = [[Fraction(x) for x in r] for r in m]
    n = len(rows)
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = -result
        p = rows[c][c]
        result *= p
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return result


def in_span(v: Sequence, basis: Sequence[Sequence]) -> bool:
    if is_zero(v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [v]) == rank(basis)


def subspace_contains(big: Sequence[Sequence], small: Sequence[Sequence]) -> bool:
    """Whether span(small) is contained in span(big)."""
    return all(in_span(v, big) for v in small)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def primitive_integer(v: Sequence) -> tuple[tuple[int, ...], Fraction]:
    """Write a nonzero rational vector as ``c * p`` with ``p`` primitive integral, ``c > 0``."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no primitive representative")
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    prim = tuple(x // g for x in ints)
    return prim, Fraction(g, den)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
