"""A small two-phase simplex method over the rationals.

Bland's rule throughout, so it terminates on degenerate problems; problem
sizes here are a few dozen rows at most.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _pivot(rows, obj, basis, r, c):
    prow = rows[r]
    p = prow[c]
    if p != _ONE:
        prow = [v / p for v in prow]
        rows[r] = prow
    nz = [(j, v) for j, v in enumerate(prow) if v != 0]
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f != 0:
                for j, v in nz:
                    row[j] -= f * v
    f = obj[c]
    if f != 0:
        for j, v in nz:
            obj[j] -= f * v
    basis[r] = c


def _run(rows, obj, basis, allowed):
    """Maximise; ``obj`` holds reduced costs and ``-z`` in its last slot."""
    while True:
        enter = next((j for j in allowed if obj[j] > 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(rows, obj, basis, best[1], enter)


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nonneg: Sequence[bool] | None = None,
) -> LPResult:
    """Maximise ``c.x`` subject to ``A_ub x <= b_ub`` and ``A_eq x = b_eq``.

    Variables are free unless flagged in ``nonneg``.
    """
    n = len(c)
    if nonneg is None:
        nonneg = [False] * n
    # column map: each free variable becomes a difference of two columns
    cols: list[tuple[int, int]] = []
    for j in range(n):
        cols.append((j, 1))
        if not nonneg[j]:
            cols.append((j, -1))
    nx = len(cols)
    m_ub, m_eq = len(A_ub), len(A_eq)
    nslack = m_ub
    ncore = nx + nslack
    rows: list[list[Fraction]] = []
    art_rows: list[int] = []
    for i in range(m_ub):
        a, b = A_ub[i], Fraction(b_ub[i])
        row = [Fraction(a[j]) * s for j, s in cols] + [_ZERO] * nslack
        row[nx + i] = _ONE
        if b < 0:
            row = [-v for v in row]
            b = -b
            art_rows.append(i)
        rows.append(row + [b])
    for i in range(m_eq):
        a, b = A_eq[i], Fraction(b_eq[i])
        row = [Fraction(a[j]) * s for j, s in cols] + [_ZERO] * nslack
        if b < 0:
            row = [-v for v in row]
            b = -b
        art_rows.append(m_ub + i)
        rows.append(row + [b])
    # initial basis: the slack where it has coefficient +1, an artificial otherwise
    nart = len(art_rows)
    for row in rows:
        rhs = row.pop()
        row.extend([_ZERO] * nart)
        row.append(rhs)
    art_of = {i: ncore + k for k, i in enumerate(art_rows)}
    for i, col in art_of.items():
        rows[i][col] = _ONE
    basis = [art_of.get(i, nx + i) for i in range(len(rows))]
    width = ncore + nart
    # phase 1
    if nart:
        obj = [_ZERO] * (width + 1)
        for i in art_rows:
            for j, v in enumerate(rows[i]):
                obj[j] += v
        for k in range(nart):
            obj[ncore + k] = _ZERO
        _run(rows, obj, basis, range(ncore))
        if obj[-1] != 0:
            return LPResult(INFEASIBLE)
        # drive remaining artificials out of the basis
        i = 0
        while i < len(rows):
            if basis[i] >= ncore:
                c_in = next((j for j in range(ncore) if rows[i][j] != 0), None)
                if c_in is None:
                    del rows[i]
                    del basis[i]
                    continue
                _pivot(rows, [_ZERO] * (width + 1), basis, i, c_in)
            i += 1
        for row in rows:
            rhs = row[-1]
            del row[ncore:]
            row.append(rhs)
    # phase 2
    cost = [Fraction(c[j]) * s for j, s in cols] + [_ZERO] * nslack
    obj = cost + [_ZERO]
    for i, b in enumerate(basis):
        cb = obj[b]
        if cb != 0:
            obj = [o - cb * v for o, v in zip(obj, rows[i])]
    status = _run(rows, obj, basis, range(ncore))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    y = [_ZERO] * ncore
    for i, b in enumerate(basis):
        y[b] = rows[i][-1]
    x = [_ZERO] * n
    for k, (j, s) in enumerate(cols):
        x[j] += s * y[k]
    value = sum((Fraction(c[j]) * x[j] for j in range(n)), _ZERO)
    return LPResult(OPTIMAL, value, tuple(x))


def find_point(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n: int | None = None, nonneg=None):
    """A feasible point of the system, or None."""
    if n is None:
        n = len((list(A_ub) + list(A_eq))[0])
    res = maximize([0] * n, A_ub, b_ub, A_eq, b_eq, nonneg)
    return res.x if res.status == OPTIMAL else None


def is_feasible(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n: int | None = None, nonneg=None) -> bool:
    return find_point(A_ub, b_ub, A_eq, b_eq, n, nonneg) is not None


def is_strictly_feasible(
    A_strict, b_strict, A_ub=(), b_ub=(), A_eq=(), b_eq=(), n: int | None = None
) -> bool:
    """Whether some x has ``A_strict x < b_strict`` together with the other rows.

    Solved as: maximise a slack t <= 1 with ``A_strict x + t <= b_strict``.
    """
    if n is None:
        n = len((list(A_strict) + list(A_ub) + list(A_eq))[0])
    rows = [list(a) + [1] for a in A_strict] + [list(a) + [0] for a in A_ub]
    rhs = list(b_strict) + list(b_ub)
    rows.append([0] * n + [1])
    rhs.append(1)
    eqs = [list(a) + [0] for a in A_eq]
    res = maximize([0] * n + [1], rows, rhs, eqs, b_eq)
    return res.status == OPTIMAL and res.value > 0
