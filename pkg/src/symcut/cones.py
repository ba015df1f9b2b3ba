"""Pointed rational polyhedral cones with both representations.

H-representation rows ``a`` mean ``a . z >= 0``.  The V-representation
is computed with the double description method (Motzkin's incremental
algorithm with the algebraic adjacency test).  Rays and rows are stored
as primitive integer vectors.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import exact as ex


class ConeError(ValueError):
    pass


def _primitive(v) -> tuple:
    return ex.primitive_integer(v)[0]


def _dedupe(vectors) -> list[tuple]:
    out, seen = [], set()
    for v in vectors:
        p = _primitive(v)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def double_description(h_rep: Sequence[Sequence], dim: int) -> list[tuple]:
    """Extreme rays of the pointed cone {z : a.z >= 0 for a in h_rep}."""
    rows = [ex.vec(a) for a in h_rep if not ex.is_zero(a)]
    if (ex.rank(rows) if rows else 0) < dim:
        raise ConeError("cone is not pointed (it contains a line)")
    # initial simplicial cone from the first independent rows
    basis_idx: list[int] = []
    for i, a in enumerate(rows):
        if ex.rank([rows[j] for j in basis_idx] + [a]) > len(basis_idx):
            basis_idx.append(i)
        if len(basis_idx) == dim:
            break
    b = [rows[i] for i in basis_idx]
    inv = ex.inverse(b)
    rays = [tuple(inv[k][j] for k in range(dim)) for j in range(dim)]
    done = list(basis_idx)
    for i, a in enumerate(rows):
        if i in basis_idx:
            continue
        vals = [ex.dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        zer = [r for r, v in zip(rays, vals) if v == 0]
        neg = [r for r, v in zip(rays, vals) if v < 0]
        new = pos + zer
        for rp in pos:
            for rn in neg:
                common = [rows[j] for j in done if ex.dot(rows[j], rp) == 0 and ex.dot(rows[j], rn) == 0]
                if (ex.rank(common) if common else 0) != dim - 2:
                    continue
                vp, vn = ex.dot(a, rp), ex.dot(a, rn)
                new.append(ex.sub(ex.scale(vp, rn), ex.scale(vn, rp)))
        rays = [ex.vec(r) for r in _dedupe(new)]
        done.append(i)
        if not rays:
            break
    return sorted(_dedupe(rays))


def facets_from_rays(rays: Sequence[Sequence], dim: int) -> list[tuple]:
    """Facet normals (``a.z >= 0``) of the full-dimensional cone spanned by ``rays``."""
    rs = [ex.vec(r) for r in rays]
    if (ex.rank(rs) if rs else 0) < dim:
        raise ConeError("cone spanned by the rays is not full-dimensional")
    return double_description(rs, dim)


@dataclass(frozen=True)
class RationalCone:
    dim: int
    h_rep: tuple
    v_rep_given: tuple | None = field(default=None, repr=False)

    @classmethod
    def from_h(cls, rows: Sequence[Sequence], dim: int) -> "RationalCone":
        cone = cls(dim, tuple(_dedupe(rows)))
        cone.check()
        return cone

    @classmethod
    def from_v(cls, rays: Sequence[Sequence], dim: int) -> "RationalCone":
        rays = tuple(_dedupe(rays))
        cone = cls(dim, tuple(facets_from_rays(rays, dim)), rays)
        cone.check()
        return cone

    @property
    def v_rep(self) -> tuple:
        cached = self.__dict__.get("_v")
        if cached is None:
            cached = tuple(double_description(self.h_rep, self.dim))
            object.__setattr__(self, "_v", cached)
        return cached

    def contains(self, z: Sequence) -> bool:
        z = ex.vec(z)
        return all(ex.dot(a, z) >= 0 for a in self.h_rep)

    def in_interior(self, z: Sequence) -> bool:
        z = ex.vec(z)
        return all(ex.dot(a, z) > 0 for a in self.h_rep)

    def check(self) -> None:
        """Every ray satisfies every row, and V -> H reproduces the same cone."""
        for r in self.v_rep:
            if not self.contains(r):
                raise ConeError(f"ray {r} violates the H-representation")
        if self.v_rep_given is not None:
            for r in self.v_rep_given:
                if not self.contains(r):
                    raise ConeError(f"given generator {r} violates the H-representation")
        rebuilt = facets_from_rays(self.v_rep, self.dim)
        if sorted(rebuilt) != sorted(_dedupe(self.irredundant_h())):
            raise ConeError("double description round trip disagrees")

    def irredundant_h(self) -> list[tuple]:
        """Rows defining facets: tight on dim-1 independent rays."""
        out = []
        for a in self.h_rep:
            tight = [r for r in self.v_rep if ex.dot(a, r) == 0]
            if (ex.rank(tight) if tight else 0) == self.dim - 1:
                out.append(tuple(a))
        return sorted(_dedupe(out))

    def rebuilt(self) -> "RationalCone":
        """The same cone with its H-representation recomputed from the rays."""
        return RationalCone(self.dim, tuple(facets_from_rays(self.v_rep, self.dim)), self.v_rep)

    def is_simplicial(self) -> bool:
        return len(self.v_rep) == self.dim

    def same_set(self, other: "RationalCone") -> bool:
        return all(other.contains(r) for r in self.v_rep) and all(self.contains(r) for r in other.v_rep)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "h_rep": [list(a) for a in self.h_rep],
            "v_rep": [list(r) for r in self.v_rep],
        }


MAX_HILBERT_DIM = 4


def hilbert_basis(cone: RationalCone, member: Callable[[tuple], bool] | None = None, max_scale: int = 64) -> list[tuple]:
    """Minimal generating set of the monoid cone ∩ L.

    ``member`` tests membership in a full-rank sublattice L of Z^dim
    (default: all of Z^dim).  Every irreducible element lies in the
    half-open parallelepiped of some simplicial subcone spanned by
    L-primitive rays, so its sup-norm is at most the sum of the ray
    sup-norms; all lattice points of that box are enumerated.
    """
    if cone.dim > MAX_HILBERT_DIM:
        raise ConeError(f"dimension too large for Hilbert basis enumeration (> {MAX_HILBERT_DIM})")
    member = member or (lambda z: True)
    gens = []
    for r in cone.v_rep:
        k = next((k for k in range(1, max_scale + 1) if member(tuple(k * x for x in r))), None)
        if k is None:
            raise ConeError(f"ray {r} has no lattice point within scale {max_scale}")
        gens.append(tuple(k * x for x in r))
    bound = sum(max(abs(x) for x in g) for g in gens)
    # grading strictly positive on the cone minus the origin
    grade = [sum(a[i] for a in cone.h_rep) for i in range(cone.dim)]
    points = []
    for z in itertools.product(range(-bound, bound + 1), repeat=cone.dim):
        if any(z) and cone.contains(z) and member(z):
            points.append(z)
    points.sort(key=lambda z: (ex.dot(grade, z), z))
    basis: list[tuple] = []
    for z in points:
        reducible = False
        for h in basis:
            d = tuple(a - b for a, b in zip(z, h))
            if any(d) and cone.contains(d) and member(d):
                reducible = True
                break
        if not reducible:
            basis.append(z)
    return basis
