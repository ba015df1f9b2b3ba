"""Lattice and cone data behind symplectic cuts by non-abelian groups.

Coordinates: t* in the fundamental-weight basis, t in the simple-coroot
basis, so <beta, x> is the dot product.  A cocharacter of the torus
Z is identified with a coweight of T.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

from . import exact as ex
from .cones import RationalCone, hilbert_basis
from .lattice import LatticeMap, hermite_rows, int_det
from .polyhedra import (
    CHAMBER,
    FULL,
    EmptyPolyhedron,
    InequalitySystem,
    LabeledPolyhedron,
    Verdict,
    admissibility_13,
    fourier_motzkin_eliminate,
    intersect,
    make_facet,
)
from .rootsys import RootDatum


class KirwanCutWarning(UserWarning):
    pass


# -- Delzant / Cox sequence -------------------------------------------------------


@dataclass(frozen=True)
class DelzantSequence:
    lattice_map: LatticeMap
    kernel_basis: tuple
    exact_on_right: bool
    cokernel_invariants: dict

    @property
    def surjective_over_z(self) -> bool:
        return self.exact_on_right and not self.cokernel_invariants["torsion"]

    def to_dict(self) -> dict:
        u, d, v = self.lattice_map.smith
        return {
            "matrix": [list(r) for r in self.lattice_map.matrix],
            "smith": {"U": [list(r) for r in u], "D": [list(r) for r in d], "V": [list(r) for r in v]},
            "kernel_basis": [list(k) for k in self.kernel_basis],
            "exact_on_right": self.exact_on_right,
            "cokernel": self.cokernel_invariants,
        }


def delzant_sequence(betas: Sequence[Sequence[int]]) -> DelzantSequence:
    """The map Z^n -> Z^r, e_i -> beta_i, with its kernel and cokernel."""
    if not betas:
        raise ValueError("need at least one vector")
    r = len(betas[0])
    if any(len(b) != r for b in betas):
        raise ValueError("vectors of different lengths")
    m = [[int(b[i]) for b in betas] for i in range(r)]
    lm = LatticeMap.from_matrix(m)
    return DelzantSequence(lm, tuple(lm.kernel_basis()), lm.rank == r, lm.cokernel())


def delzant_moment_image(betas: Sequence[Sequence[int]], xi: Sequence, root_datum: RootDatum | None = None):
    """Project {(s, h) : s >= 0, s_j + <beta_j, h> = xi_j} onto h by Fourier-Motzkin.

    Labels are restored from the matching input normals.
    """
    n = len(betas)
    r = len(betas[0])
    dim = n + r
    ub, eq = [], []
    for j in range(n):
        row = [0] * dim
        row[j] = -1
        ub.append((row, 0))
        row = [0] * dim
        row[j] = 1
        for k in range(r):
            row[n + k] = betas[j][k]
        eq.append((row, xi[j]))
    system = InequalitySystem.build(dim, ub, eq)
    out = fourier_motzkin_eliminate(system, list(range(n)), root_datum)
    if out.is_empty:
        return out
    labels = {}
    for b, x in zip(betas, xi):
        f = make_facet(b, x)
        labels.setdefault(f.key(), f.label)
    facets = []
    for f in out.facets:
        m = labels.get(f.key(), 1)
        facets.append(make_facet(tuple(m * v for v in f.beta), f.xi * m, m))
    return LabeledPolyhedron(root_datum, tuple(facets), FULL, r, validate=False)


def direct_polyhedron(betas, xi, root_datum: RootDatum | None = None, ambient: str = FULL):
    """{h : <beta_j, h> <= xi_j} straight from the data."""
    r = len(betas[0])
    return LabeledPolyhedron(root_datum, tuple(make_facet(b, x) for b, x in zip(betas, xi)), ambient,
                             None if root_datum else r)


# -- cones --------------------------------------------------------------------------


def vinberg_cone(rd: RootDatum) -> RationalCone:
    """Q_G = {(x, x + sum m_i alpha_i) : x dominant, m_i >= 0} in t* + t*."""
    r = rd.rank
    gens = []
    for j in range(r):
        w = [0] * r
        w[j] = 1
        gens.append(tuple(w + w))
    for alpha in rd.simple_roots:
        gens.append(tuple([0] * r + list(alpha)))
    return RationalCone.from_v(gens, 2 * r)


def vinberg_cone_member(rd: RootDatum, x: Sequence, y: Sequence) -> bool:
    """Direct test: x dominant and (y - x) a nonnegative combination of simple roots."""
    x, y = ex.vec(x), ex.vec(y)
    m = ex.vecmat(ex.sub(y, x), ex.inverse(rd.cartan_matrix))
    return all(v >= 0 for v in x) and all(v >= 0 for v in m)


def extended_cone(rd: RootDatum, betas: Sequence[Sequence[int]]) -> RationalCone:
    """Q_{G,beta} = {(x, y) : x dominant, y_i >= <beta_i, x>} in t* + Q^n."""
    r, n = rd.rank, len(betas)
    rows = []
    for j in range(r):
        row = [0] * (r + n)
        row[j] = 1
        rows.append(row)
    for i, b in enumerate(betas):
        row = [-v for v in b] + [0] * n
        row[r + i] = 1
        rows.append(row)
    return RationalCone.from_h(rows, r + n)


def cone_slice(cone: RationalCone, rd: RootDatum, xi: Sequence):
    """{x : (x, xi) in cone} as a full-space polyhedron (EmptyPolyhedron if empty)."""
    r = rd.rank
    xi = ex.vec(xi)
    facets = []
    for a in cone.h_rep:
        ax, ay = a[:r], a[r:]
        rhs = ex.dot(ay, xi)  # ax.x + rhs >= 0  <=>  -ax.x <= rhs
        if all(v == 0 for v in ax):
            if rhs < 0:
                return EmptyPolyhedron(rd, FULL, r)
            continue
        facets.append(make_facet(tuple(-int(v) for v in ax), rhs))
    P = LabeledPolyhedron(rd, tuple(facets), FULL, validate=False)
    if P.find_point() is None:
        return EmptyPolyhedron(rd, FULL, r)
    return P


@dataclass(frozen=True)
class AbelianizationCone:
    cone: RationalCone
    smooth: bool


def abelianization_cone(rd: RootDatum) -> AbelianizationCone:
    """Cone spanned by the simple roots; smooth iff they form a basis of the root lattice."""
    cone = RationalCone.from_v(rd.simple_roots, rd.rank)
    # the generators are a lattice basis iff they have the covolume of their own span
    gens = [[int(v) for v in alpha] for alpha in rd.simple_roots]
    lattice_basis = hermite_rows(gens)
    smooth = cone.is_simplicial() and abs(int_det(gens)) == abs(int_det(lattice_basis))
    return AbelianizationCone(cone, smooth)


def phi_beta_extends(rd: RootDatum, betas: Sequence[Sequence[int]]) -> Verdict:
    """Whether each cocharacter beta_i maps the coordinate cone into the cone of the alpha_j.

    The integer <alpha_j, beta_i> is computed through the invariant
    metric: beta_i is turned into the weight v with (v, x) = <beta_i, x>
    and paired with alpha_j.  Certificate: the first violating (i, j).
    """
    for i, b in enumerate(betas):
        v = rd.coweight_to_weight(b)
        for j, alpha in enumerate(rd.simple_roots):
            if rd.inner(v, alpha) < 0:
                return Verdict(False, {"beta": i, "alpha": j})
    return Verdict(True)


# -- Vinberg lattice -------------------------------------------------------------------


@dataclass(frozen=True)
class VinbergLattice:
    """{(x, y) in X(T) + X(T) : x - y in the root lattice}."""

    root_datum: RootDatum

    def member(self, x: Sequence, y: Sequence) -> bool:
        x, y = ex.vec(x), ex.vec(y)
        if any(v.denominator != 1 for v in x + y):
            return False
        n = ex.vecmat(ex.sub(x, y), ex.inverse(self.root_datum.cartan_matrix))
        return all(v.denominator == 1 for v in n)

    def member_flat(self, z: Sequence) -> bool:
        r = self.root_datum.rank
        return self.member(z[:r], z[r:])


def vinberg_lattice_member(vl: VinbergLattice, x: Sequence, y: Sequence) -> bool:
    return vl.member(x, y)


def vinberg_monoid_generators(rd: RootDatum) -> list[tuple]:
    """Hilbert basis of the Vinberg lattice intersected with Q_G (rank <= 2)."""
    vl = VinbergLattice(rd)
    return hilbert_basis(vinberg_cone(rd), vl.member_flat)


# -- Kirwan cut --------------------------------------------------------------------------


@dataclass(frozen=True)
class KirwanCut:
    polyhedron: object  # LabeledPolyhedron or EmptyPolyhedron
    admissible: bool
    certificate: dict | None

    @property
    def is_empty(self) -> bool:
        return self.polyhedron.is_empty


def kirwan_cut(kirwan: LabeledPolyhedron, P: LabeledPolyhedron) -> KirwanCut:
    """Kirwan polytope of the cut space: kirwan intersected with P.

    The guarantee that this is the Kirwan polytope of the cut needs P to
    pass admissibility (1) and (3) against ``kirwan``; a warning is
    emitted when it does not.
    """
    if kirwan.root_datum != P.root_datum:
        raise ValueError("kirwan polytope and cutting set have different root data")
    if kirwan.ambient != CHAMBER or P.ambient != CHAMBER:
        raise ValueError("kirwan_cut works with chamber-relative polyhedra")
    verdict = admissibility_13(P, kirwan)
    if not verdict:
        warnings.warn(f"cutting set is not admissible: {verdict.certificate}", KirwanCutWarning, stacklevel=2)
    return KirwanCut(intersect(kirwan, P), verdict.value, verdict.certificate)


def chamber_polyhedron(rd: RootDatum, betas, xi) -> LabeledPolyhedron:
    """{x dominant : <beta_i, x> <= xi_i}; raises if empty."""
    return LabeledPolyhedron(rd, tuple(make_facet(b, x) for b, x in zip(betas, xi)), CHAMBER)

