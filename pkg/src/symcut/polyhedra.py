"""Labeled rational polyhedra in t* and the predicates used to cut with them.

A :class:`LabeledPolyhedron` is a list of facets ``<beta_i, x> <= xi_i``
with integral normals beta_i (coroot coordinates) and positive integer
labels, either on its own (``ambient="full"``) or intersected with the
closed positive Weyl chamber (``ambient="chamber"``).  The chamber walls
are never facets: faces of P are cut out by facet hyperplanes only.

Every predicate is decided in exact rational arithmetic with the simplex
method from :mod:`symcut.lp`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from itertools import product as itertools_product
from math import gcd
from typing import Iterable, Sequence

from . import exact as ex
from . import lp
from .rootsys import RootDatum, chamber_faces, perp_subspace

CHAMBER = "chamber"
FULL = "full"


class PolyhedronError(ValueError):
    pass


@dataclass(frozen=True)
class Facet:
    beta: tuple  # ints, coroot coordinates
    xi: Fraction
    label: int

    @property
    def primitive(self) -> tuple:
        return tuple(b // self.label for b in self.beta)

    def key(self) -> tuple:
        """Identifies the half-space regardless of label."""
        return self.primitive, self.xi / self.label

    def to_dict(self) -> dict:
        return {"beta": list(self.beta), "xi": ex.fraction_str(self.xi), "label": self.label}


def make_facet(beta: Sequence, xi, label: int | None = None) -> Facet:
    """A facet from an integral normal; the label defaults to the content of beta."""
    b = tuple(int(v) for v in beta)
    if any(Fraction(v) != int(v) for v in beta):
        raise PolyhedronError(f"facet normal {tuple(beta)} is not integral")
    c = ex.content(b)
    if c == 0:
        raise PolyhedronError("facet normal must be nonzero")
    if label is None:
        label = c
    if label != c:
        raise PolyhedronError(
            f"label {label} inconsistent with normal {b}: it is {c} times a primitive vector"
        )
    return Facet(b, ex.as_fraction(xi), int(label))


def primitive_facet(primitive: Sequence[int], xi, label: int = 1) -> Facet:
    """Facet with normal ``label * primitive``; ``xi`` refers to that scaled normal."""
    prim = tuple(int(v) for v in primitive)
    if ex.content(prim) != 1:
        raise PolyhedronError(f"{prim} is not primitive")
    return make_facet(tuple(label * v for v in prim), xi, label)


@dataclass(frozen=True)
class EmptyPolyhedron:
    """Explicit marker for an empty result."""

    root_datum: RootDatum | None
    ambient: str
    dim: int

    is_empty = True

    def to_dict(self) -> dict:
        out = {"empty": True, "ambient": self.ambient,
               "root_datum": self.root_datum.to_dict() if self.root_datum else None}
        if self.root_datum is None:
            out["dim"] = self.dim
        return out


@dataclass(frozen=True)
class AffineSubspace:
    point: tuple
    directions: tuple  # basis of the linear part

    @property
    def dim(self) -> int:
        return len(self.directions)

    def contains_direction(self, v: Sequence) -> bool:
        return ex.in_span(ex.vec(v), self.directions)


@dataclass(frozen=True, eq=False)
class LabeledPolyhedron:
    root_datum: RootDatum | None
    facets: tuple
    ambient: str = CHAMBER
    dim: int | None = None
    validate: bool = field(default=True, repr=False, compare=False)

    is_empty = False

    def __post_init__(self):
        if self.ambient not in (CHAMBER, FULL):
            raise PolyhedronError(f"ambient must be 'chamber' or 'full', got {self.ambient!r}")
        if self.root_datum is None:
            if self.ambient == CHAMBER:
                raise PolyhedronError("a chamber-relative polyhedron needs a root datum")
            if self.dim is None:
                if not self.facets:
                    raise PolyhedronError("dimension unknown")
                object.__setattr__(self, "dim", len(self.facets[0].beta))
        else:
            if self.dim is not None and self.dim != self.root_datum.rank:
                raise PolyhedronError("dim disagrees with the root datum rank")
            object.__setattr__(self, "dim", self.root_datum.rank)
        facets = tuple(
            f if isinstance(f, Facet) else make_facet(*f) for f in self.facets
        )
        object.__setattr__(self, "facets", facets)
        for f in facets:
            if len(f.beta) != self.dim:
                raise PolyhedronError(f"facet {f} has the wrong dimension")
            if ex.content(f.beta) != f.label:
                raise PolyhedronError(f"label of {f} inconsistent with its normal")
        if not self.validate:
            return
        if self.ambient == CHAMBER:
            for f in facets:
                if not lp.is_feasible([f.beta] + self._wall_rows(), [f.xi] + [0] * self.dim):
                    raise PolyhedronError(f"half-space {f} misses the positive Weyl chamber")
        if self.find_point() is None:
            raise PolyhedronError("the polyhedron is empty")

    # -- construction helpers --------------------------------------------------

    @classmethod
    def from_inequalities(cls, rd, rows: Iterable, ambient: str = CHAMBER, dim: int | None = None):
        """``rows`` are ``(beta, xi)`` or ``(beta, xi, label)`` triples."""
        return cls(rd, tuple(make_facet(*r) for r in rows), ambient, dim)

    def _wall_rows(self) -> list:
        return [tuple(-int(i == j) for j in range(self.dim)) for i in range(self.dim)]

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    def system(self) -> tuple[list, list]:
        """All inequality rows: facets first, then chamber walls ``-x_j <= 0``."""
        a = [f.beta for f in self.facets]
        b = [f.xi for f in self.facets]
        if self.ambient == CHAMBER:
            a += self._wall_rows()
            b += [Fraction(0)] * self.dim
        return a, b

    def maximize(self, c: Sequence, eq_rows: Sequence = (), eq_rhs: Sequence = ()) -> lp.LPResult:
        a, b = self.system()
        return lp.maximize(list(c), a, b, list(eq_rows), list(eq_rhs))

    def find_point(self, eq_rows: Sequence = (), eq_rhs: Sequence = ()):
        a, b = self.system()
        if not a and not eq_rows:
            return tuple(Fraction(0) for _ in range(self.dim))
        return lp.find_point(a, b, list(eq_rows), list(eq_rhs), n=self.dim)

    def contains_point(self, x: Sequence) -> bool:
        x = ex.vec(x)
        a, b = self.system()
        return all(ex.dot(r, x) <= bi for r, bi in zip(a, b))

    def is_bounded(self) -> bool:
        for j in range(self.dim):
            for s in (1, -1):
                c = [0] * self.dim
                c[j] = s
                if self.maximize(c).status == lp.UNBOUNDED:
                    return False
        return True

    def with_ambient(self, ambient: str) -> "LabeledPolyhedron":
        return LabeledPolyhedron(self.root_datum, self.facets, ambient, self.dim)

    def as_full_space(self) -> "LabeledPolyhedron":
        """The same set with chamber walls promoted to ordinary facets."""
        if self.ambient == FULL:
            return self
        walls = tuple(make_facet(r, 0) for r in self._wall_rows())
        return LabeledPolyhedron(self.root_datum, self.facets + walls, FULL, self.dim, validate=False)

    # -- serialisation ---------------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "root_datum": self.root_datum.to_dict() if self.root_datum else None,
            "ambient": self.ambient,
            "facets": [f.to_dict() for f in self.facets],
        }
        if self.root_datum is None:
            out["dim"] = self.dim
        return out

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    # -- faces ------------------------------------------------------------------

    @cached_property
    def _faces(self) -> tuple:
        return tuple(_enumerate_faces(self))

    def faces(self) -> list["Face"]:
        return list(self._faces)

    def vertices(self) -> list[tuple]:
        return [f.affine_hull.point for f in self._faces if f.dim == 0]


@dataclass(frozen=True, eq=False)
class Face:
    parent: LabeledPolyhedron
    active: frozenset  # facet indices tight on the whole face
    walls: frozenset  # chamber walls tight on the whole face
    affine_hull: AffineSubspace
    equations: tuple  # rows (a, b) with a.x = b cutting out the affine hull

    @property
    def dim(self) -> int:
        return self.affine_hull.dim

    @property
    def active_set(self) -> tuple:
        return tuple(sorted(self.active))

    def lp_rows(self) -> tuple[list, list]:
        f = self.parent.facets
        return [f[i].beta for i in sorted(self.active)], [f[i].xi for i in sorted(self.active)]

    def meets(self, extra_eq: Sequence = (), extra_rhs: Sequence = (), other: LabeledPolyhedron | None = None) -> bool:
        a, b = self.parent.system()
        ea, eb = self.lp_rows()
        ea, eb = list(ea) + list(extra_eq), list(eb) + list(extra_rhs)
        if other is not None:
            oa, ob = other.system()
            a, b = list(a) + list(oa), list(b) + list(ob)
        return lp.is_feasible(a, b, ea, eb, n=self.parent.dim)

    def __repr__(self):
        return f"Face(I={self.active_set}, dim={self.dim})"


def _implicit_equalities(a: list, b: list, eq_a: list, eq_b: list, n: int):
    """Indices of rows of ``a x <= b`` tight on the whole set, or None if empty.

    Repeatedly maximise the sum of slacks capped at 1 over the rows not yet
    shown to be loose; a row with positive slack at the optimum is loose.
    """
    if (a or eq_a) and not lp.is_feasible(a, b, eq_a, eq_b, n=n):
        return None
    candidates = list(range(len(a)))
    while candidates:
        m = len(candidates)
        slot = {i: k for k, i in enumerate(candidates)}
        rows, rhs = [], []
        for i, r in enumerate(a):
            t = [0] * m
            if i in slot:
                t[slot[i]] = 1
            rows.append(list(r) + t)
            rhs.append(b[i])
        for k in range(m):
            t = [0] * m
            t[k] = 1
            rows.append([0] * n + t)
            rhs.append(1)
        eqs = [list(r) + [0] * m for r in eq_a]
        res = lp.maximize([0] * n + [1] * m, rows, rhs, eqs, eq_b, nonneg=[False] * n + [True] * m)
        t = res.x[n:]
        loose = {candidates[k] for k in range(m) if t[k] > 0}
        if not loose:
            break
        candidates = [i for i in candidates if i not in loose]
    return set(candidates)


def _closure(P: LabeledPolyhedron, active: Iterable[int]):
    a, b = P.system()
    active = sorted(set(active))
    eq_a = [a[i] for i in active]
    eq_b = [b[i] for i in active]
    tight = _implicit_equalities(a, b, eq_a, eq_b, P.dim)
    if tight is None:
        return None
    tight |= set(active)
    nf = P.n_facets
    facets = frozenset(i for i in tight if i < nf)
    walls = frozenset(i - nf for i in tight if i >= nf)
    equations = tuple((a[i], b[i]) for i in sorted(tight))
    rows = [e[0] for e in equations]
    point = lp.find_point(a, b, rows, [e[1] for e in equations], n=P.dim)
    directions = tuple(ex.nullspace(rows)) if rows else ex.identity(P.dim)
    hull = AffineSubspace(point, directions)
    return Face(P, facets, walls, hull, equations)


def _enumerate_faces(P: LabeledPolyhedron) -> list[Face]:
    root = _closure(P, ())
    if root is None:
        return []
    seen = {root.active: root}
    queue = [root]
    while queue:
        face = queue.pop(0)
        for j in range(P.n_facets):
            if j in face.active:
                continue
            g = _closure(P, face.active | {j})
            if g is not None and g.active not in seen:
                seen[g.active] = g
                queue.append(g)
    return sorted(seen.values(), key=lambda f: (len(f.active), sorted(f.active)))


def faces(P: LabeledPolyhedron) -> list[Face]:
    """All nonempty faces P_I, including P itself."""
    return P.faces()


# -- predicates ---------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Boolean answer with an optional certificate of failure."""

    value: bool
    certificate: dict | None = None

    def __bool__(self) -> bool:
        return self.value


def is_simple(P: LabeledPolyhedron) -> Verdict:
    for face in P.faces():
        betas = [P.facets[i].beta for i in face.active_set]
        if betas and ex.rank(betas) < len(betas):
            return Verdict(False, {"face": list(face.active_set), "reason": "dependent facet normals"})
    return Verdict(True)


def is_outward_positive(P: LabeledPolyhedron) -> bool:
    if P.root_datum is None:
        raise PolyhedronError("outward-positivity needs a root datum")
    return all(P.root_datum.is_dominant_coweight(f.beta) for f in P.facets)


def _perp_violations(P: LabeledPolyhedron, restrict: LabeledPolyhedron | None = None):
    rd = P.root_datum
    sigmas = [s for s in chamber_faces(rd) if s.vanishing]
    for face in P.faces():
        rows = [e[0] for e in face.equations]
        for sigma in sigmas:
            eq = [tuple(int(i == j) for j in range(rd.rank)) for i in sorted(sigma.vanishing)]
            if not face.meets(eq, [0] * len(eq), restrict):
                continue
            perp = perp_subspace(sigma)
            if not all(ex.dot(r, v) == 0 for r in rows for v in perp):
                return {"face": list(face.active_set), "sigma": sorted(sigma.vanishing)}
    return None


def is_universal(P: LabeledPolyhedron) -> Verdict:
    """Simple, and every face meeting a chamber face sigma contains the directions perpendicular to sigma."""
    if P.ambient != CHAMBER:
        raise PolyhedronError("universality is defined for chamber-relative polyhedra")
    simple = is_simple(P)
    if not simple:
        return simple
    bad = _perp_violations(P)
    if bad:
        return Verdict(False, dict(bad, reason="face meets a wall non-perpendicularly"))
    return Verdict(True)


def admissibility_13(P: LabeledPolyhedron, kirwan: LabeledPolyhedron) -> Verdict:
    """Admissibility conditions (1) and (3) relative to a Kirwan polytope."""
    if P.root_datum != kirwan.root_datum:
        raise PolyhedronError("incompatible root data")
    if P.ambient != CHAMBER:
        raise PolyhedronError("admissibility is defined for chamber-relative polyhedra")
    simple = is_simple(P)
    if not simple:
        return simple
    bad = _perp_violations(P, restrict=kirwan)
    if bad:
        return Verdict(False, dict(bad, reason="face meets a wall non-perpendicularly inside the Kirwan polytope"))
    return Verdict(True)


# -- set operations -----------------------------------------------------------


def contains(outer, inner) -> bool:
    """Whether ``inner`` is a subset of ``outer`` (one LP per constraint of ``outer``)."""
    if inner.is_empty:
        return True
    if outer.is_empty:
        return False
    a, b = outer.system()
    for r, bi in zip(a, b):
        res = inner.maximize(r)
        if res.status == lp.UNBOUNDED or res.value > bi:
            return False
    return True


def equal_sets(p, q) -> bool:
    return contains(p, q) and contains(q, p)


def _merge_duplicates(facets: Sequence[Facet]) -> list[Facet]:
    merged: dict = {}
    order = []
    for f in facets:
        k = f.key()
        if k in merged:
            merged[k] = gcd(merged[k], f.label)
        else:
            merged[k] = f.label
            order.append(k)
    out = []
    for prim, xi_unit in order:
        m = merged[(prim, xi_unit)]
        out.append(Facet(tuple(m * v for v in prim), xi_unit * m, m))
    return out


def remove_redundant(rd, facets: Sequence[Facet], ambient: str, dim: int):
    """Drop facets whose removal does not change the set, lowest index kept among duplicates."""
    kept = _merge_duplicates(facets)
    i = 0
    while i < len(kept):
        others = LabeledPolyhedron(rd, tuple(kept[:i] + kept[i + 1:]), ambient, dim, validate=False)
        res = others.maximize(kept[i].beta)
        if res.status == lp.OPTIMAL and res.value <= kept[i].xi:
            del kept[i]
        else:
            i += 1
    return kept


def intersect(P, Q):
    """P intersected with Q, redundant facets removed; EmptyPolyhedron if disjoint."""
    if P.root_datum != Q.root_datum or P.ambient != Q.ambient or P.dim != Q.dim:
        raise PolyhedronError("intersect needs the same root datum and ambient")
    if P.is_empty or Q.is_empty:
        return EmptyPolyhedron(P.root_datum, P.ambient, P.dim)
    both = LabeledPolyhedron(P.root_datum, P.facets + Q.facets, P.ambient, P.dim, validate=False)
    if both.find_point() is None:
        return EmptyPolyhedron(P.root_datum, P.ambient, P.dim)
    kept = remove_redundant(P.root_datum, list(both.facets), P.ambient, P.dim)
    return LabeledPolyhedron(P.root_datum, tuple(kept), P.ambient, P.dim, validate=False)


def w_invariant_extension(P: LabeledPolyhedron) -> LabeledPolyhedron:
    """The W-invariant set WP in t* with WP intersected with the chamber equal to P."""
    if P.ambient != CHAMBER:
        raise PolyhedronError("extension starts from a chamber-relative polyhedron")
    if not is_outward_positive(P):
        raise PolyhedronError("W-invariant extension needs an outward-positive polyhedron")
    rd = P.root_datum
    facets = []
    for w in rd.weyl_group:
        for f in P.facets:
            wb = rd.apply_word_coweight(w.word, f.beta)
            facets.append(Facet(tuple(int(v) for v in wb), f.xi, f.label))
    return LabeledPolyhedron(rd, tuple(_merge_duplicates(facets)), FULL, validate=False)


def weyl_translate(P: LabeledPolyhedron, word: Sequence[int]) -> LabeledPolyhedron:
    """w.P for a full-space polyhedron."""
    rd = P.root_datum
    facets = tuple(
        Facet(tuple(int(v) for v in rd.apply_word_coweight(word, f.beta)), f.xi, f.label)
        for f in P.facets
    )
    return LabeledPolyhedron(rd, facets, P.ambient, validate=False)


# -- stacky fans ----------------------------------------------------------------


@dataclass(frozen=True)
class StackyFan:
    rays: tuple  # (primitive generator, multiplicity)
    cones: tuple  # sorted tuples of ray indices

    def __post_init__(self):
        for gen, m in self.rays:
            if ex.content(gen) != 1 or m < 1:
                raise PolyhedronError(f"bad stacky ray {gen} x {m}")
        cones = set(self.cones)
        for c in self.cones:
            rays = [self.rays[i][0] for i in c]
            if len(c) > 1 and ex.rank(rays) == len(c):
                for k in range(len(c)):
                    for sub in combinations(c, k):
                        if sub not in cones:
                            raise PolyhedronError(f"cone {c} is missing its face {sub}")

    def maximal_cones(self) -> list[tuple]:
        return [c for c in self.cones if not any(set(c) < set(d) for d in self.cones)]

    def to_dict(self) -> dict:
        return {
            "rays": [{"generator": list(g), "multiplicity": m} for g, m in self.rays],
            "cones": [list(c) for c in self.cones],
        }


def stacky_normal_fan(P: LabeledPolyhedron) -> StackyFan:
    """Normal fan of P with ray multiplicities given by the facet labels."""
    fcs = P.faces()
    used = sorted({i for f in fcs for i in f.active})
    index = {i: k for k, i in enumerate(used)}
    rays = tuple((P.facets[i].primitive, P.facets[i].label) for i in used)
    cones = tuple(sorted({tuple(sorted(index[i] for i in f.active)) for f in fcs}, key=lambda c: (len(c), c)))
    if P.root_datum is not None and is_outward_positive(P):
        assert all(P.root_datum.is_dominant_coweight(g) for g, _ in rays)
    return StackyFan(rays, cones)


# -- Fourier-Motzkin ---------------------------------------------------------------


@dataclass(frozen=True)
class InequalitySystem:
    """Rows ``a.z <= b`` and ``e.z = f`` over the rationals."""

    dim: int
    ub: tuple = ()  # ((a, b), ...)
    eq: tuple = ()

    @classmethod
    def build(cls, dim, ub=(), eq=()):
        return cls(dim, tuple((ex.vec(a), ex.as_fraction(b)) for a, b in ub),
                   tuple((ex.vec(a), ex.as_fraction(b)) for a, b in eq))

    def contains(self, z: Sequence) -> bool:
        z = ex.vec(z)
        return all(ex.dot(a, z) <= b for a, b in self.ub) and all(ex.dot(a, z) == b for a, b in self.eq)

    def projection_contains(self, y: Sequence, keep: Sequence[int]) -> bool:
        """Whether some lift of ``y`` (coordinates ``keep``) satisfies the system; decided by LP."""
        y = ex.vec(y)
        fix = [tuple(int(j == k) for j in range(self.dim)) for k in keep]
        ub_a = [a for a, _ in self.ub]
        ub_b = [b for _, b in self.ub]
        eq_a = [a for a, _ in self.eq] + fix
        eq_b = [b for _, b in self.eq] + list(y)
        return lp.is_feasible(ub_a, ub_b, eq_a, eq_b, n=self.dim)


def _normalize_row(a, b):
    nz = next((x for x in a if x != 0), None)
    if nz is None:
        return tuple(a), b
    s = abs(nz)
    return tuple(x / s for x in a), b / s


def fourier_motzkin_eliminate(system: InequalitySystem, variables: Sequence[int], root_datum=None):
    """Exact projection of ``system`` onto the coordinates not in ``variables``.

    Returns a full-space LabeledPolyhedron (primitive normals, label 1) on
    the remaining coordinates, or an EmptyPolyhedron.
    """
    ub = [(list(a), b) for a, b in system.ub]
    eq = [(list(a), b) for a, b in system.eq]
    for v in variables:
        piv = next((k for k, (a, _) in enumerate(eq) if a[v] != 0), None)
        if piv is not None:
            pa, pb = eq.pop(piv)
            c = pa[v]

            def subst(row, rhs):
                f = row[v] / c
                if f == 0:
                    return row, rhs
                return [x - f * y for x, y in zip(row, pa)], rhs - f * pb

            ub = [subst(a, b) for a, b in ub]
            eq = [subst(a, b) for a, b in eq]
            continue
        pos = [(a, b) for a, b in ub if a[v] > 0]
        neg = [(a, b) for a, b in ub if a[v] < 0]
        new = [(a, b) for a, b in ub if a[v] == 0]
        for ap, bp in pos:
            for an, bn in neg:
                cp, cn = ap[v], -an[v]
                new.append(([cn * x + cp * y for x, y in zip(ap, an)], cn * bp + cp * bn))
        seen = set()
        ub = []
        for a, b in new:
            k = _normalize_row(a, b)
            if k not in seen:
                seen.add(k)
                ub.append((a, b))
    keep = [j for j in range(system.dim) if j not in set(variables)]
    rows = []
    for a, b in ub:
        rows.append(([a[j] for j in keep], b))
    for a, b in eq:
        r = [a[j] for j in keep]
        rows.append((r, b))
        rows.append(([-x for x in r], -b))
    dim = len(keep)
    facets = []
    for a, b in rows:
        if all(x == 0 for x in a):
            if b < 0:
                return EmptyPolyhedron(root_datum, FULL, dim)
            continue
        prim, c = ex.primitive_integer(a)
        facets.append(Facet(prim, Fraction(b) / c, 1))
    probe = LabeledPolyhedron(root_datum, tuple(facets), FULL, dim, validate=False)
    if probe.find_point() is None:
        return EmptyPolyhedron(root_datum, FULL, dim)
    kept = remove_redundant(root_datum, facets, FULL, dim)
    return LabeledPolyhedron(root_datum, tuple(kept), FULL, dim, validate=False)


# -- Delzant test -----------------------------------------------------------------


def convex_hull(points: Sequence[Sequence], root_datum: RootDatum | None = None) -> LabeledPolyhedron:
    """H-representation of the convex hull of full-dimensional rational points."""
    pts = sorted(set(ex.vec(p) for p in points))
    d = len(pts[0])
    facets = []
    seen = set()
    for combo in combinations(pts, d):
        diffs = [ex.sub(p, combo[0]) for p in combo[1:]]
        normal_space = ex.nullspace(diffs, d) if diffs else list(ex.identity(d))
        if len(normal_space) != 1:
            continue
        n = normal_space[0]
        vals = [ex.dot(n, p) for p in pts]
        h = ex.dot(n, combo[0])
        if all(v <= h for v in vals):
            sign = 1
        elif all(v >= h for v in vals):
            sign = -1
        else:
            continue
        prim, c = ex.primitive_integer(ex.scale(sign, n))
        f = Facet(prim, sign * h / c, 1)
        if f.key() not in seen:
            seen.add(f.key())
            facets.append(f)
    if not facets:
        raise PolyhedronError("points are not full-dimensional")
    P = LabeledPolyhedron(root_datum, tuple(sorted(facets, key=lambda f: (f.beta, f.xi))), FULL, d, validate=False)
    if P.faces() and P.faces()[0].dim != d:
        raise PolyhedronError("points are not full-dimensional")
    return P


def _lattice_basis(lattice, rd: RootDatum | None, dim: int):
    if lattice is None or lattice == "weight":
        return ex.identity(dim)
    if lattice == "root":
        if rd is None:
            raise PolyhedronError("root lattice needs a root datum")
        return rd.simple_roots
    return ex.mat(lattice)


def is_delzant(P, lattice=None, root_datum: RootDatum | None = None) -> bool:
    """Whether the bounded simple polytope has unimodular vertex cones.

    ``P`` may be a LabeledPolyhedron or a list of vertices.  ``lattice`` is
    ``"weight"`` (default: Z^r in fundamental-weight coordinates),
    ``"root"``, or an explicit list of basis vectors.
    """
    if not isinstance(P, LabeledPolyhedron):
        P = convex_hull(P, root_datum)
    P = P.as_full_space()
    if not P.is_bounded():
        raise PolyhedronError("is_delzant needs a bounded polytope")
    if not is_simple(P):
        return False
    basis = _lattice_basis(lattice, P.root_datum if root_datum is None else root_datum, P.dim)
    to_lattice = ex.inverse(ex.transpose(basis))
    fcs = P.faces()
    verts = [f for f in fcs if f.dim == 0]
    edges = [f for f in fcs if f.dim == 1]
    for v in verts:
        dirs = []
        for e in edges:
            if not e.active <= v.active:
                continue
            other = next(u for u in verts if e.active <= u.active and u is not v)
            d = ex.sub(other.affine_hull.point, v.affine_hull.point)
            coords = ex.matvec(to_lattice, d)
            prim, _ = ex.primitive_integer(coords)
            dirs.append(prim)
        if len(dirs) != P.dim or abs(ex.det(dirs)) != 1:
            return False
    return True


# -- Weitsman strata ----------------------------------------------------------------


@dataclass(frozen=True)
class Stratum:
    """Locally closed set given by rows ``(coeffs, const)`` read as
    ``coeffs . lam = const``, ``> const`` and ``>= const``."""

    n: int
    k: int
    eps: Fraction
    equalities: tuple
    strict: tuple
    weak: tuple

    def contains(self, lam: Sequence) -> bool:
        lam = ex.vec(lam)
        return (
            all(ex.dot(c, lam) == d for c, d in self.equalities)
            and all(ex.dot(c, lam) > d for c, d in self.strict)
            and all(ex.dot(c, lam) >= d for c, d in self.weak)
        )

    def _lp_rows(self):
        strict_a = [ex.neg(c) for c, _ in self.strict]
        strict_b = [-d for _, d in self.strict]
        ub_a = [ex.neg(c) for c, _ in self.weak]
        ub_b = [-d for _, d in self.weak]
        eq_a = [c for c, _ in self.equalities]
        eq_b = [d for _, d in self.equalities]
        return strict_a, strict_b, ub_a, ub_b, eq_a, eq_b

    def is_nonempty(self) -> bool:
        return _strata_feasible([self])

    def describe(self) -> str:
        lam = [f"l{i + 1}" for i in range(self.n)]
        m = self.n - self.k
        parts = " >= ".join(lam[:m]) if m else ""
        tail = " = ".join(lam[m:] + [str(self.eps)]) if self.k else ""
        if m and self.k:
            return f"{parts} > {tail}"
        if m:
            return f"{parts} > {self.eps}"
        return tail

    def to_dict(self) -> dict:
        def rows(rs):
            return [{"coeffs": [ex.fraction_str(c) for c in a], "const": ex.fraction_str(d)} for a, d in rs]

        return {"k": self.k, "description": self.describe(), "equalities": rows(self.equalities),
                "strict": rows(self.strict), "weak": rows(self.weak)}


def _strata_feasible(strata: Sequence[Stratum]) -> bool:
    n = strata[0].n
    sa, sb, ua, ub, ea, eb = [], [], [], [], [], []
    for s in strata:
        r = s._lp_rows()
        sa += r[0]
        sb += r[1]
        ua += r[2]
        ub += r[3]
        ea += r[4]
        eb += r[5]
    if not sa:
        return lp.is_feasible(ua, ub, ea, eb, n=n) if (ua or ea) else True
    return lp.is_strictly_feasible(sa, sb, ua, ub, ea, eb, n=n)


def weitsman_strata(n: int, eps) -> list[Stratum]:
    """The strata {l_1 >= ... >= l_{n-k} > l_{n-k+1} = ... = l_n = eps}, k = 0..n."""
    if n < 1:
        raise ValueError("n must be positive")
    eps = ex.as_fraction(eps)

    def e(i):
        return tuple(Fraction(int(j == i)) for j in range(n))

    out = []
    for k in range(n + 1):
        m = n - k
        equalities = tuple((e(i), eps) for i in range(m, n))
        weak = tuple((ex.sub(e(i), e(i + 1)), Fraction(0)) for i in range(m - 1))
        strict = ((e(m - 1), eps),) if m >= 1 else ()
        out.append(Stratum(n, k, eps, equalities, strict, weak))
    return out


def weitsman_closure(n: int, eps) -> Stratum:
    """Closure of the open stratum: l_1 >= ... >= l_n >= eps."""
    eps = ex.as_fraction(eps)

    def e(i):
        return tuple(Fraction(int(j == i)) for j in range(n))

    weak = tuple((ex.sub(e(i), e(i + 1)), Fraction(0)) for i in range(n - 1)) + ((e(n - 1), eps),)
    return Stratum(n, -1, eps, (), (), weak)


def strata_pairwise_disjoint(strata: Sequence[Stratum]) -> bool:
    return all(not _strata_feasible([s, t]) for s, t in combinations(strata, 2))


def stratum_in_closure(s: Stratum, closure: Stratum) -> bool:
    """Exact containment: no point of s violates a closure row (LP per row)."""
    sa, sb, ua, ub, ea, eb = s._lp_rows()
    for c, d in closure.weak:
        # look for a point of s with c.lam < d
        if lp.is_strictly_feasible(sa + [c], sb + [d], ua, ub, ea, eb, n=s.n):
            return False
    return True


def strata_cover_closure(strata: Sequence[Stratum], closure: Stratum) -> bool:
    """Whether every point of ``closure`` lies in some stratum.

    The closure splits into relatively open cells, one per choice of
    which of its rows are tight.  Every stratum row is a nonnegative sum
    of closure rows, so stratum membership is constant on each cell and
    one exact relative-interior point per nonempty cell decides it.
    """
    n = closure.n
    rows = [c for c, _ in closure.weak]
    rhs = [d for _, d in closure.weak]
    for tight in itertools_product([False, True], repeat=len(rows)):
        eq_a = [r for r, t in zip(rows, tight) if t]
        eq_b = [d for d, t in zip(rhs, tight) if t]
        loose = [(r, d) for r, d, t in zip(rows, rhs, tight) if not t]
        # maximise s <= 1 with r.lam >= d + s on the loose rows
        ub_a = [list(ex.neg(r)) + [1] for r, _ in loose] + [[0] * n + [1]]
        ub_b = [-d for _, d in loose] + [1]
        res = lp.maximize([0] * n + [1], ub_a, ub_b, [list(r) + [0] for r in eq_a], eq_b)
        if res.status != lp.OPTIMAL or (loose and res.value <= 0):
            continue
        point = res.x[:n]
        if not any(s.contains(point) for s in strata):
            return False
    return True
