"""Root data, Weyl groups and Weyl chambers for compact groups of small rank.

Coordinate conventions
----------------------
* Weights (elements of the dual Cartan t*) are stored in the basis of
  fundamental weights, so ``x`` is dominant iff every coordinate is >= 0.
* Coweights (elements of t) are stored in the basis of simple coroots, which
  is dual to the fundamental weights: the pairing <beta, x> is the plain dot
  product.  Integral coweights are the coroot lattice Z^r.
* ``cartan_matrix[i][j] = <alpha_i, alpha_j^vee>``, so the simple root
  alpha_i has fundamental-weight coordinates given by row i.
* The invariant inner product on t* is normalised so long roots have
  squared length 2.

A Weyl word ``(i1, i2, ..., ik)`` stands for ``s_i1 s_i2 ... s_ik``; applied to
a vector, the rightmost reflection acts first.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from . import exact as ex

SUPPORTED_SIMPLE = ("A1", "A2", "A3", "B2", "C2", "G2")
MAX_RANK = 3


class UnsupportedCartanType(ValueError):
    pass


def _simple_cartan(name: str) -> list[list[int]]:
    if name == "A1":
        return [[2]]
    if name == "A2":
        return [[2, -1], [-1, 2]]
    if name == "A3":
        return [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    # B2: alpha_1 long, alpha_2 short.  C2: alpha_1 short, alpha_2 long.
    if name == "B2":
        return [[2, -2], [-1, 2]]
    if name == "C2":
        return [[2, -1], [-2, 2]]
    if name == "G2":
        return [[2, -1], [-3, 2]]
    raise UnsupportedCartanType(f"unsupported Cartan type {name!r}")


def _block_diagonal(blocks: list[list[list[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(b)
    return out


def _half_root_lengths(cartan: Sequence[Sequence]) -> list[Fraction]:
    """d_j = (alpha_j, alpha_j)/2 with the longest root of each component at 1.

    Symmetrisability: A_ij d_j = A_ji d_i.
    """
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * Fraction(cartan[j][i]) / Fraction(cartan[i][j])
                    comp.append(j)
                    stack.append(j)
        top = max(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / top
    for i in range(n):
        for j in range(n):
            if cartan[i][j] * d[j] != cartan[j][i] * d[i]:
                raise ValueError("Cartan matrix is not symmetrisable")
    return [Fraction(x) for x in d]


@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]
    matrix: tuple  # action on fundamental-weight coordinates

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Root datum of a semisimple compact group given by its Cartan matrix."""

    cartan_type: str
    cartan_matrix: tuple

    def __post_init__(self):
        a = self.cartan_matrix
        n = len(a)
        if any(len(r) != n for r in a) or any(a[i][i] != 2 for i in range(n)):
            raise ValueError("malformed Cartan matrix")
        _half_root_lengths(a)

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self.cartan_matrix == other.cartan_matrix

    def __hash__(self):
        return hash(self.cartan_matrix)

    def __repr__(self):
        return f"RootDatum({self.cartan_type!r})"

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @cached_property
    def simple_roots(self) -> tuple:
        """alpha_i in fundamental-weight coordinates (rows of the Cartan matrix)."""
        return ex.mat(self.cartan_matrix)

    @cached_property
    def fundamental_weights(self) -> tuple:
        return ex.identity(self.rank)

    @cached_property
    def simple_coroots(self) -> tuple:
        """alpha_i^vee in simple-coroot coordinates."""
        return ex.identity(self.rank)

    @cached_property
    def fundamental_coweights(self) -> tuple:
        """varpi_i^vee in simple-coroot coordinates: <alpha_j, varpi_i^vee> = delta_ij."""
        inv = ex.inverse(self.simple_roots)
        return ex.transpose(inv)

    @cached_property
    def half_root_lengths(self) -> tuple:
        return tuple(_half_root_lengths(self.cartan_matrix))

    @cached_property
    def pairing(self) -> tuple:
        """Gram matrix of the invariant inner product on t* in the weight basis.

        (alpha_i, alpha_j) = A_ij d_j forces G = A^{-1} D.
        """
        inv = ex.inverse(self.simple_roots)
        d = self.half_root_lengths
        return tuple(tuple(inv[i][j] * d[j] for j in range(self.rank)) for i in range(self.rank))

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        return ex.dot(u, ex.matvec(self.pairing, v))

    def coweight_to_weight(self, beta: Sequence) -> tuple:
        """The weight v with (v, x) = <beta, x> for all x."""
        return ex.matvec(ex.inverse(self.pairing), ex.vec(beta))

    # -- reflections ---------------------------------------------------------

    def reflect(self, i: int, x: Sequence) -> tuple:
        """s_i on a weight: x - <x, alpha_i^vee> alpha_i."""
        x = ex.vec(x)
        return ex.sub(x, ex.scale(x[i], self.simple_roots[i]))

    def reflect_coweight(self, i: int, beta: Sequence) -> tuple:
        """s_i on a coweight: beta - <alpha_i, beta> alpha_i^vee."""
        beta = ex.vec(beta)
        c = ex.dot(self.simple_roots[i], beta)
        out = list(beta)
        out[i] -= c
        return tuple(out)

    def apply_word(self, word: Sequence[int], x: Sequence) -> tuple:
        x = ex.vec(x)
        for i in reversed(word):
            x = self.reflect(i, x)
        return x

    def apply_word_coweight(self, word: Sequence[int], beta: Sequence) -> tuple:
        beta = ex.vec(beta)
        for i in reversed(word):
            beta = self.reflect_coweight(i, beta)
        return beta

    def pair_root_coweight(self, j: int, beta: Sequence) -> Fraction:
        """<alpha_j, beta>."""
        return ex.dot(self.simple_roots[j], ex.vec(beta))

    def is_dominant_coweight(self, beta: Sequence) -> bool:
        return all(self.pair_root_coweight(j, beta) >= 0 for j in range(self.rank))

    # -- the Weyl group ----------------------------------------------------

    @cached_property
    def _reflection_matrices(self) -> tuple:
        mats = []
        for i in range(self.rank):
            cols = [self.reflect(i, e) for e in ex.identity(self.rank)]
            mats.append(ex.transpose(cols))
        return tuple(mats)

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        """All elements, each with its lexicographically least reduced word.

        Breadth-first search appending generators on the right in increasing
        order visits words of each length in lexicographic order, so the
        first word reaching an element is its least reduced word.
        """
        ident = ex.identity(self.rank)
        seen = {ident: ()}
        frontier = [((), ident)]
        while frontier:
            nxt = []
            for word, m in frontier:
                for i in range(self.rank):
                    m2 = ex.matmul(m, self._reflection_matrices[i])
                    if m2 not in seen:
                        seen[m2] = word + (i,)
                        nxt.append((word + (i,), m2))
            frontier = nxt
        elems = [WeylElement(w, m) for m, w in seen.items()]
        elems.sort(key=lambda e: (len(e.word), e.word))
        return tuple(elems)

    @cached_property
    def _word_of_matrix(self) -> dict:
        return {e.matrix: e.word for e in self.weyl_group}

    def canonical_word(self, word: Sequence[int]) -> tuple[int, ...]:
        m = ex.identity(self.rank)
        for i in word:
            m = ex.matmul(m, self._reflection_matrices[i])
        return self._word_of_matrix[m]

    @property
    def order(self) -> int:
        return len(self.weyl_group)

    @cached_property
    def longest_element_word(self) -> tuple[int, ...]:
        return self.weyl_group[-1].word

    # -- chambers ------------------------------------------------------------

    def in_chamber(self, x: Sequence, mode: str = "closed") -> bool:
        x = ex.vec(x)
        if mode == "closed":
            return all(c >= 0 for c in x)
        if mode == "open":
            return all(c > 0 for c in x)
        raise ValueError(f"mode must be 'closed' or 'open', got {mode!r}")

    # -- serialisation -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "type": self.cartan_type,
            "rank": self.rank,
            "cartan_matrix": [[int(v) for v in r] for r in self.cartan_matrix],
            "pairing": [[ex.fraction_str(v) for v in r] for r in self.pairing],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "RootDatum":
        name = data["type"]
        cartan = [[int(v) for v in r] for r in data["cartan_matrix"]]
        try:
            rd = build_root_datum(name)
        except UnsupportedCartanType:
            rd = cls(name, tuple(tuple(r) for r in cartan))
        if [list(r) for r in rd.cartan_matrix] != cartan:
            raise ValueError(f"Cartan matrix does not match type {name}")
        if "rank" in data and data["rank"] != rd.rank:
            raise ValueError("rank does not match the Cartan matrix")
        if "pairing" in data:
            pairing = ex.mat(data["pairing"])
            if pairing != rd.pairing:
                raise ValueError("pairing does not match the Cartan matrix normalisation")
        return rd

    @classmethod
    def from_json(cls, text: str) -> "RootDatum":
        return cls.from_dict(json.loads(text))


def build_root_datum(cartan_type: str, rank: int | None = None) -> RootDatum:
    """Build a root datum for ``"A2"``, ``("A", 2)`` or a product like ``"A1xA1"``."""
    name = cartan_type.strip()
    if rank is not None:
        if any(ch.isdigit() for ch in name):
            if "x" not in name and int("".join(c for c in name if c.isdigit())) != rank:
                raise UnsupportedCartanType(f"unsupported Cartan type {name} with rank {rank}")
        else:
            name = f"{name}{rank}"
    parts = [p for p in name.replace("×", "x").split("x") if p]
    if not parts:
        raise UnsupportedCartanType(f"unsupported Cartan type {cartan_type!r}")
    for p in parts:
        if p not in SUPPORTED_SIMPLE:
            raise UnsupportedCartanType(f"unsupported Cartan type {p!r}")
    cartan = _block_diagonal([_simple_cartan(p) for p in parts])
    if len(parts) > 1 and len(cartan) > MAX_RANK:
        raise UnsupportedCartanType(f"unsupported Cartan type {name!r}: rank above {MAX_RANK}")
    return RootDatum("x".join(parts), tuple(tuple(r) for r in cartan))


def weyl_orbit(rd: RootDatum, x: Sequence) -> frozenset:
    """The W-orbit of a weight, by closure under simple reflections."""
    start = ex.vec(x)
    seen = {start}
    stack = [start]
    while stack:
        y = stack.pop()
        for i in range(rd.rank):
            z = rd.reflect(i, y)
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return frozenset(seen)


def stabilizer_order(rd: RootDatum, x: Sequence) -> int:
    """|Stab_W(x)| by brute force over the whole group."""
    x = ex.vec(x)
    return sum(1 for e in rd.weyl_group if ex.matvec(e.matrix, x) == x)


def dominant_representative(rd: RootDatum, x: Sequence) -> tuple[tuple, tuple[int, ...]]:
    """Return ``(x_plus, w)`` with ``x_plus`` dominant and ``w . x = x_plus``.

    ``w`` is reported as its canonical reduced word.
    """
    y = ex.vec(x)
    applied: list[int] = []
    while True:
        i = next((j for j in range(rd.rank) if y[j] < 0), None)
        if i is None:
            break
        y = rd.reflect(i, y)
        applied.append(i)
    word = tuple(reversed(applied))
    return y, rd.canonical_word(word)


def tau(rd: RootDatum, x: Sequence) -> tuple:
    """tau(x) = -w_0(x)."""
    return ex.neg(rd.apply_word(rd.longest_element_word, x))


@dataclass(frozen=True)
class ChamberFace:
    """The face {x dominant : x_i = 0 for i in S} of the closed chamber."""

    root_datum: RootDatum
    vanishing: frozenset = field(default_factory=frozenset)

    @property
    def label(self) -> str:
        return "sigma{" + ",".join(str(i) for i in sorted(self.vanishing)) + "}"

    @property
    def codimension(self) -> int:
        return len(self.vanishing)

    def span(self) -> list[tuple]:
        """Basis of the linear span of the face: the fundamental weights it contains."""
        return [w for j, w in enumerate(self.root_datum.fundamental_weights) if j not in self.vanishing]

    def contains(self, x: Sequence) -> bool:
        x = ex.vec(x)
        return all(c >= 0 for c in x) and all(x[i] == 0 for i in self.vanishing)

    def is_subface_of(self, other: "ChamberFace") -> bool:
        return self.vanishing >= other.vanishing


def chamber_faces(rd: RootDatum) -> list[ChamberFace]:
    """All 2^rank faces, by codimension then lexicographically."""
    out = []
    for k in range(rd.rank + 1):
        for s in combinations(range(rd.rank), k):
            out.append(ChamberFace(rd, frozenset(s)))
    return out


def perp_subspace(face: ChamberFace) -> list[tuple]:
    """Exact basis of the orthogonal complement of span(face) in t*."""
    rd = face.root_datum
    constraints = [ex.matvec(rd.pairing, w) for w in face.span()]
    if not constraints:
        return list(ex.identity(rd.rank))
    return ex.nullspace(constraints)


def in_chamber(rd: RootDatum, x: Sequence, mode: str = "closed") -> bool:
    return rd.in_chamber(x, mode)
