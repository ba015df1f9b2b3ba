import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symcut import exact as ex
from symcut.cones import ConeError, RationalCone, double_description, hilbert_basis
from symcut.lattice import LatticeMap, hermite_rows, int_det, smith_normal_form

small_int = st.integers(-6, 6)


def int_matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)))


def determinantal_divisors(m):
    """gcd of all k x k minors, computed with floating determinants (small entries)."""
    a = np.array(m, dtype=float)
    out = []
    for k in range(1, min(a.shape) + 1):
        g = 0
        for rows in itertools.combinations(range(a.shape[0]), k):
            for cols in itertools.combinations(range(a.shape[1]), k):
                g = math.gcd(g, int(round(np.linalg.det(a[np.ix_(rows, cols)]))))
        out.append(g)
    return out


def test_textbook_smith_form():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert LatticeMap.from_matrix(m).invariant_factors == [2, 6, 12]


@settings(max_examples=80, deadline=None)
@given(int_matrices())
def test_smith_form_invariants(m):
    lm = LatticeMap.from_matrix(m)
    assert lm.check()
    facs = lm.invariant_factors
    assert all(f > 0 for f in facs)
    assert all(b % a == 0 for a, b in zip(facs, facs[1:]))
    divisors = determinantal_divisors(m)
    prod = 1
    for k, f in enumerate(facs):
        prod *= f
        assert divisors[k] == prod
    assert all(d == 0 for d in divisors[len(facs):])
    assert lm.rank == int(np.linalg.matrix_rank(np.array(m, dtype=float)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small_int, min_size=3, max_size=3), min_size=3, max_size=3))
def test_bareiss_matches_float_determinant(m):
    assert int_det(m) == int(round(np.linalg.det(np.array(m, dtype=float))))


def test_kernel_and_cokernel():
    lm = LatticeMap.from_matrix([[1, 0, -1], [0, 1, -1]])
    assert lm.kernel_basis() == [(1, 1, 1)]
    assert lm.cokernel() == {"torsion": [], "free_rank": 0}
    assert LatticeMap.from_matrix([[2, 0], [0, 1]]).cokernel() == {"torsion": [2], "free_rank": 0}
    assert LatticeMap.from_matrix([[1, 1]]).cokernel()["free_rank"] == 0
    assert LatticeMap.from_matrix([[1], [1]]).cokernel()["free_rank"] == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small_int, min_size=3, max_size=3), min_size=1, max_size=4))
def test_hermite_rows_span_the_same_lattice(vectors):
    h = hermite_rows(vectors)
    rank = ex.rank(vectors) if any(map(any, vectors)) else 0
    assert len(h) == rank
    if not h:
        return
    # the vectors lie in the lattice of h, and both have the same covolume in their span
    for v in vectors:
        coeffs = ex.solve(ex.transpose(h), v)
        assert coeffs is not None and all(Fraction(c).denominator == 1 for c in coeffs)
    assert determinantal_divisors(h)[-1] == determinantal_divisors(vectors)[rank - 1]
    pivots = [next(j for j, x in enumerate(r) if x) for r in h]
    assert pivots == sorted(set(pivots))


def brute_force_rays(rows, dim):
    """Extreme rays by solving every (dim-1)-subset of rows for a one-dimensional null space."""
    rays = set()
    for subset in itertools.combinations(rows, dim - 1):
        null = ex.nullspace(list(subset)) if subset else [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        if len(null) != 1:
            continue
        for sign in (1, -1):
            r, _ = ex.primitive_integer(ex.scale(sign, null[0]))
            if all(ex.dot(a, r) >= 0 for a in rows):
                rays.add(r)
    return sorted(rays)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4).flatmap(lambda d: st.tuples(st.just(d), st.lists(
    st.lists(st.integers(-3, 3), min_size=d, max_size=d), min_size=1, max_size=6))))
def test_double_description_matches_brute_force(args):
    dim, extra = args
    # add the positive orthant rows so the cone is pointed
    rows = [tuple(int(i == j) for j in range(dim)) for i in range(dim)] + [tuple(r) for r in extra]
    try:
        rays = double_description(rows, dim)
    except ConeError:
        assert not brute_force_rays(rows, dim)
        return
    assert sorted(ex.primitive_integer(r)[0] for r in rays) == brute_force_rays(rows, dim)


def test_cone_round_trip_and_set_equality():
    cone = RationalCone.from_v([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)], 3)
    assert not cone.is_simplicial()
    assert cone.same_set(cone.rebuilt())
    assert cone.contains((1, 1, 0)) and not cone.contains((0, 0, -1))
    assert cone.in_interior((2, 2, 1)) and not cone.in_interior((1, 0, 0))


def test_cone_must_be_pointed():
    with pytest.raises(ConeError):
        RationalCone.from_h([(1, 0)], 2)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_hilbert_basis_of_planar_cone(n):
    cone = RationalCone.from_v([(1, 0), (1, n)], 2)
    assert sorted(hilbert_basis(cone)) == [(1, k) for k in range(n + 1)]


def test_hilbert_basis_a1_vinberg_monoid():
    cone = RationalCone.from_v([(1, 1), (-1, 1)], 2)
    even = lambda z: (z[0] + z[1]) % 2 == 0  # noqa: E731
    assert sorted(hilbert_basis(cone, even)) == [(-1, 1), (1, 1)]
    assert sorted(hilbert_basis(cone)) == [(-1, 1), (0, 1), (1, 1)]


def _representable(z, basis, cone):
    seen = {tuple(0 for _ in z)}
    frontier = [tuple(0 for _ in z)]
    while frontier:
        nxt = []
        for p in frontier:
            for h in basis:
                q = tuple(a + b for a, b in zip(p, h))
                if q not in seen and cone.contains(tuple(a - b for a, b in zip(z, q))):
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return tuple(z) in seen


@settings(max_examples=20, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(1, 2)), min_size=3, max_size=4))
def test_hilbert_basis_generates_and_is_minimal(gens):
    try:
        cone = RationalCone.from_v(gens, 3)
    except ConeError:
        return
    basis = hilbert_basis(cone)
    for z in itertools.product(range(-3, 4), range(-3, 4), range(0, 4)):
        if cone.contains(z):
            assert _representable(z, basis, cone)
    for h in basis:
        for g in basis:
            d = tuple(a - b for a, b in zip(h, g))
            assert not (g != h and cone.contains(d))


def test_hilbert_basis_dimension_cap():
    cone = RationalCone.from_v([tuple(int(i == j) for j in range(5)) for i in range(5)], 5)
    with pytest.raises(ConeError):
        hilbert_basis(cone)
