import itertools
import random
import warnings
from fractions import Fraction

import pytest
from conftest import chamber
from hypothesis import given, settings
from hypothesis import strategies as st

from symcut import exact as ex
from symcut.coxvinberg import (
    KirwanCutWarning,
    VinbergLattice,
    abelianization_cone,
    cone_slice,
    delzant_moment_image,
    delzant_sequence,
    direct_polyhedron,
    extended_cone,
    kirwan_cut,
    phi_beta_extends,
    vinberg_cone,
    vinberg_cone_member,
    vinberg_lattice_member,
    vinberg_monoid_generators,
)
from symcut.polyhedra import (
    LabeledPolyhedron,
    PolyhedronError,
    contains,
    equal_sets,
    is_outward_positive,
)
from symcut.rootsys import build_root_datum

F = Fraction
KIRWAN = [((1, 0), 12), ((0, 1), 12), ((-1, -1), -12)]


def test_delzant_sequence_examples():
    seq = delzant_sequence([(1, 0), (0, 1), (-1, -1)])
    assert seq.kernel_basis == ((1, 1, 1),)
    assert seq.exact_on_right and seq.surjective_over_z
    assert seq.cokernel_invariants == {"torsion": [], "free_rank": 0}
    assert not delzant_sequence([(1, 0)]).exact_on_right
    doubled = delzant_sequence([(2,)])
    assert doubled.exact_on_right and not doubled.surjective_over_z
    assert doubled.cokernel_invariants["torsion"] == [2]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.lists(
    st.lists(st.integers(-4, 4), min_size=r, max_size=r), min_size=1, max_size=5)))
def test_delzant_sequence_rank_nullity(betas):
    seq = delzant_sequence(betas)
    n = len(betas)
    for k in seq.kernel_basis:
        assert all(sum(b[i] * c for b, c in zip(betas, k)) == 0 for i in range(len(betas[0])))
    image_rank = ex.rank(betas) if any(map(any, betas)) else 0
    assert len(seq.kernel_basis) + image_rank == n
    assert seq.exact_on_right == (image_rank == len(betas[0]))


def test_delzant_moment_image_rank_one():
    P = delzant_moment_image([(1,)], [5])
    assert [(f.beta, f.xi) for f in P.facets] == [((1,), 5)]
    assert not P.is_bounded()
    Q = delzant_moment_image([(1,), (-1,)], [3, 2])
    assert sorted(v[0] for v in Q.vertices()) == [-2, 3]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_delzant_moment_image_equals_direct(seed):
    rng = random.Random(seed)
    betas = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(rng.randint(2, 5))]
    betas = [b for b in betas if any(b)] or [(1, 0)]
    xi = [rng.randint(0, 6) for _ in betas]  # the origin is always inside
    assert equal_sets(delzant_moment_image(betas, xi), direct_polyhedron(betas, xi))


def test_delzant_moment_image_keeps_labels():
    P = delzant_moment_image([(2, 0), (0, 1), (-1, -1)], [4, 3, 1])
    assert sorted((f.primitive, f.label) for f in P.facets) == [((-1, -1), 1), ((0, 1), 1), ((1, 0), 2)]


def test_vinberg_cone_a1(A1):
    cone = vinberg_cone(A1)
    assert sorted(cone.v_rep) == [(0, 1), (1, 1)]
    assert cone.contains((3, 3)) and cone.contains((0, 2))
    assert not cone.contains((0, -2))
    assert sorted(vinberg_monoid_generators(A1)) == [(0, 2), (1, 1)]


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A1xA1"])
def test_vinberg_cone_matches_direct_membership(name):
    rd = build_root_datum(name)
    cone = vinberg_cone(rd)
    r = rd.rank
    for z in itertools.product(range(-2, 3), repeat=2 * r):
        assert cone.contains(z) == vinberg_cone_member(rd, z[:r], z[r:])
    # projection onto the first factor is the dominant chamber
    assert all(all(v >= 0 for v in ray[:r]) for ray in cone.v_rep)
    for j in range(r):
        assert any(list(ray[:r]) == [int(i == j) for i in range(r)] for ray in cone.v_rep)


def test_extended_cone_a1(A1):
    cone = extended_cone(A1, [(1,)])
    assert sorted(cone.irredundant_h()) == [(-1, 1), (1, 0)]
    assert cone.contains((0, 0)) and cone.contains((2, 3)) and not cone.contains((3, 2))


def test_extended_cone_without_betas_is_the_chamber(A2):
    cone = extended_cone(A2, [])
    assert sorted(cone.v_rep) == [(0, 1), (1, 0)]


def _random_instance(rd, rng):
    betas = [tuple(rng.randint(-2, 3) for _ in range(rd.rank)) for _ in range(rng.randint(1, 3))]
    betas = [b for b in betas if any(b)] or [tuple([1] * rd.rank)]
    xi = [rng.randint(-2, 8) for _ in betas]
    return betas, xi


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A1", "A2"]), st.integers(0, 10**6))
def test_slice_identity(name, seed):
    rd = build_root_datum(name)
    betas, xi = _random_instance(rd, random.Random(seed))
    try:
        cone = extended_cone(rd, betas)
    except Exception:
        return
    s = cone_slice(cone, rd, xi)
    try:
        P = chamber(rd, list(zip(betas, xi)))
    except PolyhedronError:
        assert s.is_empty
        return
    assert not s.is_empty
    assert equal_sets(s, P.as_full_space())


def test_abelianization_cones():
    a1 = abelianization_cone(build_root_datum("A1"))
    assert a1.cone.v_rep == ((1,),) and a1.smooth
    a2 = abelianization_cone(build_root_datum("A2"))
    assert a2.cone.is_simplicial() and a2.smooth
    orthant = abelianization_cone(build_root_datum("A1xA1"))
    assert sorted(orthant.cone.v_rep) == [(0, 1), (1, 0)]
    assert all(abelianization_cone(build_root_datum(n)).smooth for n in ["B2", "G2", "A3", "A1xA2"])


def test_phi_beta_examples(A1, A2):
    assert phi_beta_extends(A1, [(1,)])
    v = phi_beta_extends(A2, [(1, 1), (-2, -1)])
    assert not v and v.certificate == {"beta": 1, "alpha": 0}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A1", "A2", "B2"]), st.integers(0, 10**6))
def test_phi_beta_agrees_with_outward_positivity(name, seed):
    rd = build_root_datum(name)
    rng = random.Random(seed)
    while True:
        betas, xi = _random_instance(rd, rng)
        try:
            P = chamber(rd, list(zip(betas, [abs(x) + 1 for x in xi])))
            break
        except PolyhedronError:
            continue
    assert bool(phi_beta_extends(rd, [f.beta for f in P.facets])) == bool(is_outward_positive(P))


def test_vinberg_lattice_examples(A1):
    vl = VinbergLattice(A1)
    assert vinberg_lattice_member(vl, (1,), (1,))
    assert vinberg_lattice_member(vl, (1,), (-1,))
    assert not vinberg_lattice_member(vl, (1,), (0,))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A1", "A2", "B2", "G2"]), st.data())
def test_vinberg_lattice_closed_under_addition(name, data):
    rd = build_root_datum(name)
    vl = VinbergLattice(rd)
    r = rd.rank
    ints = st.lists(st.integers(-5, 5), min_size=r, max_size=r)
    x, y, u, w = (data.draw(ints) for _ in range(4))
    assert vl.member(x, x)
    # add a root lattice element to reach a member
    roots = ex.vecmat(w, rd.cartan_matrix)
    y = ex.add(x, roots)
    assert vl.member(x, y)
    v = ex.add(u, ex.vecmat(data.draw(ints), rd.cartan_matrix))
    assert vl.member(ex.add(x, u), ex.add(y, v))


def test_kirwan_cut_truncates_the_triangle(A2):
    K = chamber(A2, KIRWAN)
    P = chamber(A2, [((3, 2), 48)])
    cut = kirwan_cut(K, P)
    assert cut.admissible
    R = cut.polyhedron
    assert len(R.facets) == 4
    assert sorted(R.vertices()) == sorted(ex.vec(v) for v in [(12, 0), (12, 6), (8, 12), (0, 12)])
    assert contains(K, R) and contains(P, R)


def test_kirwan_cut_trivial_cases(A2):
    K = chamber(A2, KIRWAN)
    big = chamber(A2, [((1, 1), 100)])
    assert equal_sets(kirwan_cut(K, big).polyhedron, K)
    far = chamber(A2, [((-1, -1), -100)])
    assert kirwan_cut(K, far).is_empty


def test_kirwan_cut_warns_when_not_admissible(A2):
    K = chamber(A2, [((1, 0), 12), ((0, 1), 12)])
    P = chamber(A2, [((3, 2), 30)])
    with pytest.warns(KirwanCutWarning):
        cut = kirwan_cut(K, P)
    assert not cut.admissible
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        kirwan_cut(chamber(A2, KIRWAN), chamber(A2, [((3, 2), 48)]))


def test_kirwan_cut_rejects_mismatched_root_data(A2, B2):
    with pytest.raises(ValueError):
        kirwan_cut(chamber(A2, KIRWAN), chamber(B2, [((1, 1), 3)]))
    full = LabeledPolyhedron.from_inequalities(A2, [((1, 1), 3)], "full")
    with pytest.raises(ValueError):
        kirwan_cut(chamber(A2, KIRWAN), full)
