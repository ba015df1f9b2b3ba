import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from symcut import matnum as mn

seeds = st.integers(0, 2**32 - 1)


def rng(seed):
    return np.random.default_rng(seed)


def test_metric_basics():
    assert mn.metric(np.eye(3), np.eye(3)) == 3
    x = mn.random_complex(rng(0), 3)
    assert mn.symplectic_form(x, x) == pytest.approx(0, abs=1e-14)
    with pytest.raises(ValueError):
        mn.metric(np.eye(2), np.eye(3))


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 4))
def test_symplectic_form_compatibility(seed, n):
    r = rng(seed)
    x, y = mn.random_complex(r, n), mn.random_complex(r, n)
    assert mn.symplectic_form(x, y) == pytest.approx(mn.real_metric(1j * x, y), abs=1e-12)
    assert mn.symplectic_form(x, y) == pytest.approx(-mn.symplectic_form(y, x), abs=1e-12)


def test_moment_map_examples():
    assert np.allclose(mn.moment_map_R(np.eye(2)), 1j * np.eye(2))
    assert np.allclose(mn.moment_map_R(np.zeros((2, 2))), 0)


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 4))
def test_moment_map_is_psd_and_right_equivariant(seed, n):
    r = rng(seed)
    a, u = mn.random_complex(r, n), mn.random_unitary(r, n)
    m = mn.moment_map_R(a)
    assert np.linalg.eigvalsh(-1j * m).min() >= -1e-12
    assert np.linalg.norm(mn.moment_map_R(a @ u) - u.conj().T @ m @ u) <= 1e-12 * (1 + np.linalg.norm(m))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bases_are_orthonormal(n):
    mn.check_orthonormal(mn.u_basis(n))
    mn.check_orthonormal(mn.su_basis(n))
    assert len(mn.u_basis(n)) == n * n and len(mn.su_basis(n)) == n * n - 1
    mn.check_orthonormal(mn.split_u2_basis())


def test_restrict_moment_rejects_bad_basis():
    with pytest.raises(ValueError):
        mn.restrict_moment(np.eye(2), [1j * np.eye(2)])


def test_restrict_moment_examples():
    r = rng(1)
    a = mn.random_complex(r, 3)
    assert np.allclose(mn.combine(mn.restrict_moment(a, mn.u_basis(3)), mn.u_basis(3)), mn.moment_map_R(a))
    assert np.allclose(mn.restrict_moment(mn.random_unitary(r, 3), mn.su_basis(3)), 0, atol=1e-12)
    b = mn.random_complex(r, 2)
    direct = 1j * b.conj().T @ b - 0.5j * np.trace(b.conj().T @ b) * np.eye(2)
    assert np.allclose(mn.combine(mn.restrict_moment(b, mn.su_basis(2)), mn.su_basis(2)), direct)


def test_polar_examples():
    r = rng(2)
    p = mn.random_psd(r, 3)
    u, q = mn.polar_decompose(p)
    assert np.allclose(u, np.eye(3)) and np.allclose(q, p)
    w = mn.random_unitary(r, 3)
    u, q = mn.polar_decompose(w)
    assert np.allclose(u, w) and np.allclose(q, np.eye(3))


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 4))
def test_polar_against_eigendecomposition(seed, n):
    a = mn.random_complex(rng(seed), n)
    u, p = mn.polar_decompose(a)
    assert np.linalg.norm(a - u @ p) <= 1e-10 * np.linalg.norm(a)
    w, v = np.linalg.eigh(a.conj().T @ a)
    oracle = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    assert np.linalg.norm(p - oracle) <= 1e-9 * np.linalg.norm(a)
    assert mn.in_group(u, "unitary")


def test_section_examples():
    assert np.allclose(mn.section_s(1j * np.eye(2)), np.eye(2))
    assert np.allclose(mn.section_s(np.zeros((2, 2))), 0)
    with pytest.raises(mn.OutsideMomentImage):
        mn.section_s(-1j * np.eye(2))


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 4))
def test_section_round_trips(seed, n):
    r = rng(seed)
    b = 1j * mn.random_psd(r, n)
    assert np.linalg.norm(mn.moment_map_R(mn.section_s(b)) - b) <= 1e-8 * np.linalg.norm(b)
    a = mn.random_complex(r, n)
    _, p = mn.polar_decompose(a)
    assert np.linalg.norm(mn.section_s(mn.moment_map_R(a)) - p) <= 1e-9 * np.linalg.norm(a)


def test_cartan_examples():
    r = rng(3)
    u = mn.random_unitary(r, 3)
    k, lam = mn.cartan_decompose(u)
    assert np.allclose(k, u) and np.allclose(lam, 0, atol=1e-12)
    g = np.diag([3.0, 1 / 3.0])
    k, lam = mn.cartan_decompose(g)
    assert np.allclose(k, np.eye(2)) and np.allclose(mn.hermitian_exp(1j * lam), g)
    with pytest.raises(ValueError):
        mn.cartan_decompose(np.ones((2, 2)))


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 4))
def test_cartan_reconstruction_and_equivariance(seed, n):
    r = rng(seed)
    g = mn.random_complex(r, n)
    k, lam = mn.cartan_decompose(g)
    assert np.linalg.norm(g - k @ mn.hermitian_exp(1j * lam)) <= 1e-9 * np.linalg.norm(g)
    assert np.linalg.norm(lam + lam.conj().T) <= 1e-10 * (1 + np.linalg.norm(lam))
    # the scipy matrix exponential is an independent route to e^{i lam}
    assert np.allclose(sla.expm(1j * lam), mn.hermitian_exp(1j * lam), atol=1e-9)
    k1, k2 = mn.random_unitary(r, n), mn.random_unitary(r, n)
    kk, ll = mn.cartan_decompose(k1 @ g @ k2.conj().T)
    assert np.linalg.norm(kk - k1 @ k @ k2.conj().T) <= 1e-9
    assert np.linalg.norm(ll - k2 @ lam @ k2.conj().T) <= 1e-9 * max(1, np.linalg.norm(lam))


def test_sl2_cut_function_examples():
    assert mn.sl2_cut_function(np.eye(2)) == pytest.approx(0, abs=1e-12)
    assert mn.sl2_cut_function(mn.random_unitary(rng(4), 2)) == pytest.approx(0, abs=1e-7)
    for a in (1.5, 2.0, 7.0):
        assert mn.sl2_cut_function(np.diag([a, 1 / a])) == pytest.approx((a * a - a ** -2) / 2, rel=1e-12)
    with pytest.raises(ValueError):
        mn.sl2_cut_function(np.eye(3))


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_sl2_cut_function_is_norm_of_su2_moment(seed):
    a = mn.random_complex(rng(seed), 2)
    coeffs = mn.restrict_moment(a, mn.su_basis(2))
    # |su(2) coefficients| / sqrt2 equals half the eigenvalue gap of A*A
    assert mn.sl2_cut_function(a) == pytest.approx(np.linalg.norm(coeffs) / np.sqrt(2), rel=1e-9, abs=1e-12)


def test_section_s_L_examples():
    assert np.allclose(mn.section_s_L(np.zeros(3)), np.eye(2))
    xu = np.array([mn.dual_pairing(1j * np.eye(2), e) for e in mn.u_basis(2)])
    assert np.allclose(mn.section_s_L(xu, "unitary"), np.eye(2))
    with pytest.raises(ValueError):
        mn.section_s_L(np.zeros(4))
    with pytest.raises(mn.OutsideMomentImage):
        mn.section_s_L(np.array([np.nan, 0, 0]))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_section_s_L_round_trip(seed):
    x = 2 * rng(seed).standard_normal(3)
    a = mn.section_s_L(x)
    assert np.linalg.norm(mn.restrict_moment(a, mn.su_basis(2)) - x) <= 1e-7 * (1 + np.linalg.norm(x))
    u, _ = mn.polar_decompose(a)
    assert np.allclose(u, np.eye(2), atol=1e-9)


def test_t_top_examples():
    base = mn.t_top(np.eye(2), 0.0, 0.0)
    assert np.allclose(base, mn.t_top_base(0.0, 0.0))
    with pytest.raises(mn.OutsideMomentImage):
        mn.t_top_base(-1.0, 2.0)
    with pytest.raises(ValueError):
        mn.t_top(np.ones((2, 2)), 0.5, 1.0)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_t_top_moments_and_invariance(seed):
    r = rng(seed)
    gamma = 2 * r.random()
    xi = gamma + 2 * r.random()
    k = mn.random_unitary(r, 2, special=True)
    a = mn.t_top(k, gamma, xi)
    phi, centre = mn.t_top_moments(a)
    assert phi == pytest.approx(gamma, abs=1e-7) and centre == pytest.approx(xi, abs=1e-7)
    assert np.linalg.norm(mn.moment_map_R(a) - mn.moment_map_R(mn.t_top(np.eye(2), gamma, xi))) <= 1e-10


def test_group_and_algebra_tags():
    assert mn.in_group(np.eye(2), "special_unitary")
    assert not mn.in_group(2 * np.eye(2), "special_linear")
    assert mn.in_group(np.diag([2, 0.5]), "special_linear")
    assert not mn.in_group(np.zeros((2, 2)), "general_linear")
    mn.MatrixPoint(np.eye(2), "unitary")
    with pytest.raises(ValueError):
        mn.MatrixPoint(2 * np.eye(2), "unitary")
    mn.LieAlgebraElement(1j * np.diag([1, -1]), "special_unitary")
    with pytest.raises(ValueError):
        mn.LieAlgebraElement(1j * np.eye(2), "special_unitary")
    with pytest.raises(ValueError):
        mn.LieAlgebraElement(np.eye(2))


def test_rng_streams_are_reproducible_and_distinct():
    a = mn.rng_for(7, 0).standard_normal(4)
    assert np.array_equal(a, mn.rng_for(7, 0).standard_normal(4))
    assert not np.array_equal(a, mn.rng_for(7, 1).standard_normal(4))
