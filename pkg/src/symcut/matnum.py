"""Floating-point geometry on M_N(C) with the Euclidean Kaehler structure.

Conventions: g_E(A, B) = Tr(A B*), omega_E(A, B) = -Im Tr(A B*).  The
dual of u(N) is identified with u(N) through <X, Y> = -Tr(X Y), and
mu(A) = i A* A is the moment map of right multiplication by U(N).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

TOL_MEMBERSHIP = 1e-9
TOL_PSD = 1e-10
EIG_CLAMP = 1e-12

GROUP_TAGS = ("full_matrix_monoid", "general_linear", "special_linear", "unitary", "special_unitary")
ALGEBRA_TAGS = ("unitary", "special_unitary")


class OutsideMomentImage(ValueError):
    pass


def _fro(a) -> float:
    return float(np.linalg.norm(a))


@dataclass(frozen=True)
class MatrixPoint:
    entries: np.ndarray
    group_tag: str = "full_matrix_monoid"

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("entries must be a square matrix")
        if self.group_tag not in GROUP_TAGS:
            raise ValueError(f"unknown group tag {self.group_tag!r}")
        object.__setattr__(self, "entries", a)
        if not in_group(a, self.group_tag):
            raise ValueError(f"matrix is not in {self.group_tag}")


def in_group(a: np.ndarray, tag: str, tol: float = TOL_MEMBERSHIP) -> bool:
    n = a.shape[0]
    if tag == "full_matrix_monoid":
        return True
    det = np.linalg.det(a)
    if tag == "general_linear":
        return abs(det) > tol
    if tag == "special_linear":
        return abs(det - 1) <= tol
    unitary = _fro(a.conj().T @ a - np.eye(n)) <= tol
    if tag == "unitary":
        return unitary
    return unitary and abs(det - 1) <= tol


@dataclass(frozen=True)
class LieAlgebraElement:
    entries: np.ndarray
    algebra_tag: str = "unitary"

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if self.algebra_tag not in ALGEBRA_TAGS:
            raise ValueError(f"unknown algebra tag {self.algebra_tag!r}")
        scale = 1 + _fro(a)
        if _fro(a + a.conj().T) > TOL_MEMBERSHIP * scale:
            raise ValueError("not anti-Hermitian")
        if self.algebra_tag == "special_unitary" and abs(np.trace(a)) > TOL_MEMBERSHIP * scale:
            raise ValueError("not traceless")
        object.__setattr__(self, "entries", a)


# -- Kaehler structure --------------------------------------------------------------


def _check_shapes(a, b):
    if np.shape(a) != np.shape(b):
        raise ValueError(f"dimension mismatch: {np.shape(a)} vs {np.shape(b)}")


def metric(a, b) -> complex:
    _check_shapes(a, b)
    return complex(np.trace(a @ np.conj(b).T))


def real_metric(a, b) -> float:
    return metric(a, b).real


def symplectic_form(a, b) -> float:
    return -metric(a, b).imag


def dual_pairing(x, y) -> float:
    """<X, Y> = -Tr(X Y), real on anti-Hermitian matrices."""
    _check_shapes(x, y)
    return float(-np.trace(x @ y).real)


def moment_map_R(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    return 1j * a.conj().T @ a


def hamiltonian(a, xi) -> float:
    """H_xi(A) = <mu(A), xi>."""
    return dual_pairing(moment_map_R(a), xi)


def right_generator(a, xi) -> np.ndarray:
    """d/dt A exp(-t xi) at t = 0."""
    return -np.asarray(a) @ xi


# -- bases of u(N) and its subalgebras ---------------------------------------------------


def u_basis(n: int) -> list[np.ndarray]:
    """Orthonormal basis of u(N) for -Tr(XY): i E_jj, then (E_jk - E_kj)/sqrt2, i(E_jk + E_kj)/sqrt2."""
    out = []
    for j in range(n):
        e = np.zeros((n, n), complex)
        e[j, j] = 1j
        out.append(e)
    for j in range(n):
        for k in range(j + 1, n):
            e = np.zeros((n, n), complex)
            e[j, k], e[k, j] = 1, -1
            out.append(e / np.sqrt(2))
            e = np.zeros((n, n), complex)
            e[j, k] = e[k, j] = 1j
            out.append(e / np.sqrt(2))
    return out


def su_basis(n: int) -> list[np.ndarray]:
    """Orthonormal basis of su(N): normalised traceless diagonals, then the off-diagonal part of u_basis."""
    out = []
    for m in range(1, n):
        d = np.zeros(n)
        d[:m] = 1
        d[m] = -m
        out.append(1j * np.diag(d) / np.sqrt(m * (m + 1)))
    return out + u_basis(n)[n:]


def split_u2_basis() -> list[np.ndarray]:
    """u(2) = centre + su(2): [iI, i sz, i sx, i sy] / sqrt2."""
    s2 = np.sqrt(2)
    return [
        1j * np.eye(2) / s2,
        1j * np.diag([1.0, -1.0]) / s2,
        1j * np.array([[0, 1], [1, 0]]) / s2,
        np.array([[0, 1], [-1, 0]], complex) / s2,
    ]


def algebra_basis(tag: str, n: int) -> list[np.ndarray]:
    if tag == "unitary":
        return u_basis(n)
    if tag == "special_unitary":
        return su_basis(n)
    raise ValueError(f"unknown algebra tag {tag!r}")


def check_orthonormal(basis, tol: float = 1e-10) -> None:
    if not basis:
        return
    gram = np.array([[dual_pairing(x, y) for y in basis] for x in basis])
    if np.max(np.abs(gram - np.eye(len(basis)))) > tol:
        raise ValueError("basis is not orthonormal for -Tr(XY)")
    for x in basis:
        if _fro(x + x.conj().T) > tol:
            raise ValueError("basis element is not anti-Hermitian")


def restrict_moment(a, basis) -> np.ndarray:
    """Coefficients of the orthogonal projection of mu(A) onto span(basis)."""
    check_orthonormal(basis)
    m = moment_map_R(a)
    return np.array([dual_pairing(m, e) for e in basis])


def combine(coeffs, basis) -> np.ndarray:
    return sum(c * e for c, e in zip(coeffs, basis))


# -- square roots, polar and Cartan decompositions --------------------------------------


def _hermitian_part(h):
    return (h + h.conj().T) / 2


def psd_sqrt(h, tol: float = TOL_PSD) -> np.ndarray:
    """Principal square root of a (near-)PSD Hermitian matrix by eigendecomposition."""
    h = _hermitian_part(np.asarray(h, dtype=complex))
    w, v = np.linalg.eigh(h)
    norm = max(_fro(h), 1e-300)
    if w.min() < -tol * norm:
        raise OutsideMomentImage(f"matrix is not positive semidefinite (smallest eigenvalue {w.min():.3e})")
    w = np.maximum(w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def hermitian_log(h) -> np.ndarray:
    h = _hermitian_part(np.asarray(h, dtype=complex))
    w, v = np.linalg.eigh(h)
    if w.min() <= 0:
        raise ValueError("matrix is singular")
    return (v * np.log(w)) @ v.conj().T


def hermitian_exp(h) -> np.ndarray:
    h = _hermitian_part(np.asarray(h, dtype=complex))
    w, v = np.linalg.eigh(h)
    return (v * np.exp(w)) @ v.conj().T


def polar_decompose(a) -> tuple[np.ndarray, np.ndarray]:
    """A = U P with P = sqrt(A* A)."""
    u, p = sla.polar(np.asarray(a, dtype=complex), side="right")
    return u, _hermitian_part(p)


def section_s(b) -> np.ndarray:
    """s(B) = sqrt(-iB), the PSD point with mu(s(B)) = B."""
    b = np.asarray(b, dtype=complex)
    return psd_sqrt(-1j * b)


def cartan_decompose(g) -> tuple[np.ndarray, np.ndarray]:
    """g = k exp(i lam) with k unitary and lam = -(i/2) log(g* g)."""
    g = np.asarray(g, dtype=complex)
    s = np.linalg.svd(g, compute_uv=False)
    if s.min() <= 1e-14 * max(s.max(), 1e-300):
        raise ValueError("g is singular")
    gg = g.conj().T @ g
    lam = -0.5j * hermitian_log(gg)
    p = hermitian_exp(1j * lam)
    k = g @ np.linalg.inv(p)
    return k, lam


# -- the SL(2) cut function -------------------------------------------------------------------


def sl2_cut_function(a) -> float:
    """sqrt(-det(A*A - Tr(A*A) I / 2)), the norm of the su(2) moment value."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    m = a.conj().T @ a
    t = m - 0.5 * np.trace(m) * np.eye(2)
    arg = float(-np.linalg.det(t).real)
    if arg < -1e-12 * max(1.0, _fro(m) ** 2):
        raise ArithmeticError(f"negative argument {arg} under the square root")
    return float(np.sqrt(max(arg, 0.0)))


# -- sections over subalgebras ---------------------------------------------------------------


def _su2_lift_residual(lam_coeffs, target, basis):
    h = combine(lam_coeffs, basis)  # anti-Hermitian lam
    a = hermitian_exp(1j * h)
    return restrict_moment(a, basis) - target, a


def section_s_L(x, algebra: str = "special_unitary", max_iter: int = 100, tol: float = 1e-12) -> np.ndarray:
    """PSD point A with mu_L(A) = x, for L = U(2) or SU(2) acting on M_2.

    For u(2) this is s itself.  For su(2) the point is exp(i lam) with lam
    in su(2), found by damped Newton on lam with a central-difference
    Jacobian.
    """
    x = np.asarray(x, dtype=float)
    if algebra == "unitary":
        basis = u_basis(2)
        if x.shape != (4,):
            raise ValueError("u(2) coefficients must have length 4")
        return section_s(combine(x, basis))
    if algebra != "special_unitary":
        raise ValueError(f"unknown algebra {algebra!r}")
    if x.shape != (3,):
        raise ValueError("su(2) coefficients must have length 3")
    if not np.all(np.isfinite(x)):
        raise OutsideMomentImage("non-finite target")
    basis = su_basis(2)
    lam = np.zeros(3)
    res, a = _su2_lift_residual(lam, x, basis)
    scale = 1 + np.linalg.norm(x)
    for _ in range(max_iter):
        if np.linalg.norm(res) <= tol * scale:
            return a
        jac = np.empty((3, 3))
        h = 1e-6
        for k in range(3):
            e = np.zeros(3)
            e[k] = h
            jac[:, k] = (_su2_lift_residual(lam + e, x, basis)[0] - _su2_lift_residual(lam - e, x, basis)[0]) / (2 * h)
        step = np.linalg.lstsq(jac, -res, rcond=None)[0]
        t = 1.0
        while t > 1e-8:
            new_res, new_a = _su2_lift_residual(lam + t * step, x, basis)
            if np.linalg.norm(new_res) < np.linalg.norm(res):
                break
            t /= 2
        else:
            break
        lam, res, a = lam + t * step, new_res, new_a
    if np.linalg.norm(res) <= 1e-9 * scale:
        return a
    raise OutsideMomentImage(f"Newton did not converge (residual {np.linalg.norm(res):.3e})")


# -- T^top for S = M_2 -----------------------------------------------------------------


def t_top_base(gamma: float, xi: float) -> np.ndarray:
    """s(B) for B = gamma i sz/sqrt2 + xi iI/sqrt2; needs xi >= |gamma|, gamma >= 0."""
    if gamma < 0:
        raise OutsideMomentImage("gamma must be dominant (nonnegative)")
    basis = split_u2_basis()
    b = xi * basis[0] + gamma * basis[1]
    return section_s(b)


def t_top(k, gamma: float, xi: float) -> np.ndarray:
    """k . s(gamma, xi) in S = M_2 with K = SU(2) and the centre U(1) as the extra torus."""
    k = np.asarray(k, dtype=complex)
    if not in_group(k, "unitary"):
        raise ValueError("k is not unitary")
    return k @ t_top_base(gamma, xi)


def t_top_moments(a) -> tuple[float, float]:
    """(Phi_K value, centre component) of mu(A) in the split basis."""
    c = restrict_moment(a, split_u2_basis())
    return float(np.linalg.norm(c[1:])), float(c[0])


# -- random sampling -----------------------------------------------------------------


def rng_for(seed: int, trial: int) -> np.random.Generator:
    """Independent counter-based stream per (seed, trial)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def random_complex(rng, n: int, m: int | None = None) -> np.ndarray:
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2)


def random_anti_hermitian(rng, n: int, traceless: bool = False) -> np.ndarray:
    g = random_complex(rng, n)
    x = (g - g.conj().T) / 2
    if traceless:
        x -= np.trace(x) / n * np.eye(n)
    return x


def random_unitary(rng, n: int, special: bool = False) -> np.ndarray:
    q, r = np.linalg.qr(random_complex(rng, n))
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    if special:
        q = q / np.linalg.det(q) ** (1.0 / n)
    return q


def random_psd(rng, n: int) -> np.ndarray:
    g = random_complex(rng, n)
    return g @ g.conj().T
