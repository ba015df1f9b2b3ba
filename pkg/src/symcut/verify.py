"""Randomised numerical verification suites for the matrix geometry.

Every trial draws from its own counter-based stream keyed by
(seed, trial), so reports do not depend on execution order.  Reports are
plain dicts {suite, seed, trials, max_residual, pass, ...}.
"""
from __future__ import annotations

from typing import Callable

import numpy as np
import scipy.linalg as sla

from . import matnum as mn

DEFAULT_SEED = 20240917

DEFAULT_TOLERANCES = {
    "kahler": 1e-12,
    "hamiltonian": 1e-6,
    "lagrangian": 1e-6,
    "moment_section": 1e-8,
    "section_polar": 1e-9,
    "cartan_polar": 1e-9,
    "cartan_equivariance": 1e-9,
    "fiber_forward": 1e-10,
    "fiber_invertible": 1e-9,
    "fiber_rank1": 1e-7,
    "sl2_cv": 1e-4,
    "sl2_tangential": 1e-5,
    "sl2_conservation": 1e-6,
    "section_L": 1e-7,
    "t_top": 1e-7,
    "t_top_invariance": 1e-10,
}


def tolerances(overrides: dict | None = None) -> dict:
    tol = dict(DEFAULT_TOLERANCES)
    for k, v in (overrides or {}).items():
        if k not in tol:
            raise KeyError(f"unknown tolerance key {k!r}")
        tol[k] = float(v)
    return tol


def _report(suite: str, seed: int, trials: int, checks: dict, tol: dict, extra: dict | None = None) -> dict:
    """checks maps tolerance key -> max residual observed."""
    passed = all(checks[k] <= tol[k] for k in checks)
    out = {
        "suite": suite,
        "seed": seed,
        "trials": trials,
        "max_residual": max(checks.values()) if checks else 0.0,
        "pass": bool(passed),
        "checks": {k: {"max_residual": checks[k], "tolerance": tol[k], "pass": bool(checks[k] <= tol[k])}
                   for k in sorted(checks)},
    }
    if extra:
        out.update(extra)
    return out


def richardson(d: Callable[[float], float], h: float) -> float:
    """One level of Richardson extrapolation for a second-order difference quotient."""
    return (4 * d(h / 2) - d(h)) / 3


def directional_derivative(f: Callable, a: np.ndarray, y: np.ndarray, h: float | None = None) -> float:
    if h is None:
        h = 1e-4 * (1 + np.linalg.norm(a))
    return richardson(lambda s: (f(a + s * y) - f(a - s * y)) / (2 * s), h)


def mixed_partial(f: Callable[[float, float], float], h: float = 1e-4) -> float:
    def d(s):
        return (f(s, s) - f(s, -s) - f(-s, s) + f(-s, -s)) / (4 * s * s)

    return richardson(d, h)


# -- suites ------------------------------------------------------------------------------


def suite_kahler(n: int = 3, trials: int = 100, seed: int = DEFAULT_SEED, tol: dict | None = None) -> dict:
    """Antisymmetry and compatibility of omega_E, R-equivariance of mu, unitary invariance of f."""
    tol = tolerances(tol)
    worst = {"kahler": 0.0}
    for t in range(trials):
        rng = mn.rng_for(seed, t)
        x, y = mn.random_complex(rng, n), mn.random_complex(rng, n)
        s = np.linalg.norm(x) * np.linalg.norm(y)
        r = abs(mn.symplectic_form(x, y) + mn.symplectic_form(y, x)) / s
        r = max(r, abs(mn.symplectic_form(x, y) - mn.real_metric(1j * x, y)) / s)
        u = mn.random_unitary(rng, n)
        m = mn.moment_map_R(x)
        r = max(r, np.linalg.norm(mn.moment_map_R(x @ u) - u.conj().T @ m @ u) / max(np.linalg.norm(m), 1e-300))
        a = mn.random_complex(rng, 2)
        u2, v2 = mn.random_unitary(rng, 2), mn.random_unitary(rng, 2)
        fa = mn.sl2_cut_function(a)
        r = max(r, abs(mn.sl2_cut_function(u2 @ a @ v2) - fa) / max(1.0, fa))
        worst["kahler"] = max(worst["kahler"], float(r))
    return _report("kahler", seed, trials, worst, tol, {"n": n})


def suite_hamiltonian(n: int = 3, trials: int = 100, seed: int = DEFAULT_SEED, tol: dict | None = None) -> dict:
    """dH_xi(Y) = 2 omega_E(X_xi, Y) with X_xi = -A xi, by central differences."""
    tol = tolerances(tol)
    worst = 0.0
    for t in range(trials):
        rng = mn.rng_for(seed, t)
        a, y = mn.random_complex(rng, n), mn.random_complex(rng, n)
        xi = mn.random_anti_hermitian(rng, n)
        dh = directional_derivative(lambda b: mn.hamiltonian(b, xi), a, y)
        rhs = 2 * mn.symplectic_form(mn.right_generator(a, xi), y)
        scale = np.linalg.norm(a) * np.linalg.norm(xi) * np.linalg.norm(y)
        worst = max(worst, abs(dh - rhs) / scale)
    return _report("hamiltonian", seed, trials, {"hamiltonian": float(worst)}, tol, {"n": n, "factor": 2})


def lagrangian_trial(lam, nu, xi, k, h: float = 1e-4) -> tuple[float, float, float]:
    """(mixed partial of Im Tr, its scale, omega_E on finite-differenced fiber tangents)."""

    def e(x):
        return sla.expm(1j * x)

    def f(t, s):
        return float(np.trace(e(lam + t * nu) @ e(lam + s * xi)).imag)

    value = mixed_partial(f, h)
    scale = np.linalg.norm(nu) * np.linalg.norm(xi) * np.linalg.norm(e(lam)) ** 2
    t1 = k @ (e(lam + h * nu) - e(lam - h * nu)) / (2 * h)
    t2 = k @ (e(lam + h * xi) - e(lam - h * xi)) / (2 * h)
    norm = np.linalg.norm(t1) * np.linalg.norm(t2)
    omega = abs(mn.symplectic_form(t1, t2)) / norm if norm > 0 else 0.0
    return value, scale, omega


def suite_lagrangian(n: int = 2, trials: int = 100, seed: int = DEFAULT_SEED, tol: dict | None = None) -> dict:
    if n > 6:
        raise ValueError("N must be at most 6")
    tol = tolerances(tol)
    worst, control = 0.0, 0.0
    for t in range(trials):
        rng = mn.rng_for(seed, t)
        lam, nu, xi = (mn.random_anti_hermitian(rng, n) for _ in range(3))
        k = mn.random_unitary(rng, n)
        value, scale, omega = lagrangian_trial(lam, nu, xi, k)
        worst = max(worst, abs(value) / scale, omega)
        # the real part has a nonzero mixed partial: evidence the difference scheme is live
        re = mixed_partial(lambda a, b: float(np.trace(sla.expm(1j * (lam + a * nu)) @ sla.expm(1j * (lam + b * xi))).real))
        control = max(control, abs(re) / scale)
    return _report("lagrangian", seed, trials, {"lagrangian": float(worst)}, tol,
                   {"n": n, "control_real_part": float(control)})


def suite_moment_section(n: int = 3, trials: int = 200, seed: int = DEFAULT_SEED, tol: dict | None = None) -> dict:
    tol = tolerances(tol)
    w = {"moment_section": 0.0, "section_polar": 0.0, "cartan_polar": 0.0, "cartan_equivariance": 0.0}
    for t in range(trials):
        rng = mn.rng_for(seed, t)
        cols = n if t % 4 else n - 1  # every fourth target is singular
        g = mn.random_complex(rng, n, cols)
        b = 1j * (g @ g.conj().T)
        w["moment_section"] = max(w["moment_section"],
                                  np.linalg.norm(mn.moment_map_R(mn.section_s(b)) - b) / np.linalg.norm(b))
        a = mn.random_complex(rng, n)
        _, p = mn.polar_decompose(a)
        w["section_polar"] = max(w["section_polar"],
                                 np.linalg.norm(mn.section_s(mn.moment_map_R(a)) - p) / np.linalg.norm(a))
        k, lam = mn.cartan_decompose(a)
        ex = mn.hermitian_exp(1j * lam)
        w["cartan_polar"] = max(w["cartan_polar"], np.linalg.norm(ex - p) / np.linalg.norm(a),
                                np.linalg.norm(a - k @ ex) / np.linalg.norm(a))
        k1, k2 = mn.random_unitary(rng, n), mn.random_unitary(rng, n)
        kk, ll = mn.cartan_decompose(k1 @ a @ k2.conj().T)
        w["cartan_equivariance"] = max(w["cartan_equivariance"],
                                       np.linalg.norm(kk - k1 @ k @ k2.conj().T),
                                       np.linalg.norm(ll - k2 @ lam @ k2.conj().T) / max(1.0, np.linalg.norm(lam)))
    return _report("moment_section", seed, trials, {k: float(v) for k, v in w.items()}, tol, {"n": n})


def procrustes(a, b, special: bool = False) -> np.ndarray:
    """Unitary (or special unitary) k minimising ||k a - b||."""
    w, _, zh = np.linalg.svd(b @ a.conj().T)
    if special:
        d = np.linalg.det(w @ zh)
        w = w.copy()
        w[:, -1] *= np.conj(d)
    return w @ zh


def suite_fiber_orbit(tag: str = "unitary", trials: int = 100, seed: int = DEFAULT_SEED, tol: dict | None = None,
                      n: int = 2) -> dict:
    if tag not in mn.ALGEBRA_TAGS:
        raise ValueError(f"unknown subgroup {tag!r}")
    tol = tolerances(tol)
    special = tag == "special_unitary"
    basis = mn.algebra_basis(tag, n)
    group = "special_unitary" if special else "unitary"
    w = {"fiber_forward": 0.0, "fiber_invertible": 0.0, "fiber_rank1": 0.0}
    for t in range(trials):
        rng = mn.rng_for(seed, t)
        a = mn.random_complex(rng, n)
        k = mn.random_unitary(rng, n, special)
        w["fiber_forward"] = max(w["fiber_forward"], np.linalg.norm(
            mn.restrict_moment(k @ a, basis) - mn.restrict_moment(a, basis)))
        b = k @ a
        k_hat = b @ np.linalg.inv(a)
        member = np.linalg.norm(k_hat.conj().T @ k_hat - np.eye(n))
        if special:
            member = max(member, abs(np.linalg.det(k_hat) - 1))
        u, _ = mn.polar_decompose(a)
        w["fiber_invertible"] = max(w["fiber_invertible"], member, np.linalg.norm(b - k_hat @ a),
                                    np.linalg.norm(a - u @ mn.section_s(mn.moment_map_R(a))))
        a1 = mn.random_complex(rng, n, 1) @ mn.random_complex(rng, 1, n)
        b1 = k @ a1
        k1 = procrustes(a1, b1, special)
        ok = mn.in_group(k1, group)
        w["fiber_rank1"] = max(w["fiber_rank1"], np.linalg.norm(k1 @ a1 - b1), 0.0 if ok else np.inf)
    return _report(f"fiber_orbit_{tag}", seed, trials, {k: float(v) for k, v in w.items()}, tol,
                   {"n": n, "subgroup": tag})


def _real_basis_m2() -> list[np.ndarray]:
    out = []
    for j in range(2):
        for k in range(2):
            e = np.zeros((2, 2), complex)
            e[j, k] = 1
            out += [e, 1j * e]
    return out


def sl2_hamiltonian_point(a: np.ndarray) -> dict:
    """Solve omega_E(X_f, .) = df on the tangent space of {det = 0} at a rank-1 A."""
    a = np.asarray(a, dtype=complex)
    if np.linalg.norm(a) < 1e-12:
        raise ValueError("degenerate tangent frame at A = 0")
    adj = np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]])
    basis = _real_basis_m2()
    diff = np.array([[np.trace(adj @ y).real for y in basis], [np.trace(adj @ y).imag for y in basis]])
    kern = sla.null_space(diff)
    if kern.shape[1] != 6:
        raise ValueError("det = 0 is not smooth at A")
    tangents = [sum(c * y for c, y in zip(col, basis)) for col in kern.T]
    omega = np.array([[mn.symplectic_form(u, v) for v in tangents] for u in tangents])
    df = np.array([directional_derivative(mn.sl2_cut_function, a, y) for y in tangents])
    coeffs = np.linalg.solve(omega.T, df)
    x_f = sum(c * y for c, y in zip(coeffs, tangents))
    rot = 1j * a
    c = mn.real_metric(x_f, rot) / mn.real_metric(rot, rot)
    tangential = np.linalg.norm(x_f - c * rot) / np.linalg.norm(x_f)
    conservation = abs(directional_derivative(mn.sl2_cut_function, a, x_f / np.linalg.norm(x_f))) / np.linalg.norm(df)
    return {"c": float(c), "tangential": float(tangential), "conservation": float(conservation)}


def suite_sl2_hamiltonian(trials: int = 50, seed: int = DEFAULT_SEED, tol: dict | None = None) -> dict:
    tol = tolerances(tol)
    cs, tang, cons = [], 0.0, 0.0
    for t in range(trials):
        rng = mn.rng_for(seed, t)
        a = mn.random_complex(rng, 2, 1) @ mn.random_complex(rng, 1, 2)
        r = sl2_hamiltonian_point(a)
        cs.append(r["c"])
        tang = max(tang, r["tangential"])
        cons = max(cons, r["conservation"])
    cs = np.array(cs)
    mean = float(cs.mean())
    cv = float(cs.std() / abs(mean))
    checks = {"sl2_cv": cv, "sl2_tangential": tang, "sl2_conservation": cons}
    extra = {
        "c_mean": mean,
        "abs_c": abs(mean),
        "expected_factor": 0.5,
        "deviation_from_half": abs(abs(mean) - 0.5),
        "soft_check_half": bool(abs(abs(mean) - 0.5) <= 1e-3),
    }
    return _report("sl2_hamiltonian", seed, trials, checks, tol, extra)


def suite_section_L(trials: int = 100, seed: int = DEFAULT_SEED, tol: dict | None = None) -> dict:
    tol = tolerances(tol)
    worst = 0.0
    su, u = mn.su_basis(2), mn.u_basis(2)
    for t in range(trials):
        rng = mn.rng_for(seed, t)
        x = 2 * rng.standard_normal(3)
        a = mn.section_s_L(x, "special_unitary")
        hermitian = np.linalg.norm(a - a.conj().T) + max(0.0, -np.linalg.eigvalsh(mn._hermitian_part(a)).min())
        worst = max(worst, np.linalg.norm(mn.restrict_moment(a, su) - x) / (1 + np.linalg.norm(x)), hermitian)
        b = 1j * mn.random_psd(rng, 2)
        xu = np.array([mn.dual_pairing(b, e) for e in u])
        a = mn.section_s_L(xu, "unitary")
        worst = max(worst, np.linalg.norm(mn.restrict_moment(a, u) - xu) / (1 + np.linalg.norm(xu)))
    return _report("section_L", seed, trials, {"section_L": float(worst)}, tol)


def suite_t_top(trials: int = 100, seed: int = DEFAULT_SEED, tol: dict | None = None) -> dict:
    tol = tolerances(tol)
    w = {"t_top": 0.0, "t_top_invariance": 0.0}
    injective = True
    for t in range(trials):
        rng = mn.rng_for(seed, t)
        gamma = 2 * rng.random()
        xi = gamma + 2 * rng.random()
        k1, k2 = mn.random_unitary(rng, 2, True), mn.random_unitary(rng, 2, True)
        a1, a2 = mn.t_top(k1, gamma, xi), mn.t_top(k2, gamma, xi)
        phi, centre = mn.t_top_moments(a1)
        w["t_top"] = max(w["t_top"], abs(phi - gamma), abs(centre - xi))
        w["t_top_invariance"] = max(w["t_top_invariance"],
                                    np.linalg.norm(mn.moment_map_R(a1) - mn.moment_map_R(a2)))
        gamma2 = 2 * rng.random()
        xi2 = gamma2 + 2 * rng.random()
        _, p1 = mn.polar_decompose(a1)
        _, p2 = mn.polar_decompose(mn.t_top(k1, gamma2, xi2))
        if np.linalg.norm(p1 - p2) < 1e-6 * (1 + np.linalg.norm(p1)):
            injective = False
    report = _report("t_top", seed, trials, {k: float(v) for k, v in w.items()}, tol, {"injective": injective})
    report["pass"] = bool(report["pass"] and injective)
    return report


SUITES = ("kahler", "hamiltonian", "lagrangian", "moment_section", "fiber_orbit", "sl2_hamiltonian",
          "section_L", "t_top")


def run_suite(name: str, seed: int = DEFAULT_SEED, trials: int | None = None, n: int | None = None,
              subgroup: str | None = None, tol: dict | None = None) -> list[dict]:
    """Run one suite; returns a list because some suites cover several cases."""
    kw = {"seed": seed, "tol": tol}
    if trials is not None:
        kw["trials"] = trials
    if name == "kahler":
        return [suite_kahler(n or 3, **kw)]
    if name == "hamiltonian":
        return [suite_hamiltonian(n or 3, **kw)]
    if name == "lagrangian":
        return [suite_lagrangian(m, **kw) for m in ([n] if n else [2, 3, 4])]
    if name == "moment_section":
        return [suite_moment_section(n or 3, **kw)]
    if name == "fiber_orbit":
        return [suite_fiber_orbit(tag, **kw) for tag in ([subgroup] if subgroup else list(mn.ALGEBRA_TAGS))]
    if name == "sl2_hamiltonian":
        return [suite_sl2_hamiltonian(**kw)]
    if name == "section_L":
        return [suite_section_L(**kw)]
    if name == "t_top":
        return [suite_t_top(**kw)]
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def run_all(seed: int = DEFAULT_SEED, tol: dict | None = None, trials: int | None = None) -> list[dict]:
    out = []
    for name in SUITES:
        out += run_suite(name, seed=seed, trials=trials, tol=tol)
    return out
