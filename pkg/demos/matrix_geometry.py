"""Numerical side: moment maps and sections on 2x2 matrices.

    python3 demos/matrix_geometry.py
"""
import numpy as np

from symcut import matnum as mn
from symcut import verify as vf

rng = mn.rng_for(vf.DEFAULT_SEED, 0)
a = mn.random_complex(rng, 2)
b = mn.moment_map_R(a)
print("mu(A) = i A*A is anti-Hermitian:", np.allclose(b, -b.conj().T))
u, p = mn.polar_decompose(a)
print("s(mu(A)) equals the polar factor P:", np.allclose(mn.section_s(b), p))

# the SL(2) cut function is the norm of the su(2) part of mu
for s in (1.5, 3.0):
    g = np.diag([s, 1 / s])
    print(f"f(diag({s}, 1/{s})) = {mn.sl2_cut_function(g):.6f}, (a^2 - a^-2)/2 = {(s * s - s ** -2) / 2:.6f}")

# on singular matrices its Hamiltonian field is a multiple of the scalar rotation A -> iA
e11 = np.array([[1, 0], [0, 0]], complex)
print("\nHamiltonian field of f at E11:", vf.sl2_hamiltonian_point(e11))
rep = vf.suite_sl2_hamiltonian(trials=50)
print(f"over 50 random rank-1 points: c = {rep['c_mean']:.8f}, coefficient of variation "
      f"{rep['checks']['sl2_cv']['max_residual']:.1e}")

# a point of T^top with prescribed moment values
gamma, xi = 0.7, 1.5
pt = mn.t_top(mn.random_unitary(rng, 2, special=True), gamma, xi)
print("\nT^top point moments (Phi_K, centre):", tuple(round(v, 12) for v in mn.t_top_moments(pt)))
