"""
Entangling two qubits with an Ising-type coupling
=================================================

Start from |+-> and apply exp(i a s1x s2x).  The state is entangled for
most a, returns to a product at multiples of 2π (up to phase at 4π), and
the whole picture repeats with period 4π.
"""

import numpy as np

import qfactor as qf

grid = np.linspace(0, 8 * np.pi, 17)
print("   a/pi   residual  purity")
for p in qf.entanglement_sweep(grid):
    bar = "#" * int(round(40 * p.residual))
    print(f"{p.a / np.pi:7.2f}  {p.residual:8.4f}  {p.purity:6.4f}  {bar}")

# Local unitaries never change the verdict
rng = np.random.default_rng(0)
s = qf.coupling_unitary(qf.make_basis_state(2, "+-"), 1.3)
us = [qf.random_unitary(int(rng.integers(1 << 30))) for _ in range(2)]
t = qf.apply_local_unitary(s, us)
print("\nbefore LU:", qf.factorize(s).verdict, " after LU:", qf.factorize(t).verdict)
