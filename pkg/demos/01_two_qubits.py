"""
Two qubits: when is a ket a product?
====================================

For N = 2 a pure state is a product exactly when c1 c4 = c2 c3.  The
residual |c1 c4 - c2 c3| (on the normalized state) is zero for products
and reaches 1/2 for a Bell state.  The single-qubit marginal purity tells
the same story from the density-matrix side.
"""

import numpy as np

import qfactor as qf

# A hand-made product: (0.6|+> + 0.8|->) ⊗ (|+> - i|->)/√2
prod = qf.tensor([(0.6, 0.8), (1 / np.sqrt(2), -1j / np.sqrt(2))])
bell = qf.named_state("bell_phi_plus", 2)

for name, s in [("product", prod), ("bell", bell)]:
    rho1 = qf.single_qubit_marginals(s)[0]
    print(f"{name:8s} residual={qf.check_n2(s):.3g}  purity(qubit 1)={qf.purity(rho1):.3f}")

# Sliding from product to maximally entangled
print("\n  t    residual   purity")
for t in np.linspace(0, 1, 6):
    amps = np.array([1, 0, 0, t])
    s = qf.normalize(qf.StateVector(amps))
    print(f"{t:4.1f}  {qf.check_n2(s):9.4f}  {qf.purity(qf.single_qubit_marginals(s)[0]):7.4f}")
