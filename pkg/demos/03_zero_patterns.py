"""
Zero coefficients
=================

Ratio chains break down when coefficients vanish.  Cross products keep
working for isolated zeros, but some zero lattices fool every pairwise
test.  The recursive peel (factorize) handles all of them, and the
reduced-density oracle agrees.
"""

import numpy as np

import qfactor as qf

h = 1 / np.sqrt(2)

cases = {
    # c5 = 0 but c6 != 0: the |-+> branch survives only next to |->, so entangled
    "c5=0, c6=0.3": qf.normalize(qf.StateVector([0.4, 0.3, 0.2, 0.5, 0.0, 0.3, 0.1, 0.2])),
    # Zeroing both restores a product: qubit 1 in |+>
    "qubit 1 = |+>": qf.tensor([(1, 0), (0.6, 0.8), (h, h)]),
    # Bell pair on qubits 1, 2 next to |+>: every cross product vanishes
    "bell12 ⊗ |+>": qf.StateVector([h, 0, 0, 0, 0, 0, h, 0]),
    "ghz(3)": qf.named_state("ghz", 3),
    "w(3)": qf.named_state("w", 3),
}

print(f"{'state':15s} {'projective':11s} {'factorize':10s} {'oracle':10s} witness")
for name, s in cases.items():
    screen = qf.check_subsets(s, mode="projective").verdict
    out = qf.factorize(s)
    oracle = "product" if qf.oracle_is_product(s) else "entangled"
    wit = ""
    if out.witness is not None:
        w = out.witness
        wit = f"S_{w.subset_k}: pair {w.pair} vs anchor {w.anchor_pair}"
    print(f"{name:15s} {screen:11s} {out.verdict:10s} {oracle:10s} {wit}")

# strict_paper mode refuses to divide by zero and says where
try:
    qf.check_subsets(qf.named_state("bell_phi_plus", 2), mode="strict_paper")
except qf.ZeroCoefficientError as exc:
    print("\nstrict mode:", exc)
