"""
The subset families for N qubits
================================

An N-qubit ket is a product iff N - 1 families of coefficient equalities
hold.  Family S_k pairs c_a with c_b where a = (2j-1)·2^(k-1), b = 2j·2^(k-1).
Counting independent equalities gives 2^N - (N + 1).
"""

import qfactor as qf

for n in (3, 4, 7):
    print(f"N = {n}  ({qf.constraint_count(n)} independent equalities)")
    for k in range(1, n):
        print("   ", qf.subset_indices(n, k).describe())
    print()

# Odd-index variant: same verdicts, no even indices for k >= 2
print("odd-index variant, N = 3:", qf.alt_subset_indices(3, 2).describe())
print("odd-index variant, N = 6:", qf.alt_subset_indices(6, 5).describe())

# Checking a random product and a random state against all families
_, prod = qf.random_product_state(5, seed=1)
rand = qf.random_state(5, seed=1)
for name, s in [("product", prod), ("random", rand)]:
    rep = qf.check_subsets(s, mode="strict_paper")
    worst = ", ".join(f"S_{r.k}={r.max_residual:.1e}" for r in rep.per_subset)
    print(f"{name:8s} {rep.verdict:10s} {worst}")
