"""
Scaling up
==========

Both the subset scan and the peel touch each amplitude a constant number
of times, so the cost doubles with every added qubit.  The oracle needs
partial traces and is only used at small N.
"""

import sys

import qfactor as qf
from qfactor.cli import bench_rows

top = int(sys.argv[1]) if len(sys.argv) > 1 else 20
rows = bench_rows(range(10, top + 1), reps=3, seed=0)
print(" N   equalities   check_subsets   factorize     oracle")
for r in rows:
    oracle = f"{r['oracle_s'] * 1e3:8.2f} ms" if r["oracle_s"] is not None else "       -"
    print(
        f"{r['n']:2d} {r['constraint_count']:12d} {r['check_subsets_s'] * 1e3:12.2f} ms"
        f" {r['factorize_s'] * 1e3:9.2f} ms {oracle}"
    )

_, big = qf.random_product_state(top, seed=3)
out = qf.factorize(big)
print(f"\nN={top}: {out.verdict}, max residual {out.max_residual:.1e}")
