"""Command-line front end: ``qfactor {generate,check,factorize,subsets,entropy,couple,bench}``.

Exit codes: 0 on success (``check``: product), 1 when ``check`` finds an
entangled state, 2 on any error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys
import time
from io import StringIO

import numpy as np

from .criterion import (
    ZeroCoefficientError,
    alt_subset_indices,
    check_subsets,
    constraint_count,
    subset_indices,
)
from .factorize import factorize
from .io import StateFileError, read_state, state_to_json, write_state
from .oracle import MAX_SCHMIDT_QUBITS, entropy_report, oracle_is_product
from .state import (
    DegenerateStateError,
    Tolerances,
    make_basis_state,
    named_state,
    random_product_state,
    random_state,
)
from .transforms import entanglement_sweep, sweep_to_csv

EXIT_OK, EXIT_ENTANGLED, EXIT_ERROR = 0, 1, 2
DEFAULT_MAX_N = 26
ORACLE_BENCH_MAX_N = 12
_MODES = {"strict": "strict_paper", "projective": "projective"}


class CliError(Exception):
    pass


def max_n() -> int:
    raw = os.environ.get("QFACTOR_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"QFACTOR_MAX_N must be an integer, got {raw!r}") from None


def _guard_n(n: int, lo: int = 1) -> int:
    limit = max_n()
    if not lo <= n <= limit:
        raise CliError(f"N must lie in [{lo}, {limit}], got {n} (QFACTOR_MAX_N sets the ceiling)")
    return n


def _tolerances(args) -> Tolerances:
    try:
        return Tolerances(rel_tol=args.tol, zero_tol=args.zero_tol)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _load(args):
    if args.inp is None:
        raise CliError("--in PATH is required")
    state = read_state(args.inp)
    _guard_n(state.num_qubits)
    return state


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


_NUM = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*\*?\s*(pi)?\s*$")


def _parse_angle(text: str) -> float:
    m = _NUM.match(text)
    if m is None or (m.group(1) is None and m.group(2) is None):
        raise CliError(f"cannot parse angle {text!r}")
    value = float(m.group(1)) if m.group(1) is not None else 1.0
    return value * math.pi if m.group(2) else value


def parse_grid(spec: str) -> np.ndarray:
    """``"start:stop:steps"`` -> ``steps`` evenly spaced points including both ends.

    Endpoints accept a ``pi`` suffix, e.g. ``"0:8pi:33"``.
    """
    parts = spec.split(":")
    if len(parts) != 3:
        raise CliError(f"--a-grid must look like start:stop:steps, got {spec!r}")
    try:
        steps = int(parts[2])
    except ValueError:
        raise CliError(f"steps must be an integer, got {parts[2]!r}") from None
    if steps < 1:
        raise CliError("steps must be >= 1")
    return np.linspace(_parse_angle(parts[0]), _parse_angle(parts[1]), steps)


def parse_range(spec: str) -> list[int]:
    """``"lo:hi"`` (inclusive) or a single integer."""
    try:
        if ":" in spec:
            lo, hi = (int(x) for x in spec.split(":"))
        else:
            lo = hi = int(spec)
    except ValueError:
        raise CliError(f"expected N or lo:hi, got {spec!r}") from None
    if lo > hi:
        raise CliError(f"empty range {spec!r}")
    return list(range(lo, hi + 1))


def cmd_generate(args) -> int:
    n = _guard_n(args.n)
    kind = args.kind
    if kind == "product":
        _, state = random_product_state(n, args.seed)
    elif kind == "random":
        state = random_state(n, args.seed)
    elif kind == "basis":
        pattern = args.pattern if args.pattern is not None else "+" * n
        state = make_basis_state(n, pattern)
    else:
        state = named_state(kind, n)
    if args.out is None:
        sys.stdout.write(json.dumps(state_to_json(state)) + "\n")
    else:
        write_state(state, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    tol = _tolerances(args)
    state = _load(args)
    report = None
    if state.num_qubits >= 2:
        report = check_subsets(state, tol, _MODES[args.mode], alt=args.alt)
    outcome = factorize(state, tol)
    result = {
        "n": state.num_qubits,
        "verdict": outcome.verdict,
        "constraint_count": constraint_count(state.num_qubits) if state.num_qubits >= 2 else 0,
        "subsets": report.to_dict() if report is not None else None,
        "factorization": outcome.to_dict(),
    }
    _emit(_dumps(result), args.out)
    return EXIT_OK if outcome.is_product else EXIT_ENTANGLED


def cmd_factorize(args) -> int:
    outcome = factorize(_load(args), _tolerances(args))
    _emit(_dumps(outcome.to_dict()), args.out)
    return EXIT_OK


def cmd_subsets(args) -> int:
    n = _guard_n(args.n, lo=2)
    ks = [args.k] if args.k is not None else range(1, n)
    # The odd-index variant leaves family 1 unchanged.
    families = [
        alt_subset_indices(n, k) if args.alt and k >= 2 else subset_indices(n, k) for k in ks
    ]
    if args.json:
        obj = {
            "n": n,
            "constraint_count": constraint_count(n),
            "subsets": [
                {"k": f.k, "alt": f.alt, "pairs": f.pairs.tolist()} for f in families
            ],
        }
        _emit(_dumps(obj), args.out)
    else:
        _emit("".join(f.describe(full=args.full) + "\n" for f in families), args.out)
    return EXIT_OK


def cmd_entropy(args) -> int:
    state = _load(args)
    cuts = None
    if args.cut:
        if state.num_qubits > MAX_SCHMIDT_QUBITS:
            raise CliError(f"Schmidt cuts are limited to N <= {MAX_SCHMIDT_QUBITS}")
        try:
            cuts = [[int(q) for q in c.split(",")] for c in args.cut]
        except ValueError:
            raise CliError("--cut takes comma-separated qubit labels, e.g. 1,2") from None
    report = entropy_report(state, cuts)
    _emit(_dumps(report.to_dict()), args.out)
    return EXIT_OK


def cmd_couple(args) -> int:
    grid = parse_grid(args.a_grid)
    _emit(sweep_to_csv(entanglement_sweep(grid)), args.out)
    return EXIT_OK


def bench_rows(ns, reps: int, seed: int, tol: Tolerances = Tolerances()):
    """Mean wall times per N over ``reps`` fresh random product states."""
    rows = []
    for n in ns:
        t_check = t_fact = t_oracle = 0.0
        use_oracle = n <= ORACLE_BENCH_MAX_N
        for r in range(reps):
            _, state = random_product_state(n, [seed, n, r])
            t0 = time.perf_counter()
            check_subsets(state, tol, "projective")
            t1 = time.perf_counter()
            factorize(state, tol)
            t2 = time.perf_counter()
            if use_oracle:
                oracle_is_product(state, tol)
            t3 = time.perf_counter()
            t_check += t1 - t0
            t_fact += t2 - t1
            t_oracle += t3 - t2
        rows.append(
            {
                "n": n,
                "constraint_count": constraint_count(n),
                "reps": reps,
                "check_subsets_s": t_check / reps,
                "factorize_s": t_fact / reps,
                "oracle_s": t_oracle / reps if use_oracle else None,
            }
        )
    return rows


def cmd_bench(args) -> int:
    ns = parse_range(args.n_range)
    for n in ns:
        _guard_n(n, lo=2)
    if args.reps < 1:
        raise CliError("--reps must be >= 1")
    rows = bench_rows(ns, args.reps, args.seed, _tolerances(args))
    fields = ["n", "constraint_count", "reps", "check_subsets_s", "factorize_s", "oracle_s"]
    buf = StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: ("" if v is None else v) for k, v in row.items()})
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfactor",
        description="Product/entangled decisions for pure N-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def tol_flags(p):
        p.add_argument("--tol", type=float, default=Tolerances.rel_tol, help="proportionality residual bound")
        p.add_argument("--zero-tol", type=float, default=Tolerances.zero_tol, help="relative zero threshold")

    def io_flags(p, need_in=True):
        if need_in:
            p.add_argument("--in", dest="inp", metavar="PATH", help="state file (JSON)")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    p = sub.add_parser("generate", help="write a state file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--kind",
        default="product",
        choices=["product", "random", "basis", "ghz", "w", "bell_phi_plus"],
    )
    p.add_argument("--pattern", help="sign pattern for --kind basis, e.g. +-+")
    io_flags(p, need_in=False)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", help="subset residual report plus the factorization verdict")
    io_flags(p)
    tol_flags(p)
    p.add_argument("--mode", choices=sorted(_MODES), default="projective")
    p.add_argument("--alt", action="store_true", help="use the odd-index families for k >= 2")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("factorize", help="product decomposition or entanglement witness")
    io_flags(p)
    tol_flags(p)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("subsets", help="list the equality families")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--alt", action="store_true")
    p.add_argument("--json", action="store_true", help="emit JSON with every pair")
    p.add_argument("--full", action="store_true", help="do not elide long ratio chains")
    io_flags(p, need_in=False)
    p.set_defaults(func=cmd_subsets)

    p = sub.add_parser("entropy", help="per-qubit purity/entropy and Schmidt coefficients")
    io_flags(p)
    p.add_argument("--cut", action="append", help="qubits on one side of a cut, e.g. 1,2 (repeatable)")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("couple", help="sweep the coupling angle on |+->, CSV out")
    p.add_argument("--a-grid", default="0:8pi:33", help="start:stop:steps (default 0:8pi:33)")
    io_flags(p, need_in=False)
    p.set_defaults(func=cmd_couple)

    p = sub.add_parser("bench", help="timing table, CSV out")
    p.add_argument("--n", dest="n_range", default="2:20", help="N or lo:hi (default 2:20)")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    tol_flags(p)
    io_flags(p, need_in=False)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, StateFileError, DegenerateStateError, ZeroCoefficientError) as exc:
        print(f"qfactor: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError, MemoryError) as exc:
        print(f"qfactor: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
