"""Local unitaries and the two-qubit coupling ``exp(i a s1x s2x)``.

A tensor product of single-qubit unitaries maps product states to product
states; the coupling, which is not of that form, entangles ``|+->`` for
generic ``a``. Spin components are ``s = σ / 2``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .criterion import check_n2
from .oracle import purity, single_qubit_marginals
from .state import StateVector, make_basis_state

__all__ = [
    "HADAMARD",
    "PAULI_X",
    "UNITARY_TOL",
    "random_unitary",
    "apply_single_qubit",
    "apply_local_unitary",
    "coupling_matrix",
    "coupling_unitary",
    "SweepPoint",
    "entanglement_sweep",
    "sweep_to_csv",
]

UNITARY_TOL = 1e-10
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)


def _check_unitary(u) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ValueError(f"single-qubit unitary must be 2x2, got shape {u.shape}")
    err = np.max(np.abs(u.conj().T @ u - np.eye(2)))
    if not err <= UNITARY_TOL:
        raise ValueError(f"matrix is not unitary (max |U†U - I| = {err:.3e})")
    return u


def random_unitary(seed=None) -> np.ndarray:
    """Haar-random 2×2 unitary: QR of a complex Gaussian matrix with phase fix."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def apply_single_qubit(amps: np.ndarray, u: np.ndarray, qubit: int, num_qubits: int) -> np.ndarray:
    """Apply a 2×2 matrix to qubit ``qubit`` (1-based) of a raw amplitude array."""
    t = amps.reshape(1 << (qubit - 1), 2, 1 << (num_qubits - qubit))
    return np.einsum("ij,ajb->aib", u, t).reshape(-1)


def apply_local_unitary(state: StateVector, us: Sequence) -> StateVector:
    """``(U_1 ⊗ ... ⊗ U_N)|ψ>``, one qubit at a time. ``us[0]`` acts on qubit 1."""
    n = state.num_qubits
    if len(us) != n:
        raise ValueError(f"need {n} single-qubit unitaries, got {len(us)}")
    mats = [_check_unitary(u) for u in us]
    amps = state.amps
    for q, u in enumerate(mats, start=1):
        amps = apply_single_qubit(amps, u, q, n)
    return StateVector._wrap(np.ascontiguousarray(amps))


def coupling_matrix(a: float) -> np.ndarray:
    """4×4 matrix of ``exp(i a s1x s2x)`` from its eigenstructure.

    ``s1x s2x = X⊗X / 4`` has eigenvalue +1/4 on the x-basis even-parity
    space (``|+x+x>, |-x-x>``) and -1/4 on the odd one.
    """
    a = float(a)
    if not np.isfinite(a):
        raise ValueError(f"coupling angle must be finite, got {a}")
    xx = np.kron(PAULI_X, PAULI_X)
    even = 0.5 * (np.eye(4) + xx)
    odd = 0.5 * (np.eye(4) - xx)
    return np.exp(0.25j * a) * even + np.exp(-0.25j * a) * odd


def coupling_unitary(state: StateVector, a: float) -> StateVector:
    if state.num_qubits != 2:
        raise ValueError(f"the coupling acts on two qubits, got {state.num_qubits}")
    return StateVector._wrap(coupling_matrix(a) @ state.amps)


@dataclass(frozen=True)
class SweepPoint:
    a: float
    residual: float
    purity: float


def entanglement_sweep(a_values: Iterable[float]) -> list[SweepPoint]:
    """Couple ``|+->`` at each ``a``; record ``|c1c4 - c2c3|`` and qubit-1 purity."""
    a_values = [float(a) for a in a_values]
    if not a_values:
        raise ValueError("a_values must be nonempty")
    start = make_basis_state(2, "+-")
    out = []
    for a in a_values:
        psi = coupling_unitary(start, a)
        out.append(SweepPoint(a, check_n2(psi), purity(single_qubit_marginals(psi)[0])))
    return out


def sweep_to_csv(points: Iterable[SweepPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "residual", "purity"])
    for p in points:
        w.writerow([repr(p.a), repr(p.residual), repr(p.purity)])
    return buf.getvalue()
