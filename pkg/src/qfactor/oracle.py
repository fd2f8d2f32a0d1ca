"""Reduced density matrices, purities, entropies and Schmidt coefficients.

This is the independent ground truth for the product test: a pure state is
a full product iff every single-qubit marginal is pure. Density matrices
are plain complex ndarrays. Qubits are labelled 1..N as elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .state import StateVector, Tolerances

__all__ = [
    "EntropyReport",
    "reduced_density",
    "single_qubit_marginals",
    "purity",
    "eigenvalues",
    "von_neumann_entropy",
    "schmidt_coefficients",
    "oracle_is_product",
    "entropy_report",
    "MAX_SCHMIDT_QUBITS",
]

MAX_SCHMIDT_QUBITS = 12
_NEG_DUST = 1e-10


def _subset(num_qubits: int, qubits: Iterable[int]) -> tuple[int, ...]:
    sel = tuple(sorted(set(int(q) for q in qubits)))
    if not sel or len(sel) == num_qubits:
        raise ValueError("qubit subset must be nonempty and proper")
    if sel[0] < 1 or sel[-1] > num_qubits:
        raise ValueError(f"qubit labels must lie in 1..{num_qubits}, got {sel}")
    return sel


def _bipartite_matrix(state: StateVector, keep: tuple[int, ...]) -> np.ndarray:
    # Rows index the kept qubits (in label order), columns the rest.
    n = state.num_qubits
    rest = tuple(q for q in range(1, n + 1) if q not in keep)
    psi = state.amps.reshape((2,) * n)
    psi = np.transpose(psi, [q - 1 for q in keep + rest])
    return psi.reshape(1 << len(keep), 1 << len(rest))


def reduced_density(state: StateVector, keep: Iterable[int]) -> np.ndarray:
    """``Tr_rest |ψ><ψ|`` over the complement of ``keep``."""
    keep = _subset(state.num_qubits, keep)
    if len(keep) > MAX_SCHMIDT_QUBITS:
        raise ValueError(f"refusing a {2 ** len(keep)}-dimensional reduced density matrix")
    m = _bipartite_matrix(state, keep)
    return m @ m.conj().T


def single_qubit_marginals(state: StateVector) -> np.ndarray:
    """All N single-qubit reduced density matrices, shape ``(N, 2, 2)``, in O(N 2**N)."""
    n = state.num_qubits
    out = np.empty((n, 2, 2), dtype=np.complex128)
    if n == 1:
        out[0] = np.outer(state.amps, state.amps.conj())
        return out
    for q in range(1, n + 1):
        t = state.amps.reshape(1 << (q - 1), 2, 1 << (n - q))
        out[q - 1] = np.einsum("aib,ajb->ij", t, t.conj())
    return out


def purity(rho: np.ndarray) -> float:
    """``Tr(ρ²)``; for Hermitian ρ this is the squared Frobenius norm."""
    rho = np.asarray(rho)
    return float(np.vdot(rho, rho).real)


def eigenvalues(rho: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix, closed form for 2×2."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape == (2, 2):
        p, r = rho[0, 0].real, rho[1, 1].real
        half = 0.5 * (p + r)
        rad = float(np.hypot(0.5 * (p - r), abs(rho[0, 1])))
        return np.array([half - rad, half + rad])
    return np.linalg.eigvalsh(rho)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """``-Tr(ρ ln ρ)`` in nats; eigenvalues are clipped to [0, 1], 0 ln 0 = 0."""
    lam = eigenvalues(rho)
    lam = np.clip(np.where(lam < _NEG_DUST, 0.0, lam), 0.0, 1.0)
    nz = lam[lam > 0]
    return float(-np.sum(nz * np.log(nz)))


def schmidt_coefficients(state: StateVector, cut: Iterable[int]) -> np.ndarray:
    """Nonincreasing singular values of the amplitudes reshaped along ``cut | rest``."""
    if state.num_qubits > MAX_SCHMIDT_QUBITS:
        raise ValueError(f"Schmidt analysis is capped at {MAX_SCHMIDT_QUBITS} qubits")
    keep = _subset(state.num_qubits, cut)
    return np.linalg.svd(_bipartite_matrix(state, keep), compute_uv=False)


def oracle_is_product(state: StateVector, tol: Tolerances = Tolerances()) -> bool:
    """True iff every single-qubit marginal has purity >= 1 - rel_tol."""
    if state.num_qubits == 1:
        return True
    nrm2 = float(np.vdot(state.amps, state.amps).real)
    marg = single_qubit_marginals(state) / nrm2
    pur = np.einsum("qij,qij->q", marg, marg.conj()).real
    return bool(np.all(pur >= 1.0 - tol.rel_tol))


@dataclass(frozen=True)
class EntropyReport:
    per_qubit_entropy: tuple[float, ...]
    per_qubit_purity: tuple[float, ...]
    schmidt: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {
            "per_qubit_entropy": list(self.per_qubit_entropy),
            "per_qubit_purity": list(self.per_qubit_purity),
        }
        if self.schmidt is not None:
            out["schmidt"] = {name: list(map(float, lam)) for name, lam in self.schmidt.items()}
        return out


def entropy_report(
    state: StateVector, cuts: Optional[Sequence[Sequence[int]]] = None
) -> EntropyReport:
    """Per-qubit entropy and purity, plus Schmidt coefficients for each named cut.

    Cut names are the qubit labels joined by commas, e.g. ``"1,2"``.
    """
    marg = single_qubit_marginals(state)
    ent = tuple(von_neumann_entropy(r) for r in marg)
    pur = tuple(purity(r) for r in marg)
    schmidt = None
    if cuts:
        schmidt = {}
        for cut in cuts:
            keep = _subset(state.num_qubits, cut)
            schmidt[",".join(map(str, keep))] = schmidt_coefficients(state, keep)
    return EntropyReport(ent, pur, schmidt)
