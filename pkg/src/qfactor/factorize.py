"""Constructive product decomposition by peeling the last qubit repeatedly.

The amplitude vector of an ``m``-qubit block is viewed as ``2**(m-1)``
pairs ``v_j = (c[2j-1], c[2j])``. The last qubit factors out exactly when
all pairs are parallel; the common direction is that qubit's state and the
projections onto it form the ``(m-1)``-qubit block peeled next. Projections
replace the ratios of the written equalities, so vanishing coefficients need
no special treatment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .criterion import SubsetFamily
from .state import (
    DegenerateStateError,
    ProductState,
    QubitFactor,
    StateVector,
    Tolerances,
    tensor,
)

__all__ = [
    "PeelFailure",
    "PeelStep",
    "Witness",
    "FactorizationOutcome",
    "peel_last_qubit",
    "factorize",
    "reconstruct",
]


class PeelFailure(Exception):
    """The pairs of a block are not all parallel, so its last qubit is entangled.

    ``j`` and ``anchor`` are 1-based pair numbers; ``residual`` is
    ``|det[v_j, u]|`` with ``u`` the unit anchor direction, relative to the
    reference norm.
    """

    def __init__(self, j: int, anchor: int, residual: float):
        self.j = j
        self.anchor = anchor
        self.residual = residual
        super().__init__(f"pair {j} not parallel to anchor pair {anchor} (residual {residual:.3e})")


@dataclass(frozen=True)
class PeelStep:
    qubit: int
    factor: QubitFactor
    reduced_len: int
    residual: float


def peel_last_qubit(
    c: np.ndarray, tol: Tolerances = Tolerances(), scale: Optional[float] = None
) -> tuple[QubitFactor, np.ndarray, float]:
    """Split ``c`` (length ``2**m``) into ``C ⊗ (a, b)``.

    Returns ``(factor, C, residual)`` where ``residual`` is the largest
    per-pair cross product with the unit anchor direction, divided by
    ``scale`` (default ``‖c‖``). Pairs shorter than ``zero_tol`` times the
    longest pair are not tested. Raises :class:`PeelFailure` if a tested
    pair, or the whole orthogonal remainder, exceeds ``rel_tol``.
    """
    c = np.asarray(c, dtype=np.complex128)
    if c.size < 2 or c.size & (c.size - 1):
        raise ValueError(f"block length must be 2**m with m >= 1, got {c.size}")
    pairs = c.reshape(-1, 2)
    lo, hi = pairs[:, 0], pairs[:, 1]
    w = lo.real**2 + lo.imag**2 + hi.real**2 + hi.imag**2
    anchor = int(np.argmax(w))
    wmax = float(w[anchor])
    if wmax == 0.0:
        raise DegenerateStateError("all pairs are zero")
    if scale is None:
        scale = float(np.sqrt(w.sum()))
    factor, _ = QubitFactor.from_pair(*pairs[anchor])
    a, b = factor.a, factor.b

    det = np.abs(lo * b - hi * a)
    ortho = float(np.sqrt(np.sum(det**2))) / scale
    det[w <= (tol.zero_tol**2) * wmax] = 0.0
    worst = int(np.argmax(det))
    residual = float(det[worst]) / scale
    if residual > tol.rel_tol:
        raise PeelFailure(worst + 1, anchor + 1, residual)
    if ortho > tol.rel_tol:
        # Many small deviations, none individually over the bar.
        raise PeelFailure(worst + 1, anchor + 1, ortho)

    reduced = np.conj(a) * lo + np.conj(b) * hi
    return factor, reduced, residual


@dataclass(frozen=True)
class Witness:
    """Where the peel stopped: family ``subset_k`` fails on ``pair`` vs ``anchor_pair``."""

    subset_k: int
    qubit: int
    pair: tuple[int, int]
    anchor_pair: tuple[int, int]
    residual: float

    def to_dict(self) -> dict:
        return {
            "subset_k": self.subset_k,
            "qubit": self.qubit,
            "indices": [list(self.pair), list(self.anchor_pair)],
            "residual": self.residual,
        }


@dataclass(frozen=True)
class FactorizationOutcome:
    product: Optional[ProductState]
    max_residual: float
    witness: Optional[Witness] = None
    steps: tuple[PeelStep, ...] = ()

    @property
    def is_product(self) -> bool:
        return self.product is not None

    @property
    def verdict(self) -> str:
        return "product" if self.is_product else "entangled"

    def to_dict(self) -> dict:
        if self.product is None:
            return {"verdict": self.verdict, "witness": self.witness.to_dict()}
        p = self.product
        return {
            "verdict": self.verdict,
            "max_residual": self.max_residual,
            "product": {
                "global": [p.global_.real, p.global_.imag],
                "factors": [
                    [[f.a.real, f.a.imag], [f.b.real, f.b.imag]] for f in p.factors
                ],
            },
        }


def factorize(state: StateVector, tol: Tolerances = Tolerances()) -> FactorizationOutcome:
    """Peel qubits N, N-1, ..., 1 and return the product form or a witness.

    A failure while peeling qubit ``m`` is reported against family
    ``k = N - m + 1``, with the 1-based indices that family uses for the
    offending pair and for the anchor pair.
    """
    n = state.num_qubits
    scale = state.norm()
    if scale == 0.0:
        raise DegenerateStateError("cannot factorize the zero vector")
    block = state.amps
    factors: list[QubitFactor] = []
    steps: list[PeelStep] = []
    worst = 0.0
    for m in range(n, 0, -1):
        try:
            factor, block, res = peel_last_qubit(block, tol, scale)
        except PeelFailure as fail:
            k = n - m + 1
            family = SubsetFamily(n, k)
            witness = Witness(k, m, family.pair(fail.j), family.pair(fail.anchor), fail.residual)
            return FactorizationOutcome(None, fail.residual, witness, tuple(steps))
        worst = max(worst, res)
        factors.append(factor)
        steps.append(PeelStep(m, factor, block.size, res))
    factors.reverse()
    return FactorizationOutcome(ProductState(complex(block[0]), factors), worst, None, tuple(steps))


def reconstruct(p: ProductState) -> StateVector:
    if p.global_ == 0:
        raise DegenerateStateError("a product state with zero global scalar is the zero vector")
    return tensor(p.factors, p.global_)
