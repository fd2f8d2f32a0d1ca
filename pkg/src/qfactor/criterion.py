"""Coefficient equalities that hold exactly for product states.

For an N-qubit state the equalities come in N - 1 families. Family ``k``
pairs the 1-based coefficients

    a_j = (2j - 1) * 2**(k-1),   b_j = 2j * 2**(k-1),   j = 1 .. 2**(N-k)

and asks every ratio ``c[a_j] / c[b_j]`` to be equal, i.e. every vector
``(c[a_j], c[b_j])`` to be parallel. Family 1 says qubit N factors out;
family ``k`` says the same of qubit ``N - k + 1`` once the later qubits have
been removed. All residuals below are cross products evaluated on the
normalized state, so nothing is ever divided by a coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .state import DegenerateStateError, StateVector, Tolerances

__all__ = [
    "ZeroCoefficientError",
    "SubsetFamily",
    "SubsetResidual",
    "ConstraintReport",
    "subset_indices",
    "alt_subset_indices",
    "constraint_count",
    "check_subsets",
    "check_n2",
    "MODES",
]

MODES = ("strict_paper", "projective")


class ZeroCoefficientError(ValueError):
    """A coefficient vanishes where the strict equalities need it nonzero."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(
            f"coefficient c_{index} is zero; strict_paper mode needs every c_i != 0 "
            "(use projective mode or factorize)"
        )


@dataclass(frozen=True)
class SubsetFamily:
    """Family ``k`` of an ``num_qubits``-qubit state, with 1-based pair indices.

    ``alt=True`` selects the odd-index variant in which every index of the
    standard family (for ``k >= 2``) is lowered by ``2**(k-1) - 1``.
    """

    num_qubits: int
    k: int
    alt: bool = False

    @property
    def step(self) -> int:
        return 1 << self.k

    @property
    def first_pair(self) -> tuple[int, int]:
        half = 1 << (self.k - 1)
        a, b = half, 2 * half
        if self.alt:
            a, b = a - half + 1, b - half + 1
        return a, b

    @property
    def size(self) -> int:
        """Number of pairs, ``2**(N-k)``."""
        return 1 << (self.num_qubits - self.k)

    @property
    def independent_count(self) -> int:
        return self.size - 1

    @property
    def pairs(self) -> np.ndarray:
        """``(size, 2)`` integer array of 1-based ``(a_j, b_j)``."""
        a, b = self.first_pair
        offs = np.arange(self.size, dtype=np.int64) * self.step
        return np.stack([a + offs, b + offs], axis=1)

    def pair(self, j: int) -> tuple[int, int]:
        """1-based indices of pair ``j`` (``j`` is 1-based too)."""
        if not 1 <= j <= self.size:
            raise IndexError(f"pair {j} out of range 1..{self.size}")
        a, b = self.first_pair
        off = (j - 1) * self.step
        return a + off, b + off

    def describe(self, full: bool = False) -> str:
        """Human-readable form, e.g. ``S_2: c_2/c_4 = c_6/c_8`` or ``S_2: c_2 c_8 = c_4 c_6``.

        Two-pair families are printed as a single cross-multiplied equality.
        Longer chains are elided to the first two and last ratio unless
        ``full`` is set.
        """
        label = f"S_{self.k}:"
        if self.size == 2:
            (a1, b1), (a2, b2) = self.pair(1), self.pair(2)
            return f"{label} c_{a1} c_{b2} = c_{b1} c_{a2}"
        if full or self.size <= 4:
            js = list(range(1, self.size + 1))
        else:
            js = [1, 2, None, self.size]
        terms = []
        for j in js:
            if j is None:
                terms.append("...")
            else:
                a, b = self.pair(j)
                terms.append(f"c_{a}/c_{b}")
        return f"{label} " + " = ".join(terms)

    def slices(self, amps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Views of ``(c[a_j])_j`` and ``(c[b_j])_j`` into a 0-based amplitude array."""
        a, b = self.first_pair
        return amps[a - 1 :: self.step], amps[b - 1 :: self.step]


def _check_nk(num_qubits: int, k: int, k_min: int) -> None:
    if num_qubits < 2:
        raise ValueError(f"need at least 2 qubits, got {num_qubits}")
    if not k_min <= k <= num_qubits - 1:
        raise ValueError(f"k must lie in [{k_min}, {num_qubits - 1}], got {k}")


def subset_indices(num_qubits: int, k: int) -> SubsetFamily:
    _check_nk(num_qubits, k, 1)
    return SubsetFamily(num_qubits, k)


def alt_subset_indices(num_qubits: int, k: int) -> SubsetFamily:
    """Odd-index family: ``c_1 c_7 = c_3 c_5`` replaces ``c_2 c_8 = c_4 c_6`` for N = 3."""
    _check_nk(num_qubits, k, 2)
    return SubsetFamily(num_qubits, k, alt=True)


def constraint_count(num_qubits: int) -> int:
    """Total number of independent equalities, ``2**N - (N + 1)``."""
    if num_qubits < 2:
        raise ValueError(f"need at least 2 qubits, got {num_qubits}")
    return (1 << num_qubits) - (num_qubits + 1)


@dataclass(frozen=True)
class SubsetResidual:
    k: int
    max_residual: float
    # (j, anchor j'), both 1-based pair numbers; None when the family holds.
    failing_pair: Optional[tuple[int, int]]
    family: SubsetFamily

    def to_dict(self) -> dict:
        out = {"k": self.k, "residual": self.max_residual, "failing_indices": None}
        if self.failing_pair is not None:
            j, anchor = self.failing_pair
            out["failing_indices"] = [list(self.family.pair(j)), list(self.family.pair(anchor))]
        return out


@dataclass(frozen=True)
class ConstraintReport:
    per_subset: tuple[SubsetResidual, ...]
    verdict: str
    mode: str

    @property
    def is_product(self) -> bool:
        return self.verdict == "product"

    @property
    def max_residual(self) -> float:
        return max((s.max_residual for s in self.per_subset), default=0.0)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "verdict": self.verdict,
            "subsets": [s.to_dict() for s in self.per_subset],
        }


def _family_residual(
    family: SubsetFamily, amps: np.ndarray, norm2: float, skip_below: Optional[float]
) -> tuple[float, int, int]:
    ca, cb = family.slices(amps)
    w = ca.real**2 + ca.imag**2 + cb.real**2 + cb.imag**2
    anchor = int(np.argmax(w))
    det = np.abs(ca * cb[anchor] - ca[anchor] * cb) / norm2
    if skip_below is not None:
        det[w <= skip_below**2] = 0.0
    worst = int(np.argmax(det))
    return float(det[worst]), worst + 1, anchor + 1


def check_subsets(
    state: StateVector,
    tol: Tolerances = Tolerances(),
    mode: str = "strict_paper",
    alt: bool = False,
) -> ConstraintReport:
    """Evaluate every family against its largest-norm anchor pair.

    ``strict_paper`` insists on nonzero coefficients, as the equalities are
    written with ratios. ``projective`` ignores pairs whose norm is below
    ``zero_tol * max|c|``; it is a fast screen only, since zero patterns
    exist where every remaining cross product vanishes on an entangled
    state. Use :func:`qfactor.factorize.factorize` for a final verdict.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    n = state.num_qubits
    if n < 2:
        raise ValueError("subset families need at least 2 qubits")
    amps = state.amps
    mags = np.abs(amps)
    cmax = float(mags.max())
    if cmax == 0.0:
        raise DegenerateStateError("zero state")
    norm2 = float(np.vdot(amps, amps).real)
    if mode == "strict_paper":
        small = np.flatnonzero(mags <= tol.zero_tol * cmax)
        if small.size:
            raise ZeroCoefficientError(int(small[0]) + 1)
        skip = None
    else:
        skip = tol.zero_tol * cmax
    results = []
    for k in range(1, n):
        family = SubsetFamily(n, k, alt=alt and k >= 2)
        res, j, anchor = _family_residual(family, amps, norm2, skip)
        failing = (j, anchor) if res > tol.rel_tol else None
        results.append(SubsetResidual(k, res, failing, family))
    verdict = "product" if all(r.failing_pair is None for r in results) else "entangled"
    return ConstraintReport(tuple(results), verdict, mode)


def check_n2(state: StateVector) -> float:
    """``|c_1 c_4 - c_2 c_3|`` of a two-qubit state, scaled to unit norm.

    Zero exactly for product states, with or without vanishing coefficients.
    """
    if state.num_qubits != 2:
        raise ValueError(f"check_n2 needs a two-qubit state, got {state.num_qubits} qubits")
    c1, c2, c3, c4 = state.amps
    norm2 = float(np.vdot(state.amps, state.amps).real)
    if norm2 == 0.0:
        raise DegenerateStateError("zero state")
    return float(abs(c1 * c4 - c2 * c3) / norm2)
