"""Pure states of N qubits and their single-qubit product decompositions.

Amplitudes are stored 0-based: position ``p`` holds the coefficient of the
basis ket numbered ``p + 1``. Qubit 1 is the most significant bit of ``p``
and qubit N the least significant one; a bit equal to 0 means the qubit is
in ``|+>`` and a bit equal to 1 means ``|->``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "DegenerateStateError",
    "Tolerances",
    "StateVector",
    "QubitFactor",
    "ProductState",
    "index_to_bits",
    "bits_to_index",
    "make_basis_state",
    "tensor",
    "normalize",
    "random_product_state",
    "random_state",
    "named_state",
    "permute_qubits",
]

NORM_TOL = 1e-12


class DegenerateStateError(ValueError):
    """Raised when a state (or a block of it) is identically zero."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used by the checks.

    ``rel_tol`` bounds proportionality residuals on a normalized state and
    ``zero_tol`` decides when an amplitude (relative to the largest one)
    counts as zero.
    """

    rel_tol: float = 1e-9
    zero_tol: float = 1e-12

    def __post_init__(self):
        if not 0 < self.zero_tol < self.rel_tol < 1:
            raise ValueError(
                f"need 0 < zero_tol < rel_tol < 1, got zero_tol={self.zero_tol}, "
                f"rel_tol={self.rel_tol}"
            )


def _as_amps(amps) -> np.ndarray:
    arr = np.array(amps, dtype=np.complex128).reshape(-1)
    n = arr.size
    if n < 2 or n & (n - 1):
        raise ValueError(f"number of amplitudes must be 2**N with N >= 1, got {n}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("amplitudes must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Immutable vector of ``2**num_qubits`` complex amplitudes."""

    amps: np.ndarray

    def __post_init__(self):
        arr = _as_amps(self.amps)
        arr.flags.writeable = False
        object.__setattr__(self, "amps", arr)

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "StateVector":
        # Trusted constructor for arrays built here; skips the defensive copy.
        obj = object.__new__(cls)
        arr.flags.writeable = False
        object.__setattr__(obj, "amps", arr)
        return obj

    @property
    def num_qubits(self) -> int:
        return self.amps.size.bit_length() - 1

    @property
    def dim(self) -> int:
        return self.amps.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def coefficient(self, i: int) -> complex:
        """Return ``c_i`` using 1-based basis numbering."""
        if not 1 <= i <= self.dim:
            raise IndexError(f"coefficient index {i} out of range 1..{self.dim}")
        return complex(self.amps[i - 1])

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"


def _canonical_pair(a: complex, b: complex) -> tuple[complex, complex]:
    # Rotate the global phase so the leading non-negligible entry is real >= 0.
    lead = a if abs(a) > NORM_TOL else b
    if lead == 0:
        return a, b
    phase = abs(lead) / lead
    a, b = a * phase, b * phase
    if abs(a) > NORM_TOL:
        a = complex(abs(a), 0.0)
    else:
        b = complex(abs(b), 0.0)
    return a, b


@dataclass(frozen=True)
class QubitFactor:
    """Single-qubit state ``a|+> + b|->`` with unit norm and canonical phase."""

    a: complex
    b: complex

    def __post_init__(self):
        nrm2 = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(nrm2 - 1.0) > NORM_TOL:
            raise ValueError(f"qubit factor must have unit norm, got |a|^2+|b|^2 = {nrm2}")

    @classmethod
    def from_pair(cls, a: complex, b: complex) -> tuple["QubitFactor", complex]:
        """Normalize ``(a, b)`` and return ``(factor, scale)`` with ``scale * factor == (a, b)``."""
        a, b = complex(a), complex(b)
        nrm = float(np.hypot(abs(a), abs(b)))
        if nrm == 0.0:
            raise DegenerateStateError("cannot build a qubit factor from a zero pair")
        ua, ub = _canonical_pair(a / nrm, b / nrm)
        # Renormalize after the phase rotation to stay inside NORM_TOL.
        rn = float(np.hypot(abs(ua), abs(ub)))
        ua, ub = ua / rn, ub / rn
        scale = (np.conj(ua) * a + np.conj(ub) * b)
        return cls(ua, ub), complex(scale)

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=np.complex128)


@dataclass(frozen=True)
class ProductState:
    """``global_ * (factor_1 ⊗ factor_2 ⊗ ... ⊗ factor_N)``, qubit 1 first."""

    global_: complex
    factors: tuple[QubitFactor, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "global_", complex(self.global_))

    @property
    def num_qubits(self) -> int:
        return len(self.factors)


def index_to_bits(p: int, num_qubits: int) -> tuple[int, ...]:
    """Bits of storage position ``p``, qubit 1 first (0 = ``|+>``, 1 = ``|->``)."""
    if not 0 <= p < 1 << num_qubits:
        raise ValueError(f"position {p} out of range for {num_qubits} qubits")
    return tuple((p >> (num_qubits - 1 - q)) & 1 for q in range(num_qubits))


def bits_to_index(bits: Sequence[int]) -> int:
    p = 0
    for bit in bits:
        if bit not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got {bit!r}")
        p = (p << 1) | bit
    return p


_SIGNS = {"+": 0, "-": 1, "−": 1, 1: 0, -1: 1, 0: 0}


def _sign_bit(s) -> int:
    try:
        return _SIGNS[s]
    except (KeyError, TypeError):
        raise ValueError(f"sign must be '+' or '-', got {s!r}") from None


def make_basis_state(num_qubits: int, pattern: Sequence) -> StateVector:
    """Basis ket for a sign pattern such as ``"+-+"`` or ``[+1, -1, +1]``.

    ``pattern[0]`` is qubit 1.
    """
    if num_qubits < 1:
        raise ValueError(f"num_qubits must be >= 1, got {num_qubits}")
    pattern = list(pattern)
    if len(pattern) != num_qubits:
        raise ValueError(f"pattern has {len(pattern)} signs, expected {num_qubits}")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[bits_to_index([_sign_bit(s) for s in pattern])] = 1.0
    return StateVector._wrap(amps)


def _factor_array(f) -> np.ndarray:
    if isinstance(f, QubitFactor):
        return f.as_array()
    arr = np.asarray(f, dtype=np.complex128).reshape(-1)
    if arr.size != 2:
        raise ValueError(f"qubit factor needs 2 amplitudes, got {arr.size}")
    return arr


def tensor_amplitudes(factors: Sequence, global_: complex = 1.0) -> np.ndarray:
    """Raw amplitude array of ``global_ * (f_1 ⊗ ... ⊗ f_N)``.

    Factors may be :class:`QubitFactor` or any length-2 sequence; they are
    not normalized.
    """
    if len(factors) == 0:
        raise ValueError("tensor needs at least one factor")
    out = np.array([complex(global_)], dtype=np.complex128)
    for f in factors:
        # Each new factor is a less significant qubit.
        out = (out[:, None] * _factor_array(f)[None, :]).reshape(-1)
    return out


def tensor(factors: Sequence, global_: complex = 1.0) -> StateVector:
    """State vector of ``global_ * (f_1 ⊗ ... ⊗ f_N)``; ``f_1`` is qubit 1."""
    return StateVector._wrap(tensor_amplitudes(factors, global_))


def normalize(state: StateVector) -> StateVector:
    nrm = state.norm()
    if nrm == 0.0:
        raise DegenerateStateError("cannot normalize the zero vector")
    return StateVector._wrap(state.amps / nrm)


def _check_n(num_qubits: int) -> None:
    if not isinstance(num_qubits, (int, np.integer)) or num_qubits < 1:
        raise ValueError(f"num_qubits must be an integer >= 1, got {num_qubits!r}")


def _gaussian(rng: np.random.Generator, size) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_product_state(num_qubits: int, seed=None) -> tuple[ProductState, StateVector]:
    """Random product state with Gaussian-normalized single-qubit factors.

    Returns the decomposition (unit global scalar) together with the
    normalized state vector it produces.
    """
    _check_n(num_qubits)
    rng = np.random.default_rng(seed)
    pairs = _gaussian(rng, (num_qubits, 2))
    factors = tuple(QubitFactor.from_pair(a, b)[0] for a, b in pairs)
    state = normalize(tensor(factors))
    return ProductState(1.0, factors), state


def random_state(num_qubits: int, seed=None) -> StateVector:
    """Generic state: ``2**N`` independent complex Gaussians, normalized."""
    _check_n(num_qubits)
    rng = np.random.default_rng(seed)
    return normalize(StateVector._wrap(_gaussian(rng, 1 << num_qubits)))


def named_state(name: str, num_qubits: int) -> StateVector:
    """Standard entangled states: ``"ghz"``, ``"w"`` or ``"bell_phi_plus"``."""
    _check_n(num_qubits)
    if num_qubits < 2:
        raise ValueError(f"{name} needs at least 2 qubits")
    dim = 1 << num_qubits
    amps = np.zeros(dim, dtype=np.complex128)
    if name == "ghz":
        amps[0] = amps[-1] = 1 / np.sqrt(2)
    elif name == "w":
        for q in range(num_qubits):
            amps[1 << q] = 1 / np.sqrt(num_qubits)
    elif name == "bell_phi_plus":
        if num_qubits != 2:
            raise ValueError("bell_phi_plus is a two-qubit state")
        amps[0] = amps[3] = 1 / np.sqrt(2)
    else:
        raise ValueError(f"unknown state name {name!r}")
    return StateVector._wrap(amps)


def permute_qubits(state: StateVector, order: Sequence[int]) -> StateVector:
    """Relabel qubits: qubit ``i`` of the result is qubit ``order[i-1]`` of ``state``."""
    n = state.num_qubits
    order = [int(q) for q in order]
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"order must be a permutation of 1..{n}, got {order}")
    psi = state.amps.reshape((2,) * n).transpose([q - 1 for q in order])
    return StateVector._wrap(np.ascontiguousarray(psi).reshape(-1))
