"""Decide whether a pure N-qubit state is a product of single-qubit states."""

from .criterion import (
    ConstraintReport,
    SubsetFamily,
    ZeroCoefficientError,
    alt_subset_indices,
    check_n2,
    check_subsets,
    constraint_count,
    subset_indices,
)
from .factorize import (
    FactorizationOutcome,
    PeelFailure,
    Witness,
    factorize,
    peel_last_qubit,
    reconstruct,
)
from .io import StateFileError, read_state, write_state
from .oracle import (
    EntropyReport,
    entropy_report,
    oracle_is_product,
    purity,
    reduced_density,
    schmidt_coefficients,
    single_qubit_marginals,
    von_neumann_entropy,
)
from .state import (
    DegenerateStateError,
    ProductState,
    QubitFactor,
    StateVector,
    Tolerances,
    bits_to_index,
    index_to_bits,
    make_basis_state,
    named_state,
    normalize,
    permute_qubits,
    random_product_state,
    random_state,
    tensor,
)
from .transforms import (
    apply_local_unitary,
    coupling_matrix,
    coupling_unitary,
    entanglement_sweep,
    random_unitary,
)

__version__ = "0.1.0"
