"""Entanglement of two-qubit states against global and marginal mixedness."""

__version__ = "0.1.0"

from .linalg import TOL, ContractError  # noqa: E402
from .states import (  # noqa: E402
    InvalidParameters,
    InvalidStateError,
    LptpsParams,
    MemmsParams,
    ansatz_state,
    bell_state,
    memms,
    product_state,
    random_state,
    werner_state,
)
from .measures import (  # noqa: E402
    EntanglementReport,
    EntropyProfile,
    concurrence,
    entanglement_of_formation,
    entropy_of_entanglement,
    entropy_profile,
    linear_entropy,
    purity,
    von_neumann_entropy,
)
