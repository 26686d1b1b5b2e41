"""Exact fermionic mode algebra with ordering-aware reductions and measures.

The package tracks every anticommutation sign explicitly: states live over
named modes with one canonical order, fermion-to-qubit maps are labelled by
mode orderings, and both partial-trace routes (native operator sandwiches
and the qubit-image trace) are available side by side so their agreement or
disagreement can be measured rather than assumed.
"""

from .numerics import (
    DEFAULT_TOL,
    DimensionMismatchError,
    EigenResult,
    NoConvergenceError,
    NotHermitianError,
    hermitian_eigenvalues,
    trace_distance,
    trace_norm,
)
from .fock import (
    ANNIHILATION,
    CREATION,
    BipartitionSpec,
    DensityOperator,
    FockVector,
    ModeSystem,
    OperatorString,
    UnknownModeError,
    apply,
    basis_state,
    from_operator_string,
    parity_of,
    random_state,
    ssr_compliant,
    state_from_json_str,
    state_from_terms,
    state_to_json_str,
)
from .ordering import (
    InvalidOrderingError,
    InvalidSubsetError,
    ModeOrdering,
    QubitState,
    inverse_image_restricted,
    is_physical,
    ordering_sign,
    ordering_sign_vector,
    qubit_image,
)
from .reduction import (
    InvalidBipartitionError,
    NonPhysicalOrderingError,
    OrderingClass,
    SweepResult,
    SystemTooLargeError,
    TheoremReport,
    fermionic_partial_trace,
    ordering_scan,
    qubit_partial_trace,
    qubit_route_reduction,
    sweep_system,
    theorem_check,
    theorem_sweep,
)
from .entanglement import (
    MalformedDecompositionError,
    MeasureResult,
    SeparableDecomposition,
    UnsupportedDimensionsError,
    build_separable,
    concurrence_and_eof,
    negativity,
    partial_transpose,
    ppt_separable,
)
from . import states

__version__ = "0.1.0"

__all__ = [
    "ANNIHILATION",
    "CREATION",
    "DEFAULT_TOL",
    "BipartitionSpec",
    "DensityOperator",
    "DimensionMismatchError",
    "EigenResult",
    "FockVector",
    "InvalidBipartitionError",
    "InvalidOrderingError",
    "InvalidSubsetError",
    "MalformedDecompositionError",
    "MeasureResult",
    "ModeOrdering",
    "ModeSystem",
    "NoConvergenceError",
    "NonPhysicalOrderingError",
    "NotHermitianError",
    "OperatorString",
    "OrderingClass",
    "QubitState",
    "SeparableDecomposition",
    "SweepResult",
    "SystemTooLargeError",
    "TheoremReport",
    "UnknownModeError",
    "UnsupportedDimensionsError",
    "apply",
    "basis_state",
    "build_separable",
    "concurrence_and_eof",
    "fermionic_partial_trace",
    "from_operator_string",
    "hermitian_eigenvalues",
    "inverse_image_restricted",
    "is_physical",
    "negativity",
    "ordering_scan",
    "ordering_sign",
    "ordering_sign_vector",
    "parity_of",
    "partial_transpose",
    "ppt_separable",
    "qubit_image",
    "qubit_partial_trace",
    "qubit_route_reduction",
    "random_state",
    "ssr_compliant",
    "state_from_json_str",
    "state_from_terms",
    "state_to_json_str",
    "states",
    "sweep_system",
    "theorem_check",
    "theorem_sweep",
    "trace_distance",
    "trace_norm",
]
