"""Entanglement measures over mode bipartitions.

Negativity is computed as (trace norm of the partial transpose minus one)
over two, so a maximally entangled pair of qubits scores exactly 0.5.
Fermionic inputs must name the mode ordering that carries them to qubits:
the measured number genuinely depends on that choice, and hiding it behind
a default would defeat the purpose of tracking it. The positive-partial-
transpose test is promoted to a separability decision only where that is a
theorem, judged by the local support dimensions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .fock import (
    CREATION,
    BipartitionSpec,
    DensityOperator,
    FockVector,
    ModeSystem,
    OperatorString,
    from_operator_string,
)
from .numerics import DEFAULT_TOL, hermitian_eigenvalues, trace_norm
from .ordering import ModeOrdering, QubitState, qubit_image

#: Eigenvalues above this count toward a marginal's support dimension, and
#: partial-transpose eigenvalues below its negation witness entanglement.
SUPPORT_TOL = 1e-10

#: Negativity values smaller than this are reported as exactly zero.
NEGATIVITY_CLAMP = 1e-12


class UnsupportedDimensionsError(ValueError):
    """Positivity of the partial transpose does not decide separability at
    these local dimensions; use negativity as a one-sided witness."""


class MalformedDecompositionError(ValueError):
    """A separable decomposition breaks one of its structural rules."""


AnyState = Union[FockVector, DensityOperator, QubitState]


@dataclass(frozen=True)
class MeasureResult:
    """An entanglement number together with what produced it.

    The ordering is part of the result's identity for fermionic inputs;
    it is None only for measures evaluated directly on qubit data.
    """

    value: float
    measure: str
    bipartition: Union[BipartitionSpec, None]
    ordering: Union[ModeOrdering, None]

    def to_json(self) -> dict:
        bp = None
        if self.bipartition is not None:
            bp = {"kept": list(self.bipartition.kept), "traced": list(self.bipartition.traced)}
        return {
            "measure": self.measure,
            "value": self.value,
            "bipartition": bp,
            "ordering": None if self.ordering is None else list(self.ordering.labels),
        }


def _as_qubit_matrix(
    state: AnyState, ordering: Union[ModeOrdering, None]
) -> tuple[np.ndarray, ModeSystem, Union[ModeOrdering, None]]:
    """Dense qubit-register matrix for any supported state input."""
    if isinstance(state, QubitState):
        if ordering is not None and ordering != state.ordering:
            raise ValueError(
                "qubit state already carries an ordering; do not pass a different one"
            )
        data = np.outer(state.data, state.data.conj()) if state.is_pure else state.data
        return data, state.system, state.ordering
    if isinstance(state, FockVector):
        state = state.to_density()
    if isinstance(state, DensityOperator):
        if ordering is None:
            raise ValueError(
                "fermionic states require an explicit mode ordering; "
                "the measured value depends on it"
            )
        image = qubit_image(state, ordering)
        return image.data, state.system, ordering
    raise TypeError(f"unsupported state type {type(state).__name__}")


def partial_transpose(
    matrix: np.ndarray, system: ModeSystem, bp: Union[BipartitionSpec, None] = None
) -> np.ndarray:
    """Transpose the traced block's bit indices of a mode-indexed matrix."""
    bp = system.bipartition() if bp is None else bp
    bp.validate_for(system)
    n = system.n_modes
    m = np.asarray(matrix, dtype=np.complex128)
    if m.shape != (system.dim, system.dim):
        raise ValueError(f"expected a {system.dim}x{system.dim} matrix, got {m.shape}")
    t = m.reshape([2] * (2 * n))
    axes = list(range(2 * n))
    for label in bp.traced:
        k = system.position(label)
        axes[k], axes[n + k] = axes[n + k], axes[k]
    return t.transpose(axes).reshape(system.dim, system.dim)


def negativity(
    state: AnyState,
    bp: Union[BipartitionSpec, None] = None,
    ordering: Union[ModeOrdering, None] = None,
    tol: float = DEFAULT_TOL,
) -> MeasureResult:
    """Negativity of a state across a mode bipartition.

    Returns (‖partial transpose‖₁ − 1) / 2, clamped to zero when the excess
    is below the noise floor.
    """
    matrix, system, used_ordering = _as_qubit_matrix(state, ordering)
    bp = system.bipartition() if bp is None else bp
    pt = partial_transpose(matrix, system, bp)
    value = (trace_norm(pt, tol=tol) - 1.0) / 2.0
    if value < NEGATIVITY_CLAMP:
        value = 0.0
    return MeasureResult(value=value, measure="negativity", bipartition=bp, ordering=used_ordering)


def _support_rank(marginal: np.ndarray) -> int:
    eig = hermitian_eigenvalues(marginal, tol=1e-9)
    return int(np.sum(eig.eigenvalues > SUPPORT_TOL))


def ppt_separable(
    state: AnyState,
    bp: Union[BipartitionSpec, None] = None,
    ordering: Union[ModeOrdering, None] = None,
) -> bool:
    """Decide separability by positivity of the partial transpose.

    The decision is a theorem only for 2x2 and 2x3 systems, so the state's
    local support dimensions (marginal ranks) are checked first: one side
    must fit in 2 dimensions and the other in 3. Since the partial-transpose
    spectrum does not change under local basis rotations, a state whose
    marginals fit those ranks is equivalent to a genuine 2x2 or 2x3 state
    and the criterion applies. Larger supports raise an error instead of
    returning a one-sided answer.
    """
    matrix, system, _ = _as_qubit_matrix(state, ordering)
    bp = system.bipartition() if bp is None else bp
    bp.validate_for(system)
    n = system.n_modes
    kept_axes = sorted(system.position(l) for l in bp.kept)
    traced_axes = sorted(system.position(l) for l in bp.traced)
    t = matrix.reshape([2] * (2 * n))
    perm = kept_axes + traced_axes
    t = t.transpose(perm + [n + ax for ax in perm])
    dk, dt = 1 << len(kept_axes), 1 << len(traced_axes)
    t = t.reshape(dk, dt, dk, dt)
    rank_kept = _support_rank(np.einsum("ajbj->ab", t))
    rank_traced = _support_rank(np.einsum("iaib->ab", t))
    low, high = sorted((rank_kept, rank_traced))
    if low > 2 or high > 3:
        raise UnsupportedDimensionsError(
            f"local supports {rank_kept}x{rank_traced} exceed 2x3; positivity of "
            "the partial transpose is only necessary here, not sufficient"
        )
    pt = partial_transpose(matrix, system, bp)
    eig = hermitian_eigenvalues(pt, tol=1e-9)
    return bool(eig.eigenvalues[-1] >= -SUPPORT_TOL)


@dataclass(frozen=True)
class SeparableDecomposition:
    """Convex mixture of products of kept-block and traced-block creators."""

    weights: tuple[float, ...]
    terms_kept: tuple[OperatorString, ...]
    terms_traced: tuple[OperatorString, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "terms_kept", tuple(self.terms_kept))
        object.__setattr__(self, "terms_traced", tuple(self.terms_traced))
        if not (len(self.weights) == len(self.terms_kept) == len(self.terms_traced)):
            raise MalformedDecompositionError("weights and term lists must have equal length")
        if not self.weights:
            raise MalformedDecompositionError("decomposition needs at least one term")
        if any(w <= 0 for w in self.weights):
            raise MalformedDecompositionError("weights must be positive")
        if abs(sum(self.weights) - 1.0) >= DEFAULT_TOL:
            raise MalformedDecompositionError(f"weights sum to {sum(self.weights)}, expected 1")


def build_separable(dec: SeparableDecomposition, system: ModeSystem) -> DensityOperator:
    """Mix the decomposition's product terms into a density operator.

    Each term applies its traced-block creators to the vacuum first, then
    the kept-block creators, is normalized, and contributes its weight. The
    result is separable across the system's kept/traced split by
    construction, with all anticommutation signs tracked exactly.
    """
    kept_set, traced_set = set(system.a_labels), set(system.c_labels)
    total = np.zeros((system.dim, system.dim), dtype=np.complex128)
    for weight, term_a, term_b in zip(dec.weights, dec.terms_kept, dec.terms_traced):
        for ops, block, name in ((term_a, kept_set, "kept"), (term_b, traced_set, "traced")):
            for label, kind in ops.factors:
                if kind != CREATION:
                    raise MalformedDecompositionError(
                        f"{name} term {ops} contains a non-creation factor"
                    )
                if label not in block:
                    raise MalformedDecompositionError(
                        f"{name} term {ops} uses mode {label!r} outside its block"
                    )
        combined = OperatorString(term_a.factors + term_b.factors)
        vec = from_operator_string(combined, system)
        norm = vec.norm()
        if norm == 0.0:
            raise MalformedDecompositionError(f"term {combined} annihilates the vacuum")
        amps = vec.amplitudes / norm
        total += weight * np.outer(amps, amps.conj())
    return DensityOperator(system, total)


_SPIN_FLIP = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=np.complex128,
)


def _binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x))


def concurrence_and_eof(
    rho: Union[np.ndarray, AnyState],
    ordering: Union[ModeOrdering, None] = None,
) -> tuple[MeasureResult, MeasureResult]:
    """Concurrence and entanglement of formation of a two-qubit density.

    Uses the spin-flip construction: the singular spectrum of √ρ ρ̃ √ρ with
    ρ̃ the doubly spin-flipped conjugate gives concurrence
    C = max(0, λ₁ − λ₂ − λ₃ − λ₄), and the entanglement of formation is the
    binary entropy of (1 + √(1 − C²)) / 2.
    """
    bp: Union[BipartitionSpec, None] = None
    if isinstance(rho, np.ndarray):
        matrix = np.asarray(rho, dtype=np.complex128)
    else:
        matrix, system, ordering = _as_qubit_matrix(rho, ordering)
        if system.n_modes != 2:
            raise ValueError(f"need a two-mode system, got {system.n_modes} modes")
        bp = BipartitionSpec(kept=(system.modes[0],), traced=(system.modes[1],))
    if matrix.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got {matrix.shape}")
    if np.abs(matrix - matrix.conj().T).max() >= 1e-9 or abs(matrix.trace() - 1.0) >= 1e-9:
        raise ValueError("input is not a density matrix (Hermitian, unit trace)")

    eig = hermitian_eigenvalues(matrix, tol=1e-9)
    vals = np.clip(eig.eigenvalues, 0.0, None)
    sqrt_rho = (eig.vectors * np.sqrt(vals)) @ eig.vectors.conj().T
    flipped = _SPIN_FLIP @ matrix.conj() @ _SPIN_FLIP
    m = sqrt_rho @ flipped @ sqrt_rho
    lam = np.sqrt(np.clip(hermitian_eigenvalues(m, tol=1e-9).eigenvalues, 0.0, None))
    concurrence = float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))
    eof = _binary_entropy((1.0 + math.sqrt(1.0 - concurrence**2)) / 2.0)
    return (
        MeasureResult(value=concurrence, measure="concurrence", bipartition=bp, ordering=ordering),
        MeasureResult(value=eof, measure="eof", bipartition=bp, ordering=ordering),
    )
