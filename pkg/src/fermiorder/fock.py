"""Exact fermionic Fock space over named modes.

Conventions
-----------
A system of N modes carries one fixed *canonical order*: the kept (``a``)
modes first, the traced (``c``) modes after them. The basis vector for an
occupation pattern is the product of creation operators for the occupied
modes, written left to right in canonical order and applied to the vacuum;
its phase is +1 by definition. Bra vectors are the adjoints of those kets,
so the dual basis carries the reversed operator order and no extra stored
phases.

Bitstrings are serialized left to right in canonical order: position 0 of
``"1010"`` is the occupation of the first canonical mode. Internally a
bitstring maps to the integer whose most significant bit is mode 0, so a
dense amplitude array reshaped to ``[2] * N`` puts mode k on axis k.

Acting with a creation or annihilation operator on mode k multiplies the
amplitude by ``(-1) ** (number of occupied modes strictly before k)``; that
single integer sign rule is the source of every sign in this package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .numerics import DEFAULT_TOL, as_complex_matrix

#: Operator kinds, matching the operator-string grammar tokens.
CREATION = "+"
ANNIHILATION = "-"

#: Largest number of modes a system may hold (dense arrays of size 2**N).
MAX_MODES = 14

EVEN = "even"
ODD = "odd"
ANY_SECTOR = "any"


class UnknownModeError(KeyError):
    """A mode label does not belong to the system it was used with."""


def _check_label(label: str) -> str:
    if not isinstance(label, str) or not label.isalnum():
        raise ValueError(f"mode labels must be non-empty alphanumeric strings, got {label!r}")
    return label


@dataclass(frozen=True)
class ModeSystem:
    """An ordered set of fermionic modes with a kept/traced split.

    ``modes`` is the canonical order; the first ``a_count`` labels are the
    kept block, the rest the traced block.
    """

    modes: tuple[str, ...]
    a_count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "modes", tuple(self.modes))
        for label in self.modes:
            _check_label(label)
        if len(set(self.modes)) != len(self.modes):
            raise ValueError(f"mode labels must be distinct: {self.modes}")
        if not 1 <= len(self.modes) <= MAX_MODES:
            raise ValueError(f"need between 1 and {MAX_MODES} modes, got {len(self.modes)}")
        if not 0 <= self.a_count <= len(self.modes):
            raise ValueError(f"a_count {self.a_count} out of range for {len(self.modes)} modes")

    @classmethod
    def from_blocks(cls, kept: Sequence[str], traced: Sequence[str] = ()) -> "ModeSystem":
        """Build a system from the kept block followed by the traced block."""
        return cls(tuple(kept) + tuple(traced), a_count=len(tuple(kept)))

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def dim(self) -> int:
        return 1 << self.n_modes

    @property
    def a_labels(self) -> tuple[str, ...]:
        return self.modes[: self.a_count]

    @property
    def c_labels(self) -> tuple[str, ...]:
        return self.modes[self.a_count :]

    def position(self, label: str) -> int:
        try:
            return self.modes.index(label)
        except ValueError:
            raise UnknownModeError(f"mode {label!r} not in system {self.modes}") from None

    def index_of_bits(self, bits: str) -> int:
        """Integer index of a serialized occupation bitstring."""
        if len(bits) != self.n_modes or set(bits) - {"0", "1"}:
            raise ValueError(f"expected a {self.n_modes}-character 0/1 string, got {bits!r}")
        return int(bits, 2)

    def bits_of_index(self, index: int) -> str:
        return format(index, f"0{self.n_modes}b")

    def bipartition(self) -> "BipartitionSpec":
        """The system's own kept/traced split as a bipartition."""
        return BipartitionSpec(kept=self.a_labels, traced=self.c_labels)


@dataclass(frozen=True)
class BipartitionSpec:
    """Disjoint kept/traced mode sets covering a whole system."""

    kept: tuple[str, ...]
    traced: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "kept", tuple(self.kept))
        object.__setattr__(self, "traced", tuple(self.traced))
        overlap = set(self.kept) & set(self.traced)
        if overlap:
            raise ValueError(f"kept and traced blocks overlap: {sorted(overlap)}")

    def validate_for(self, system: ModeSystem) -> None:
        if set(self.kept) | set(self.traced) != set(system.modes) or len(self.kept) + len(
            self.traced
        ) != system.n_modes:
            raise ValueError(
                f"bipartition {self.kept}|{self.traced} does not cover system {system.modes}"
            )


def parity_of(bits: str) -> str:
    """Parity ("even" or "odd") of the total occupation of a bitstring."""
    if set(bits) - {"0", "1"}:
        raise ValueError(f"expected a 0/1 string, got {bits!r}")
    return ODD if bits.count("1") % 2 else EVEN


@lru_cache(maxsize=None)
def _parity_vector(n_modes: int) -> np.ndarray:
    """Total occupation parity (0 or 1) for every index of an n-mode system."""
    idx = np.arange(1 << n_modes, dtype=np.uint64)
    par = (np.bitwise_count(idx) & 1).astype(np.int8)
    par.setflags(write=False)
    return par


@dataclass(frozen=True)
class _ModeAction:
    """Nonzero matrix elements <target|op|source> of a single mode operator."""

    sources: np.ndarray
    targets: np.ndarray
    signs: np.ndarray


@lru_cache(maxsize=None)
def _mode_action(system: ModeSystem, kind: str, label: str) -> _ModeAction:
    if kind not in (CREATION, ANNIHILATION):
        raise ValueError(f"kind must be {CREATION!r} or {ANNIHILATION!r}, got {kind!r}")
    k = system.position(label)
    n = system.n_modes
    idx = np.arange(system.dim, dtype=np.int64)
    bit = 1 << (n - 1 - k)
    # occupied modes strictly before k live in the bits above position n-1-k
    before = (idx >> (n - k)).astype(np.uint64)
    signs_all = 1 - 2 * (np.bitwise_count(before).astype(np.int64) & 1)
    if kind == CREATION:
        sources = idx[(idx & bit) == 0]
    else:
        sources = idx[(idx & bit) != 0]
    targets = sources ^ bit
    signs = signs_all[sources]
    for arr in (sources, targets, signs):
        arr.setflags(write=False)
    return _ModeAction(sources=sources, targets=targets, signs=signs)


@dataclass(frozen=True, eq=False)
class FockVector:
    """A (possibly unnormalized) pure state as a dense amplitude array."""

    system: ModeSystem
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.system.dim,):
            raise ValueError(f"expected {self.system.dim} amplitudes, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def vacuum(cls, system: ModeSystem) -> "FockVector":
        amps = np.zeros(system.dim, dtype=np.complex128)
        amps[0] = 1.0
        return cls(system, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = DEFAULT_TOL) -> bool:
        return abs(self.norm() ** 2 - 1.0) < tol

    def normalized(self) -> "FockVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return FockVector(self.system, self.amplitudes / n)

    def amplitude(self, bits: str) -> complex:
        return complex(self.amplitudes[self.system.index_of_bits(bits)])

    def to_density(self) -> "DensityOperator":
        if not self.is_normalized(tol=1e-9):
            raise ValueError("state must be normalized before forming a density operator")
        m = np.outer(self.amplitudes, self.amplitudes.conj())
        # fused multiply-add lanes can leave the outer product a few ulp off
        # exact conjugate symmetry; restore it so reductions, which preserve
        # Hermiticity exactly, hand back exactly Hermitian matrices
        m = 0.5 * (m + m.conj().T)
        return DensityOperator(self.system, m)

    def to_json(self) -> dict:
        amps = {}
        for i, a in enumerate(self.amplitudes):
            if a != 0:
                amps[self.system.bits_of_index(i)] = [float(a.real), float(a.imag)]
        return {"modes": list(self.system.modes), "amplitudes": amps}

    @classmethod
    def from_json(cls, obj: dict, a_count: Union[int, None] = None) -> "FockVector":
        modes = tuple(obj["modes"])
        system = ModeSystem(modes, a_count=len(modes) if a_count is None else a_count)
        amps = np.zeros(system.dim, dtype=np.complex128)
        for bits, (re, im) in obj["amplitudes"].items():
            amps[system.index_of_bits(bits)] = complex(re, im)
        return cls(system, amps)


def basis_state(system: ModeSystem, bits: str) -> FockVector:
    """The canonical basis vector for one occupation bitstring (phase +1)."""
    amps = np.zeros(system.dim, dtype=np.complex128)
    amps[system.index_of_bits(bits)] = 1.0
    return FockVector(system, amps)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A density matrix in the canonical occupation basis (row = ket string)."""

    system: ModeSystem
    matrix: np.ndarray
    validate: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        m = as_complex_matrix(self.matrix)
        if m.shape != (self.system.dim, self.system.dim):
            raise ValueError(f"expected a {self.system.dim}x{self.system.dim} matrix")
        if self.validate:
            dev = np.abs(m - m.conj().T).max()
            if dev >= DEFAULT_TOL:
                raise ValueError(f"density matrix not Hermitian: deviation {dev:.3e}")
            tr = m.trace()
            if abs(tr - 1.0) >= 1e-9:
                raise ValueError(f"density matrix trace is {tr}, expected 1")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def to_json(self) -> dict:
        entries = {}
        for i in range(self.system.dim):
            for j in range(self.system.dim):
                v = self.matrix[i, j]
                if v != 0:
                    key = f"{self.system.bits_of_index(i)},{self.system.bits_of_index(j)}"
                    entries[key] = [float(v.real), float(v.imag)]
        return {"modes": list(self.system.modes), "entries": entries}


FockState = Union[FockVector, DensityOperator]


@dataclass(frozen=True)
class OperatorString:
    """An ordered product of mode operators; the rightmost factor acts first."""

    factors: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        factors = tuple((str(label), str(kind)) for label, kind in self.factors)
        for label, kind in factors:
            _check_label(label)
            if kind not in (CREATION, ANNIHILATION):
                raise ValueError(f"operator kind must be '+' or '-', got {kind!r}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def parse(cls, text: str) -> "OperatorString":
        """Parse whitespace-separated tokens like ``"a1+ c2-"``."""
        factors = []
        for token in text.split():
            label, kind = token[:-1], token[-1]
            if kind not in (CREATION, ANNIHILATION) or not label:
                raise ValueError(f"malformed operator token {token!r} (expected '<label>+/-')")
            factors.append((label, kind))
        return cls(tuple(factors))

    def __str__(self) -> str:
        return " ".join(f"{label}{kind}" for label, kind in self.factors)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.factors)


def apply(kind: str, mode: str, state: FockVector) -> FockVector:
    """Apply one creation or annihilation operator; the result is unnormalized.

    Creation on an occupied mode and annihilation on an empty mode both give
    the zero vector for that component; otherwise the occupation bit flips
    and the amplitude picks up the Jordan-Wigner sign of the modes before it.
    """
    act = _mode_action(state.system, kind, mode)
    out = np.zeros_like(state.amplitudes)
    out[act.targets] = act.signs * state.amplitudes[act.sources]
    return FockVector(state.system, out)


def _apply_left(kind: str, mode: str, matrix: np.ndarray, system: ModeSystem) -> np.ndarray:
    """op @ matrix for a single mode operator."""
    act = _mode_action(system, kind, mode)
    out = np.zeros_like(matrix)
    out[act.targets, :] = act.signs[:, None] * matrix[act.sources, :]
    return out


def _apply_right(kind: str, mode: str, matrix: np.ndarray, system: ModeSystem) -> np.ndarray:
    """matrix @ op for a single mode operator."""
    act = _mode_action(system, kind, mode)
    out = np.zeros_like(matrix)
    out[:, act.sources] = act.signs[None, :] * matrix[:, act.targets]
    return out


def from_operator_string(ops: OperatorString, system: ModeSystem) -> FockVector:
    """Apply an operator string to the vacuum, rightmost factor first.

    The result is a canonical basis vector up to an exact integer sign, or
    the zero vector when an occupation constraint is violated.
    """
    state = FockVector.vacuum(system)
    for label, kind in reversed(ops.factors):
        state = apply(kind, label, state)
    return state


def ssr_compliant(state: FockState, tol: float = DEFAULT_TOL) -> bool:
    """Parity superselection check.

    A pure state complies when every nonzero amplitude sits in one parity
    sector; a density operator complies when no entry above ``tol`` connects
    bitstrings of different total parity.
    """
    par = _parity_vector(state.system.n_modes)
    if isinstance(state, FockVector):
        support = np.abs(state.amplitudes) > tol
        parities = np.unique(par[support])
        return len(parities) <= 1
    cross = par[:, None] != par[None, :]
    return bool(np.abs(state.matrix[cross]).max(initial=0.0) <= tol)


def sector_indices(system: ModeSystem, sector: str) -> np.ndarray:
    """Basis indices of one parity sector (or all of them for "any")."""
    if sector not in (EVEN, ODD, ANY_SECTOR):
        raise ValueError(f"sector must be 'even', 'odd' or 'any', got {sector!r}")
    idx = np.arange(system.dim)
    if sector == ANY_SECTOR:
        return idx
    par = _parity_vector(system.n_modes)
    return idx[par == (1 if sector == ODD else 0)]


def random_state(system: ModeSystem, sector: str = ANY_SECTOR, seed: int = 0) -> FockVector:
    """Haar-uniform random pure state on a parity sector.

    Amplitudes are independent standard complex Gaussians on the sector's
    bitstrings, then normalized; the same seed always gives the same state.
    """
    rng = np.random.default_rng(seed)
    support = sector_indices(system, sector)
    amps = np.zeros(system.dim, dtype=np.complex128)
    amps[support] = rng.standard_normal(len(support)) + 1j * rng.standard_normal(len(support))
    return FockVector(system, amps).normalized()


def state_from_terms(
    system: ModeSystem, terms: Iterable[tuple[complex, OperatorString]], normalize: bool = True
) -> FockVector:
    """Superpose weighted operator strings applied to the vacuum."""
    total = np.zeros(system.dim, dtype=np.complex128)
    for coeff, ops in terms:
        total = total + complex(coeff) * from_operator_string(ops, system).amplitudes
    state = FockVector(system, total)
    return state.normalized() if normalize else state


def state_to_json_str(state: FockVector) -> str:
    return json.dumps(state.to_json(), sort_keys=True)


def state_from_json_str(text: str, a_count: Union[int, None] = None) -> FockVector:
    return FockVector.from_json(json.loads(text), a_count=a_count)
