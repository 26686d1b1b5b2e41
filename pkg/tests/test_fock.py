import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermiorder.fock import (
    ANNIHILATION,
    CREATION,
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
    state_to_json_str,
)
from fermiorder.states import parity_violating_state, spin_singlet_state, two_delocalized_fermions
from _oracles import jw_matrix

tol = 1e-12


def small_system(n=3):
    return ModeSystem.from_blocks(tuple(f"a{i}" for i in range(1, n)), ("c1",))


# --- construction and validation ---------------------------------------------


def test_mode_labels_must_be_distinct():
    with pytest.raises(ValueError):
        ModeSystem(("a", "a"), a_count=1)


def test_mode_count_guard():
    with pytest.raises(ValueError):
        ModeSystem(tuple(f"m{i}" for i in range(15)), a_count=1)


def test_unknown_mode_rejected():
    system = ModeSystem.from_blocks(("a",), ("c",))
    with pytest.raises(UnknownModeError):
        apply(CREATION, "zz", FockVector.vacuum(system))


def test_bitstring_round_trip():
    system = ModeSystem.from_blocks(("a", "b"), ("c",))
    assert system.index_of_bits("101") == 5
    assert system.bits_of_index(5) == "101"
    with pytest.raises(ValueError):
        system.index_of_bits("10")


# --- single-operator actions -------------------------------------------------


def test_creation_on_vacuum():
    system = ModeSystem.from_blocks(("a",), ("c",))
    v = apply(CREATION, "a", FockVector.vacuum(system))
    assert v.amplitude("10") == 1.0


def test_creation_sign_through_occupied_mode():
    """c acting after a picks up one anticommutation sign."""
    system = ModeSystem.from_blocks(("a",), ("c",))
    v = apply(CREATION, "a", FockVector.vacuum(system))
    v = apply(CREATION, "a", v)
    assert v.norm() == 0.0

    w = from_operator_string(OperatorString.parse("c+ a+"), system)
    assert w.amplitude("11") == -1.0


def test_annihilation_of_leading_mode():
    system = ModeSystem.from_blocks(("a",), ("c",))
    v = from_operator_string(OperatorString.parse("a+ c+"), system)
    out = apply(ANNIHILATION, "a", v)
    assert out.amplitude("01") == 1.0


def test_operator_string_examples():
    system = ModeSystem.from_blocks(("a",), ("c",))
    assert from_operator_string(OperatorString.parse("a+ c+"), system).amplitude("11") == 1.0
    assert from_operator_string(OperatorString.parse("c+ a+"), system).amplitude("11") == -1.0
    assert from_operator_string(OperatorString.parse("a+ a+"), system).norm() == 0.0


def test_operator_string_parse_errors():
    with pytest.raises(ValueError):
        OperatorString.parse("a1")
    with pytest.raises(ValueError):
        OperatorString.parse("+")


# --- algebraic properties ----------------------------------------------------

kinds = st.sampled_from([CREATION, ANNIHILATION])


@settings(deadline=None, max_examples=60)
@given(
    seed=st.integers(min_value=0, max_value=10_000),
    i=st.integers(min_value=0, max_value=3),
    j=st.integers(min_value=0, max_value=3),
    kind_i=kinds,
    kind_j=kinds,
)
def test_anticommutation_for_distinct_modes(seed, i, j, kind_i, kind_j):
    system = ModeSystem.from_blocks(("a1", "a2"), ("c1", "c2"))
    if i == j:
        return
    v = random_state(system, seed=seed)
    mi, mj = system.modes[i], system.modes[j]
    left = apply(kind_i, mi, apply(kind_j, mj, v))
    right = apply(kind_j, mj, apply(kind_i, mi, v))
    assert np.array_equal(left.amplitudes, -right.amplitudes)


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(min_value=0, max_value=10_000), k=st.integers(min_value=0, max_value=2), kind=kinds)
def test_nilpotency(seed, k, kind):
    system = small_system()
    v = random_state(system, seed=seed)
    label = system.modes[k]
    twice = apply(kind, label, apply(kind, label, v))
    assert twice.norm() == 0.0


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(min_value=0, max_value=10_000), k=st.integers(min_value=0, max_value=2))
def test_number_anticommutator_is_identity(seed, k):
    """{a_k, a_k†} = 1 holds entrywise with exact integer signs."""
    system = small_system()
    v = random_state(system, seed=seed)
    label = system.modes[k]
    first = apply(CREATION, label, apply(ANNIHILATION, label, v))
    second = apply(ANNIHILATION, label, apply(CREATION, label, v))
    assert np.array_equal(first.amplitudes + second.amplitudes, v.amplitudes)


def test_permuted_creation_strings_give_unit_amplitude():
    system = ModeSystem.from_blocks(("a1", "a2"), ("c1", "c2"))
    from itertools import permutations

    for perm in permutations(("a1", "a2", "c1", "c2")):
        ops = OperatorString(tuple((label, CREATION) for label in perm))
        v = from_operator_string(ops, system)
        amp = v.amplitude("1111")
        assert amp in (1.0, -1.0)
        assert abs(v.norm() - 1.0) < tol


# --- dense-matrix oracle equivalence -----------------------------------------


def test_apply_matches_dense_oracle_exactly():
    """Bit tricks and kron-built parity strings must agree sign for sign."""
    for n in range(1, 7):
        system = ModeSystem(tuple(f"m{k}" for k in range(n)), a_count=max(1, n // 2))
        for k in range(n):
            for kind in (CREATION, ANNIHILATION):
                dense = jw_matrix(n, k, "+" if kind == CREATION else "-")
                for idx in range(system.dim):
                    v = basis_state(system, system.bits_of_index(idx))
                    ours = apply(kind, system.modes[k], v).amplitudes
                    assert np.array_equal(ours, dense[:, idx])


# --- parity and superselection -----------------------------------------------


def test_parity_examples():
    assert parity_of("0000") == "even"
    assert parity_of("1000") == "odd"
    assert parity_of("1010") == "even"
    with pytest.raises(ValueError):
        parity_of("10x0")


def test_ssr_flags_for_named_states():
    assert ssr_compliant(two_delocalized_fermions()) is True
    assert ssr_compliant(parity_violating_state()) is False
    assert ssr_compliant(spin_singlet_state()) is True


def test_ssr_on_density_blocks():
    system = ModeSystem.from_blocks(("a",), ("c",))
    even = random_state(system, sector="even", seed=1)
    odd = random_state(system, sector="odd", seed=2)
    mixed = 0.5 * np.outer(even.amplitudes, even.amplitudes.conj()) + 0.5 * np.outer(
        odd.amplitudes, odd.amplitudes.conj()
    )
    from fermiorder.fock import DensityOperator

    assert ssr_compliant(DensityOperator(system, mixed)) is True
    coherent = 0.5 * np.outer(
        even.amplitudes + odd.amplitudes, (even.amplitudes + odd.amplitudes).conj()
    )
    assert ssr_compliant(DensityOperator(system, coherent)) is False


# --- random states ------------------------------------------------------------


def test_random_state_deterministic_per_seed():
    system = small_system()
    a = random_state(system, sector="any", seed=42)
    b = random_state(system, sector="any", seed=42)
    assert np.array_equal(a.amplitudes, b.amplitudes)


def test_random_state_sector_support():
    system = ModeSystem.from_blocks(("a1", "a2"), ("c1", "c2"))
    even = random_state(system, sector="even", seed=0)
    assert ssr_compliant(even)
    assert np.count_nonzero(even.amplitudes) == 8
    odd = random_state(system, sector="odd", seed=0)
    assert ssr_compliant(odd)
    assert abs(odd.norm() - 1.0) < tol


# --- serialization -------------------------------------------------------------


def test_json_round_trip():
    state = spin_singlet_state()
    text = state_to_json_str(state)
    loaded = state_from_json_str(text, a_count=2)
    assert loaded.system.modes == state.system.modes
    assert np.array_equal(loaded.amplitudes, state.amplitudes)
    payload = json.loads(text)
    assert set(payload) == {"modes", "amplitudes"}
    assert all(len(v) == 2 for v in payload["amplitudes"].values())
