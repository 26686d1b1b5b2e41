"""
Exact creation and annihilation on a small mode register
========================================================

Walks through the basis conventions: how occupation bitstrings map to basis
vectors, where the minus signs come from, and why operator order matters
even before any entanglement question shows up.
"""

import numpy as np

from fermiorder import (
    CREATION,
    FockVector,
    ModeSystem,
    OperatorString,
    apply,
    basis_state,
    from_operator_string,
    ssr_compliant,
)

# Three named modes. The first two are the "kept" block, the last is the
# "traced" block; for this demo only the ordering of labels matters.
system = ModeSystem.from_blocks(("top", "bottom"), ("env",))
print(f"modes: {system.modes}, dimension {system.dim}")

# Basis states are labelled by occupation bitstrings, first mode leftmost.
vac = basis_state(system, "000")
one = basis_state(system, "100")
print("vacuum amplitude at 000:", vac.amplitude("000"))

# Creating "top" on the vacuum lands on |100> with phase +1.
created = apply(CREATION, "top", vac)
print("top+ |000> -> amplitude at 100:", created.amplitude("100"))

# Creating "bottom" on |100> has to hop over the occupied "top" mode, so the
# amplitude picks up a factor (-1).
hopped = apply(CREATION, "bottom", one)
print("bottom+ |100> -> amplitude at 110:", hopped.amplitude("110"))

# Operator strings read right to left; the rightmost factor acts first.
both_orders = [
    OperatorString.parse("top+ bottom+"),
    OperatorString.parse("bottom+ top+"),
]
for s in both_orders:
    state = from_operator_string(s, system)
    print(f"{s} |vac> has amplitude {state.amplitude('110'):+.0f} at 110")

# The anticommutator {a_i, a_j+} vanishes for distinct modes. Check it on a
# random vector rather than trusting the printout above.
rng = np.random.default_rng(5)
amps = rng.standard_normal(system.dim) + 1j * rng.standard_normal(system.dim)
probe = FockVector(system, amps / np.linalg.norm(amps))

left = apply("-", "top", apply("+", "env", probe))
right = apply("+", "env", apply("-", "top", probe))
print("max |{top-, env+}| entry on a random vector:",
      np.abs(left.amplitudes + right.amplitudes).max())

# Parity superselection: a definite particle-number state complies, a
# superposition of even and odd sectors does not.
print("ssr_compliant(|110>):", ssr_compliant(basis_state(system, "110")))
mixed_parity = FockVector(system, (vac.amplitudes + one.amplitudes) / np.sqrt(2))
print("ssr_compliant((|000>+|100>)/sqrt 2):", ssr_compliant(mixed_parity))
