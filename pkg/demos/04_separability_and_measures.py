# Separability checks and entanglement measures on mode pairs.
#
# Builds convex mixtures of block-local states (always separable, and the
# tests agree), contrasts them with an occupation-entangled pair, then runs
# a one-parameter family where negativity and entanglement of formation
# rise together.

import numpy as np

from fermiorder import (
    CREATION,
    ModeOrdering,
    OperatorString,
    SeparableDecomposition,
    build_separable,
    concurrence_and_eof,
    negativity,
    ppt_separable,
    qubit_image,
)
from fermiorder.reduction import sweep_system
from fermiorder.states import occupation_bell_state, tilted_pair_state

system = sweep_system(1, 1)
ordering = ModeOrdering.canonical(system)

# An equal mixture of "kept mode occupied" and "traced mode occupied".
# Classically correlated, never entangled.
dec = SeparableDecomposition(
    weights=(0.5, 0.5),
    terms_kept=(OperatorString((("a1", CREATION),)), OperatorString(())),
    terms_traced=(OperatorString(()), OperatorString((("c1", CREATION),))),
)
rho = build_separable(dec, system)
print("mixture negativity:", negativity(rho, ordering=ordering).value)
print("mixture passes the separability test:", ppt_separable(rho, ordering=ordering))

# The coherent version of the same occupation pattern is a Bell state in
# the occupation basis and fails both checks.
bell = occupation_bell_state()
bell_ordering = ModeOrdering.canonical(bell.system)
print("\npair state negativity:", negativity(bell, ordering=bell_ordering).value)
print("pair state passes the separability test:",
      ppt_separable(bell.to_density(), ordering=bell_ordering))

c, e = concurrence_and_eof(qubit_image(bell.to_density(), bell_ordering))
print(f"pair state concurrence {c.value:.3f}, entanglement of formation {e.value:.3f}")

# Tilt the pair from nearly-product to maximally entangled and watch all
# three measures climb.
print("\n theta/pi   negativity  concurrence  eof")
for theta in np.linspace(np.pi / 16, np.pi / 4, 8):
    state = tilted_pair_state(float(theta))
    om = ModeOrdering.canonical(state.system)
    n = negativity(state, ordering=om).value
    c, e = concurrence_and_eof(qubit_image(state.to_density(), om))
    print(f"   {theta / np.pi:.3f}     {n:.4f}      {c.value:.4f}       {e.value:.4f}")
