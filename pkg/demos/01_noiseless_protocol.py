"""Teleport a random qutrit with a perfect channel and look at every outcome."""

import numpy as np

from qutrit_teleport import derive_corrections, general_input, state_fidelity, teleport

rng = np.random.default_rng(7)
z = rng.normal(size=3) + 1j * rng.normal(size=3)
psi = general_input(*(z / np.linalg.norm(z)))

words = derive_corrections().words
print("outcome  P(j)      F before  F after  correction (Z^m Y^n)^dagger")
for o in teleport(psi):
    before = state_fidelity(psi, o.bob_state_raw)
    after = state_fidelity(psi, o.bob_state_corrected)
    m, n = words[o.index]
    print(f"{o.index:>7}  {o.probability:.6f}  {before:.6f}  {after:.6f}  m={m} n={n}")
