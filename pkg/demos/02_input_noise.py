"""Average fidelity when only the input qutrit is noisy, against the printed closed forms.

Bit flip, phase flip and amplitude damping agree exactly.  Depolarizing noise
does not: every pure state keeps fidelity 1 - 3p/4 under the depolarizing
Kraus set, while the printed curve is 1 - 3p/5.
"""

from qutrit_teleport import FormulaId, NoiseKind, NoiseSpec, TeleportScenario, average_fidelity
from qutrit_teleport.formulas import REGISTRY

kinds = [NoiseKind.BIT_FLIP, NoiseKind.PHASE_FLIP, NoiseKind.DEPOLARIZING,
         NoiseKind.AMPLITUDE_DAMPING]
print("p     " + "  ".join(f"{k.short:>8} {'printed':>8}" for k in kinds))
for i in range(11):
    p = i / 10
    cells = []
    for k in kinds:
        sim = average_fidelity(TeleportScenario(NoiseSpec(k, p)))
        printed = REGISTRY[FormulaId((k, NoiseKind.NONE, NoiseKind.NONE), "input")]((p,))
        cells.append(f"{sim:8.5f} {printed:8.5f}")
    print(f"{p:<4}  " + "  ".join(cells))
