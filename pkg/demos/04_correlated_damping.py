"""Correlated amplitude damping on the shared pair, as a function of the correlation eta.

At p = 0 and p = 1 the correlation does nothing.  In between, joint decay
of |11> and |22> into |00> keeps the pair closer to maximally entangled, so
more correlation means higher fidelity.
"""

from qutrit_teleport import cad_eta_independence_probe

rep = cad_eta_independence_probe([0.0, 0.25, 0.5, 0.75, 1.0], [0.0, 0.25, 0.5, 0.75, 1.0])
print("p \\ eta " + "".join(f"{e:>9g}" for e in rep.eta_grid) + "   spread")
for p, row, spread in zip(rep.p_grid, rep.simulated, rep.eta_variation()):
    print(f"{p:<8g}" + "".join(f"{v:9.5f}" for v in row) + f"   {spread:.4f}")
