"""Audit every printed closed form on a 3-point grid and list the ones that disagree."""

from qutrit_teleport.fidelity import QuadratureSpec, verify_all

results = verify_all([0.0, 0.5, 1.0], QuadratureSpec(32, 32))
bad = {fid: reps for fid, reps in results.items() if not all(r.matches for r in reps)}
print(f"{len(results) - len(bad)} of {len(results)} printed forms match the simulation\n")
for fid, reps in bad.items():
    worst = max(reps, key=lambda r: r.abs_diff)
    pt = ", ".join(f"{n}={v:g}" for n, v in zip(fid.variables, worst.grid_point))
    print(f"{fid.label:<32} worst at {pt:<18} simulated {worst.numeric:.6f}"
          f"  printed {worst.closed_form:.6f}")
