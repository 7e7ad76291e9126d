"""Human-readable reports: formula audit, ordering table and CAD probe.

The ordering table encodes, for each noise kind ``X``, a chain over five
placements of that noise: ``(X,non,non)``, ``(X,X,X)``, ``(X,X,non)``,
``(X,non,X)`` and ``(non,X,X)``.  Each placement is evaluated with every
active slot at the same probability ``p``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .channels import NoiseKind, NoiseSpec
from .fidelity import (
    DEFAULT_QUADRATURE,
    MATCH_TOL,
    CadProbeReport,
    FidelityReport,
    QuadratureSpec,
    average_fidelity,
    unit_grid,
    verify_all,
)
from .formulas import REGISTRY, FormulaId
from .teleportation import TeleportScenario

EQUALITY_TOL = 1e-9
STRICT_MARGIN = 1e-6

NON = NoiseKind.NONE
PLACEMENTS: Tuple[Tuple[bool, bool, bool], ...] = (
    (True, False, False),
    (True, True, True),
    (True, True, False),
    (True, False, True),
    (False, True, True),
)

#: row label -> (noise kind, relation between consecutive placements)
TABLE1_ROWS: Dict[str, Tuple[NoiseKind, Tuple[str, ...]]] = {
    "a": (NoiseKind.BIT_FLIP, ("<", "<", "=", "=")),
    "b": (NoiseKind.PHASE_FLIP, ("<", "<", "=", "<")),
    "c": (NoiseKind.DEPOLARIZING, ("<", "<", "=", "=")),
    "d": (NoiseKind.AMPLITUDE_DAMPING, ("=", "=", "=", "<")),
}

# which registry variants describe a placement with all active slots at p
_VARIANTS_FOR = {
    (True, False, False): ("input",),
    (True, True, True): ("input_alice_bob", "channel_input"),
    (True, True, False): ("input_alice",),
    (True, False, True): ("input_bob",),
    (False, True, True): ("channel",),
}


def _triple(kind: NoiseKind, mask) -> Tuple[NoiseKind, NoiseKind, NoiseKind]:
    return tuple(kind if on else NON for on in mask)


def placement_label(kind: NoiseKind, mask) -> str:
    return ",".join(k.short for k in _triple(kind, mask))


@dataclass(frozen=True)
class Operand:
    label: str
    simulated: float
    #: printed value from every registry entry describing this placement
    printed: Tuple[Tuple[str, float], ...]

    @property
    def flagged(self) -> List[str]:
        return [lab for lab, v in self.printed if abs(v - self.simulated) > MATCH_TOL]


@dataclass(frozen=True)
class Relation:
    left: Operand
    op: str
    right: Operand

    @property
    def holds(self) -> bool:
        a, b = self.left.simulated, self.right.simulated
        if self.op == "=":
            return abs(a - b) <= EQUALITY_TOL
        return b - a > STRICT_MARGIN

    @property
    def printed_holds(self) -> Optional[bool]:
        """The relation evaluated on printed values, when both sides have one."""
        if not self.left.printed or not self.right.printed:
            return None
        a, b = self.left.printed[0][1], self.right.printed[0][1]
        return abs(a - b) <= EQUALITY_TOL if self.op == "=" else b - a > STRICT_MARGIN

    @property
    def adjudicated(self) -> bool:
        """Fails on simulation, but a printed formula behind it is already flagged."""
        return not self.holds and bool(self.left.flagged or self.right.flagged)

    @property
    def verdict(self) -> str:
        if self.holds:
            return "holds"
        return "violated (printed formula flagged)" if self.adjudicated else "violated"


@dataclass(frozen=True)
class Table1Row:
    row: str
    kind: NoiseKind
    p: float
    operands: Tuple[Operand, ...]
    relations: Tuple[Relation, ...]

    @property
    def verdict(self) -> str:
        if all(r.holds for r in self.relations):
            return "holds"
        if all(r.holds or r.adjudicated for r in self.relations):
            return "adjudicated"
        return "violated"

    @property
    def acceptable(self) -> bool:
        return self.verdict != "violated"

    def chain(self) -> str:
        parts = [self.operands[0].label]
        for rel in self.relations:
            parts += [rel.op, rel.right.label]
        return " ".join(parts)


def _operand(kind: NoiseKind, mask, p: float, quad: QuadratureSpec) -> Operand:
    specs = [NoiseSpec(kind, p) if on else NoiseSpec() for on in mask]
    sim = average_fidelity(TeleportScenario(*specs), quad)
    printed = []
    for variant in _VARIANTS_FOR[mask]:
        fid = FormulaId(_triple(kind, mask), variant)
        if fid in REGISTRY:
            printed.append((fid.label, REGISTRY[fid]((p,) * len(fid.variables))))
    return Operand(placement_label(kind, mask), sim, tuple(printed))


def table1(p_values: Sequence[float], quad: QuadratureSpec = DEFAULT_QUADRATURE
           ) -> List[Table1Row]:
    """Evaluate every ordering row at every ``p`` (each in (0, 1])."""
    out = []
    for p in p_values:
        p = float(p)
        if not 0.0 < p <= 1.0:
            raise ValueError(f"p must lie in (0, 1], got {p!r}")
        for row, (kind, ops) in TABLE1_ROWS.items():
            operands = tuple(_operand(kind, m, p, quad) for m in PLACEMENTS)
            rels = tuple(Relation(operands[i], op, operands[i + 1]) for i, op in enumerate(ops))
            out.append(Table1Row(row, kind, p, operands, rels))
    return out


def _g(x: float) -> str:
    return format(x, ".12g")


def render_table1(rows: Sequence[Table1Row]) -> str:
    buf = io.StringIO()
    for r in rows:
        buf.write(f"row ({r.row}) {r.kind.short} p={_g(r.p)}: {r.verdict}\n")
        buf.write(f"  chain: {r.chain()}\n")
        for o in r.operands:
            printed = ", ".join(f"{lab}={_g(v)}" for lab, v in o.printed) or "no printed form"
            flag = f"  [flagged: {', '.join(o.flagged)}]" if o.flagged else ""
            buf.write(f"  {o.label:<10} simulated={_g(o.simulated)}  printed: {printed}{flag}\n")
        for rel in r.relations:
            ph = rel.printed_holds
            ptxt = "n/a" if ph is None else ("holds" if ph else "violated")
            buf.write(f"  {rel.left.label} {rel.op} {rel.right.label}: {rel.verdict}"
                      f" (simulated {_g(rel.left.simulated)} vs {_g(rel.right.simulated)};"
                      f" printed {ptxt})\n")
    n_bad = sum(not r.acceptable for r in rows)
    buf.write(f"summary: {len(rows) - n_bad}/{len(rows)} rows hold or are adjudicated\n")
    return buf.getvalue()


def render_verification(results: Dict[FormulaId, List[FidelityReport]]) -> str:
    buf = io.StringIO()
    bad = [fid for fid, reps in results.items() if not all(r.matches for r in reps)]
    n_pts = sum(len(v) for v in results.values())
    n_mis = sum(not r.matches for v in results.values() for r in v)
    buf.write(f"formulas audited: {len(results)}\n")
    buf.write(f"grid points: {n_pts}, mismatching points: {n_mis}\n")
    buf.write(f"formulas with a paper-discrepancy: {len(bad)}\n")
    for fid in bad:
        worst = max(r.abs_diff for r in results[fid])
        buf.write(f"  {fid.label}  max abs_diff={worst:.6g}\n")
    buf.write(f"tolerance: abs_diff <= {MATCH_TOL:g}\n\n")
    for fid, reps in results.items():
        status = "match" if all(r.matches for r in reps) else "paper-discrepancy"
        buf.write(f"== {fid.label}: {status}\n")
        buf.write(f"   printed: {REGISTRY[fid].printed}\n")
        buf.write(f"   variables: {', '.join(fid.variables)}\n")
        for r in reps:
            pt = ", ".join(f"{n}={_g(v)}" for n, v in zip(fid.variables, r.grid_point))
            buf.write(f"   [{pt}] numeric={_g(r.numeric)} closed_form={_g(r.closed_form)}"
                      f" abs_diff={r.abs_diff:.3g} {r.verdict}\n")
        buf.write("\n")
    return buf.getvalue()


def run_verify_all(grid_density: int = 5, quad: QuadratureSpec = DEFAULT_QUADRATURE
                   ) -> Tuple[Dict[FormulaId, List[FidelityReport]], str]:
    if grid_density < 3:
        raise ValueError("grid density must be at least 3")
    results = verify_all(unit_grid(grid_density), quad)
    return results, render_verification(results)


def render_cad_probe(rep: CadProbeReport) -> str:
    buf = io.StringIO()
    buf.write("p, eta, simulated, printed_correlated, uncorrelated_formula\n")
    for p, eta, sim, pr, unc in rep.rows():
        buf.write(f"{_g(p)}, {_g(eta)}, {_g(sim)}, {_g(pr)}, {_g(unc)}\n")
    buf.write("\nspread across eta at fixed p:\n")
    for p, spread in zip(rep.p_grid, rep.eta_variation()):
        buf.write(f"  p={_g(p)}: {spread:.6g}\n")
    mis = max(abs(s - pr) for _, _, s, pr, _ in rep.rows())
    buf.write(f"max |simulated - printed correlated form|: {mis:.3g}\n")
    verdict = "eta-independent" if rep.eta_independent else "eta-dependent"
    buf.write(f"adjudication: simulated average fidelity is {verdict}"
              f" (tolerance {MATCH_TOL:g})\n")
    return buf.getvalue()
