"""Fidelity, average fidelity and the audit of printed closed forms.

The scenario fidelity at one input is the probability-weighted mean of
the corrected per-outcome fidelities, ``F = sum_j P(j) F_j``.  Because the
weights cancel the per-outcome normalisation, ``F`` is linear in the input
density matrix, so the whole protocol collapses to a 3x3 -> 3x3
superoperator (:func:`teleport_superoperator`).  Averages over the input
sphere evaluate that map instead of re-running the 27-dim simulation at
every node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import PureState, basis_ket
from .channels import CadParams, NoiseKind, NoiseSpec
from .formulas import REGISTRY, Formula, FormulaId
from .teleportation import (
    ZERO_PROBABILITY,
    TeleportScenario,
    corrected_branches,
    input_state,
    teleport,
)

FIDELITY_TOL = 1e-10
IMAG_TOL = 1e-12
MATCH_TOL = 1e-8


class NumericalCorruption(ArithmeticError):
    """A quantity that must be real or in [0, 1] is off by more than roundoff."""


def _clamp_fidelity(value: complex) -> float:
    if abs(value.imag) > IMAG_TOL:
        raise NumericalCorruption(f"fidelity has imaginary residue {value.imag:.3g}")
    f = value.real
    if f < -FIDELITY_TOL or f > 1 + FIDELITY_TOL:
        raise NumericalCorruption(f"fidelity {f!r} outside [0, 1]")
    return min(1.0, max(0.0, f))


def state_fidelity(psi, rho) -> float:
    """``<psi|rho|psi>`` for a pure target ``psi``."""
    amps = psi.amplitudes if isinstance(psi, PureState) else np.asarray(psi, dtype=complex)
    m = np.asarray(rho, dtype=complex)
    if m.shape != (amps.size, amps.size):
        raise ValueError(f"state of dim {amps.size} vs operator of shape {m.shape}")
    return _clamp_fidelity(complex(np.vdot(amps, m @ amps)))


def scenario_fidelity(theta: float, phi: float, scenario: TeleportScenario) -> float:
    """Outcome-weighted corrected fidelity at input ``input_state(theta, phi)``.

    Runs the full protocol; zero-probability outcomes are skipped.
    """
    psi = input_state(theta, phi)
    total = 0.0
    for o in teleport(psi, scenario):
        if o.defined:
            total += o.probability * state_fidelity(psi, o.bob_state_corrected)
    return _clamp_fidelity(complex(total))


def outcome_fidelities(psi, scenario: TeleportScenario) -> List[Optional[float]]:
    """Per-outcome corrected fidelities ``F_j`` (``None`` for impossible outcomes)."""
    if not isinstance(psi, PureState):
        psi = PureState(np.asarray(psi, dtype=complex))
    return [
        state_fidelity(psi, o.bob_state_corrected) if o.defined else None
        for o in teleport(psi, scenario)
    ]


# -- superoperator form -------------------------------------------------------------

def branch_superoperators(scenario: TeleportScenario) -> np.ndarray:
    """Array ``S[j, a, b, c, d]``: outcome ``j`` maps ``|a><b|`` to ``sum S[j,a,b,c,d] |c><d|``.

    Unnormalised and already corrected by Bob's unitary.
    """
    units = np.array([np.outer(basis_ket(a), basis_ket(b)) for a in range(3) for b in range(3)])
    branches = corrected_branches(units, scenario)  # (9 inputs, 9 outcomes, 3, 3)
    return branches.reshape(3, 3, 9, 3, 3).transpose(2, 0, 1, 3, 4)


def teleport_superoperator(scenario: TeleportScenario) -> np.ndarray:
    """Outcome-summed teleportation map ``S[a, b, c, d]``."""
    return branch_superoperators(scenario).sum(axis=0)


def _real_amplitudes(u: np.ndarray, phi: np.ndarray) -> np.ndarray:
    st = np.sqrt(np.clip(1.0 - u * u, 0.0, None))
    return np.stack([st * np.cos(phi), st * np.sin(phi), u], axis=-1).astype(complex)


def fidelity_from_superoperator(s: np.ndarray, amps: np.ndarray) -> np.ndarray:
    """``<psi| S(|psi><psi|) |psi>`` for each row of ``amps`` (shape ``(n, 3)``)."""
    amps = np.atleast_2d(amps)
    v = np.einsum("na,nb,nc,nd,abcd->n", amps, amps.conj(), amps.conj(), amps, s)
    if np.max(np.abs(v.imag), initial=0.0) > IMAG_TOL:
        raise NumericalCorruption(f"fidelity has imaginary residue {np.max(np.abs(v.imag)):.3g}")
    f = v.real
    if f.size and (f.min() < -FIDELITY_TOL or f.max() > 1 + FIDELITY_TOL):
        raise NumericalCorruption(f"fidelity outside [0, 1]: [{f.min()!r}, {f.max()!r}]")
    return np.clip(f, 0.0, 1.0)


def _outcome_fidelity(sj: np.ndarray, amps: np.ndarray) -> np.ndarray:
    num = np.einsum("na,nb,nc,nd,abcd->n", amps, amps.conj(), amps.conj(), amps, sj).real
    prob = np.einsum("na,nb,abcc->n", amps, amps.conj(), sj).real
    out = np.full(num.shape, np.nan)
    ok = prob >= ZERO_PROBABILITY
    out[ok] = num[ok] / prob[ok]
    return np.clip(out, 0.0, 1.0)


# -- averaging ---------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    theta_nodes: int = 64
    phi_nodes: int = 64

    def __post_init__(self):
        if self.theta_nodes < 2 or self.phi_nodes < 2:
            raise ValueError("quadrature needs at least 2 nodes per axis")

    def nodes(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Flattened ``(u, phi, weight)`` with ``u = cos theta``; weights sum to 1."""
        u, wu = np.polynomial.legendre.leggauss(self.theta_nodes)
        phi = 2 * np.pi * np.arange(self.phi_nodes) / self.phi_nodes
        uu, pp = np.meshgrid(u, phi, indexing="ij")
        w = np.outer(wu / 2.0, np.full(self.phi_nodes, 1.0 / self.phi_nodes))
        return uu.ravel(), pp.ravel(), w.ravel()


DEFAULT_QUADRATURE = QuadratureSpec()


def average_fidelity(scenario: TeleportScenario, quad: QuadratureSpec = DEFAULT_QUADRATURE,
                     outcome: Optional[int] = None) -> float:
    """Average of the scenario fidelity over the input sphere.

    Gauss-Legendre in ``cos theta`` and the periodic trapezoid rule in
    ``phi``.  ``outcome=j`` averages the conditional fidelity of outcome
    ``j`` alone instead of the outcome-weighted value.
    """
    u, phi, w = quad.nodes()
    amps = _real_amplitudes(u, phi)
    if outcome is None:
        f = fidelity_from_superoperator(teleport_superoperator(scenario), amps)
    else:
        f = _outcome_fidelity(branch_superoperators(scenario)[outcome], amps)
        if np.isnan(f).any():
            # outcome impossible on part of the sphere; average where it occurs
            ok = ~np.isnan(f)
            return float(np.sum(w[ok] * f[ok]) / np.sum(w[ok]))
    return float(np.dot(w, f))


def monte_carlo_average(scenario: TeleportScenario, n_samples: int = 100_000,
                        seed: int = 0) -> Tuple[float, float]:
    """Sample-mean estimate of :func:`average_fidelity` and its standard error.

    Inputs are drawn with ``cos theta`` uniform on [-1, 1] and ``phi``
    uniform on [0, 2pi) from ``numpy.random.default_rng(seed)``.
    """
    if n_samples < 100:
        raise ValueError("need at least 100 samples")
    rng = np.random.default_rng(seed)
    u = rng.uniform(-1.0, 1.0, n_samples)
    phi = rng.uniform(0.0, 2 * np.pi, n_samples)
    f = fidelity_from_superoperator(teleport_superoperator(scenario), _real_amplitudes(u, phi))
    return float(f.mean()), float(f.std(ddof=1) / math.sqrt(n_samples))


# -- registry audit ----------------------------------------------------------------

def scenario_for(fid: FormulaId, probs: Sequence[float],
                 cad_pairing: str = "standard") -> TeleportScenario:
    """The simulated scenario that a registry entry describes at ``probs``."""
    p_in, p_a, p_b = fid.noise_probabilities(probs)
    k_in, k_a, k_b = fid.triple
    if fid.variant == "cad":
        p, eta = float(probs[0]), float(probs[1])
        return TeleportScenario(
            input_noise=NoiseSpec(k_in, 0.0),
            cad=CadParams(eta=eta, p1=p, p2=p, pairing=cad_pairing),
        )
    return TeleportScenario(NoiseSpec(k_in, p_in), NoiseSpec(k_a, p_a), NoiseSpec(k_b, p_b))


@dataclass(frozen=True)
class FidelityReport:
    formula: FormulaId
    grid_point: Tuple[float, ...]
    numeric: float
    closed_form: float
    abs_diff: float = field(init=False)
    verdict: str = field(init=False)

    def __post_init__(self):
        d = abs(self.numeric - self.closed_form)
        object.__setattr__(self, "abs_diff", d)
        object.__setattr__(self, "verdict", "match" if d <= MATCH_TOL else "paper-discrepancy")

    @property
    def matches(self) -> bool:
        return self.verdict == "match"


def unit_grid(n: int) -> List[float]:
    """``n`` evenly spaced probabilities from 0 to 1 inclusive."""
    if n < 2:
        raise ValueError("grid needs at least two points")
    return [i / (n - 1) for i in range(n)]


def formula_grid(fid: FormulaId, values: Sequence[float]) -> List[Tuple[float, ...]]:
    """Cartesian product of ``values`` over the formula's free variables."""
    k = len(fid.variables)
    pts = [()]
    for _ in range(k):
        pts = [pt + (v,) for pt in pts for v in values]
    return pts


def verify_formula(fid: FormulaId, grid: Iterable[Sequence[float]],
                   quad: QuadratureSpec = DEFAULT_QUADRATURE) -> List[FidelityReport]:
    """Compare simulation against the printed expression at each grid point."""
    formula: Formula = REGISTRY[fid]
    reports = []
    for pt in grid:
        pt = tuple(float(x) for x in pt)
        numeric = average_fidelity(scenario_for(fid, pt), quad)
        reports.append(FidelityReport(fid, pt, numeric, formula(pt)))
    return reports


def verify_all(values: Sequence[float], quad: QuadratureSpec = DEFAULT_QUADRATURE
               ) -> Dict[FormulaId, List[FidelityReport]]:
    return {fid: verify_formula(fid, formula_grid(fid, values), quad) for fid in REGISTRY}


# -- correlated damping probe ------------------------------------------------------

@dataclass(frozen=True)
class CadProbeReport:
    p_grid: Tuple[float, ...]
    eta_grid: Tuple[float, ...]
    #: ``simulated[i][k]`` at ``p_grid[i]``, ``eta_grid[k]``
    simulated: Tuple[Tuple[float, ...], ...]
    printed: Tuple[Tuple[float, ...], ...]
    uncorrelated: Tuple[float, ...]

    def eta_variation(self) -> List[float]:
        """Spread ``max - min`` of the simulated value across ``eta`` at each ``p``."""
        return [max(row) - min(row) for row in self.simulated]

    @property
    def eta_independent(self) -> bool:
        return max(self.eta_variation()) <= MATCH_TOL

    def rows(self):
        for i, p in enumerate(self.p_grid):
            for k, eta in enumerate(self.eta_grid):
                yield p, eta, self.simulated[i][k], self.printed[i][k], self.uncorrelated[i]


def cad_eta_independence_probe(p_grid: Sequence[float], eta_grid: Sequence[float],
                               quad: QuadratureSpec = DEFAULT_QUADRATURE) -> CadProbeReport:
    cad_formula = REGISTRY[FormulaId((NoiseKind.NONE, NoiseKind.AMPLITUDE_DAMPING,
                                      NoiseKind.AMPLITUDE_DAMPING), "cad")]
    uncorrelated = REGISTRY[FormulaId((NoiseKind.NONE, NoiseKind.AMPLITUDE_DAMPING,
                                       NoiseKind.AMPLITUDE_DAMPING), "channel")]
    sim, printed = [], []
    for p in p_grid:
        sim_row, pr_row = [], []
        for eta in eta_grid:
            sc = TeleportScenario(cad=CadParams.symmetric(eta, p))
            sim_row.append(average_fidelity(sc, quad))
            pr_row.append(cad_formula((p, eta)))
        sim.append(tuple(sim_row))
        printed.append(tuple(pr_row))
    return CadProbeReport(
        tuple(float(p) for p in p_grid),
        tuple(float(e) for e in eta_grid),
        tuple(sim),
        tuple(printed),
        tuple(uncorrelated((p,)) for p in p_grid),
    )
