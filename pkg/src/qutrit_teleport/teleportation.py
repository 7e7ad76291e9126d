"""Qutrit teleportation through a (possibly noisy) maximally entangled pair.

The register is ``input (x) Alice (x) Bob``.  Alice measures the first two
qutrits in the generalized Bell basis, Bob applies the correction for the
announced outcome.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from .algebra import (
    QUTRIT,
    DensityMatrix,
    PureState,
    basis_ket,
    partial_trace,
    validate_density,
)
from .channels import (
    CadParams,
    NoiseKind,
    NoiseSpec,
    _cad_raw,
    _triple_noise_raw,
    weyl,
)

ZERO_PROBABILITY = 1e-14


@dataclass(frozen=True)
class TeleportScenario:
    """Which noise acts where.

    When ``cad`` is given it replaces the Alice/Bob noise with the correlated
    two-qutrit damping channel, so both of those specs must be ``None``-kind.
    """

    input_noise: NoiseSpec = field(default_factory=NoiseSpec)
    alice_noise: NoiseSpec = field(default_factory=NoiseSpec)
    bob_noise: NoiseSpec = field(default_factory=NoiseSpec)
    cad: Optional[CadParams] = None

    def __post_init__(self):
        if self.cad is not None and not (
            self.alice_noise.kind is NoiseKind.NONE and self.bob_noise.kind is NoiseKind.NONE
        ):
            raise ValueError("correlated damping replaces the Alice and Bob noise; leave them unset")

    @classmethod
    def noiseless(cls) -> "TeleportScenario":
        return cls()

    @property
    def specs(self) -> Tuple[NoiseSpec, NoiseSpec, NoiseSpec]:
        return self.input_noise, self.alice_noise, self.bob_noise

    def __str__(self):
        parts = [str(s) for s in self.specs]
        if self.cad is not None:
            c = self.cad
            parts[1:] = [f"CAD(eta={c.eta:g}, p1={c.p1:g}, p2={c.p2:g})"]
        return "[" + ", ".join(parts) + "]"


def input_state(theta: float, phi: float) -> PureState:
    """Real qutrit ``(sin t cos f, sin t sin f, cos t)`` for ``t`` in [0, pi], ``f`` in [0, 2pi)."""
    if not (0.0 <= theta <= math.pi):
        raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
    if not (0.0 <= phi < 2 * math.pi):
        raise ValueError(f"phi must lie in [0, 2pi), got {phi!r}")
    st = math.sin(theta)
    return PureState.normalized([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def general_input(a: complex, b: complex, c: complex) -> PureState:
    amps = np.array([a, b, c], dtype=complex)
    norm = float(np.vdot(amps, amps).real)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"|a|^2 + |b|^2 + |c|^2 = {norm!r}, expected 1")
    return PureState.normalized(amps)


def channel_state() -> PureState:
    return PureState(sum(basis_ket(k, k) for k in range(QUTRIT)) / math.sqrt(3))


@lru_cache(maxsize=None)
def _bell_vectors() -> Tuple[np.ndarray, ...]:
    omega = np.exp(2j * np.pi / 3)
    vecs = []
    for shift in range(3):
        for phase in range(3):
            v = sum(omega ** (phase * k) * basis_ket(k, (k + shift) % 3) for k in range(3))
            v = v / math.sqrt(3)
            v.setflags(write=False)
            vecs.append(v)
    return tuple(vecs)


def bell_basis() -> List[PureState]:
    """The nine states ``sum_k w^(m k) |k, k+s> / sqrt 3`` ordered by ``s`` then ``m``."""
    return [PureState(v) for v in _bell_vectors()]


@lru_cache(maxsize=None)
def _bell_projectors() -> Tuple[np.ndarray, ...]:
    # |phi_j><phi_j| on (input, Alice), identity on Bob
    ops = []
    for v in _bell_vectors():
        p = np.kron(np.outer(v, v.conj()), np.eye(QUTRIT))
        p.setflags(write=False)
        ops.append(p)
    return tuple(ops)


def _raw_bob(rho27: np.ndarray, j: int) -> np.ndarray:
    p = _bell_projectors()[j]
    return partial_trace(p @ rho27 @ p, keep=[2])


@dataclass(frozen=True)
class CorrectionSet:
    unitaries: Tuple[np.ndarray, ...]
    #: ``(m, n)`` such that ``unitaries[j] = (Z^m Y^n)^dagger``
    words: Tuple[Tuple[int, int], ...]

    def __getitem__(self, j):
        return self.unitaries[j]

    def __len__(self):
        return len(self.unitaries)


@lru_cache(maxsize=None)
def derive_corrections() -> CorrectionSet:
    """Find, for each Bell outcome, the Weyl correction that restores the input.

    All nine candidates ``(Z^m Y^n)^dagger`` are tried against three fixed
    inputs that together pin a unitary down to a phase.  Exactly one
    candidate must succeed per outcome.
    """
    probes = [
        basis_ket(0),
        (basis_ket(0) + basis_ket(1)) / math.sqrt(2),
        (basis_ket(0) + 1j * basis_ket(1) - basis_ket(2)) / math.sqrt(3),
    ]
    ch = channel_state().projector()
    raws = []
    for v in probes:
        rho = np.kron(np.outer(v, v.conj()), ch)
        raws.append([_raw_bob(rho, j) for j in range(9)])

    unitaries, words = [], []
    for j in range(9):
        hits = []
        for m in range(3):
            for n in range(3):
                u = weyl(m, n).conj().T
                ok = True
                for v, raw in zip(probes, raws):
                    b = raw[j] / np.trace(raw[j])
                    out = u @ b @ u.conj().T
                    if abs(np.vdot(v, out @ v) - 1.0) > 1e-12:
                        ok = False
                        break
                if ok:
                    hits.append((m, n, u))
        if len(hits) != 1:
            raise RuntimeError(
                f"outcome {j}: {len(hits)} Weyl corrections restore the input; "
                "Bell basis or index convention is inconsistent"
            )
        m, n, u = hits[0]
        u.setflags(write=False)
        unitaries.append(u)
        words.append((m, n))
    return CorrectionSet(tuple(unitaries), tuple(words))


@dataclass(frozen=True)
class MeasurementOutcome:
    index: int
    probability: float
    bob_state_raw: Optional[DensityMatrix]
    bob_state_corrected: Optional[DensityMatrix]

    @property
    def defined(self) -> bool:
        return self.bob_state_corrected is not None


def noisy_register(rho_in: np.ndarray, scenario: TeleportScenario) -> np.ndarray:
    """Three-qutrit state after noise, without validation.

    ``rho_in`` may be any 3x3 operator, or a stack of them with shape
    ``(n, 3, 3)``; the result then has shape ``(n, 27, 27)``.
    """
    ch = channel_state().projector()
    if scenario.cad is not None:
        ch = _cad_raw(ch, scenario.cad)
    rho_in = np.asarray(rho_in, dtype=complex)
    if rho_in.ndim == 2:
        rho = np.kron(rho_in, ch)
    else:
        rho = np.einsum("nab,cd->nacbd", rho_in, ch).reshape(len(rho_in), 27, 27)
    return _triple_noise_raw(rho, scenario.specs)


def corrected_branches(rho_in: np.ndarray, scenario: TeleportScenario) -> np.ndarray:
    """Unnormalised corrected Bob operators ``U_j Tr_01[P_j rho P_j] U_j^dagger``.

    Returns shape ``(9, 3, 3)`` for one input or ``(n, 9, 3, 3)`` for a stack.
    Linear in ``rho_in``; the sum over ``j`` is the outcome-averaged
    teleportation channel.  The projection is contracted directly against
    the Bell vectors rather than by forming ``P_j rho P_j``.
    """
    rho = noisy_register(rho_in, scenario)
    single = rho.ndim == 2
    r = rho[None] if single else rho
    r = r.reshape(-1, 9, 3, 9, 3)
    phis = np.array(_bell_vectors())
    raw = np.einsum("jx,nxcyd,jy->njcd", phis.conj(), r, phis)
    u = np.array(derive_corrections().unitaries)
    out = np.einsum("jca,njab,jdb->njcd", u, raw, u.conj())
    return out[0] if single else out


def teleport(psi, scenario: Optional[TeleportScenario] = None) -> List[MeasurementOutcome]:
    """Run the protocol on pure input ``psi`` and report all nine outcomes.

    Outcomes with probability below ``1e-14`` carry ``None`` for both Bob
    states.
    """
    scenario = scenario or TeleportScenario()
    if not isinstance(psi, PureState):
        psi = PureState(np.asarray(psi, dtype=complex))
    if psi.dim != QUTRIT:
        raise ValueError("teleportation input must be a single qutrit")
    rho = validate_density(noisy_register(psi.projector(), scenario)).matrix
    corr = derive_corrections()

    outcomes = []
    for j in range(9):
        raw = _raw_bob(rho, j)
        prob = float(np.trace(raw).real)
        if prob < ZERO_PROBABILITY:
            outcomes.append(MeasurementOutcome(j, max(prob, 0.0), None, None))
            continue
        bob = raw / prob
        fixed = corr[j] @ bob @ corr[j].conj().T
        outcomes.append(
            MeasurementOutcome(j, prob, validate_density(bob), validate_density(fixed))
        )
    return outcomes
