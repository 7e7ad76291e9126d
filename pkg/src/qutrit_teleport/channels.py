"""Qutrit noise channels in Kraus form.

Single-qutrit families: bit flip, phase flip, depolarizing and the
vee-configuration amplitude damping.  Each returns a :class:`KrausSet`
whose operators are listed in the conventional order ``K0, K1, ...``.
Sets can be lifted onto one slot of the three-qutrit register and
composed into the input/Alice/Bob noise map used by the teleportation
simulator.  :func:`cad_channel` is the two-qutrit correlated amplitude
damping channel.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from .algebra import (
    QUTRIT,
    DensityMatrix,
    DimensionError,
    tensor_product,
    validate_density,
)

COMPLETENESS_TOL = 1e-10

OMEGA = np.exp(2j * np.pi / 3)

#: cyclic shift |k> -> |k-1>, with the matrix layout used for the depolarizing set
SHIFT = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
#: clock operator diag(1, w, w^2)
CLOCK = np.diag([1.0, OMEGA, OMEGA ** 2]).astype(complex)

IDENTITY = np.eye(QUTRIT, dtype=complex)


def weyl(m: int, n: int) -> np.ndarray:
    """``CLOCK**m @ SHIFT**n``."""
    return np.linalg.matrix_power(CLOCK, m % 3) @ np.linalg.matrix_power(SHIFT, n % 3)


class NoiseKind(enum.Enum):
    NONE = "non"
    BIT_FLIP = "BF"
    PHASE_FLIP = "PF"
    DEPOLARIZING = "DP"
    AMPLITUDE_DAMPING = "AD"

    @property
    def short(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "NoiseKind":
        key = str(text).strip()
        aliases = {
            "none": cls.NONE, "non": cls.NONE, "": cls.NONE,
            "bf": cls.BIT_FLIP, "bit_flip": cls.BIT_FLIP, "bitflip": cls.BIT_FLIP,
            "pf": cls.PHASE_FLIP, "phase_flip": cls.PHASE_FLIP, "phaseflip": cls.PHASE_FLIP,
            "dp": cls.DEPOLARIZING, "depolarizing": cls.DEPOLARIZING,
            "ad": cls.AMPLITUDE_DAMPING, "amplitude_damping": cls.AMPLITUDE_DAMPING,
        }
        try:
            return aliases[key.lower()]
        except KeyError:
            raise ValueError(f"unknown noise kind {text!r}") from None


def _check_probability(name: str, p: float) -> float:
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {p!r}")
    return p


@dataclass(frozen=True)
class KrausSet:
    """Ordered Kraus operators of one channel; completeness is checked on construction."""

    operators: Tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = []
        for k in self.operators:
            a = np.array(k, dtype=complex)
            a.setflags(write=False)
            ops.append(a)
        if not ops:
            raise ValueError("a Kraus set needs at least one operator")
        shape = ops[0].shape
        if any(a.shape != shape or a.ndim != 2 or shape[0] != shape[1] for a in ops):
            raise DimensionError("Kraus operators must be square and share one shape")
        object.__setattr__(self, "operators", tuple(ops))
        err = self.completeness_error()
        if err > COMPLETENESS_TOL:
            raise ValueError(f"Kraus operators violate completeness by {err:.3g}")

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def __len__(self):
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)

    def __getitem__(self, i):
        return self.operators[i]

    def completeness_error(self) -> float:
        total = sum(k.conj().T @ k for k in self.operators)
        return float(np.linalg.norm(total - np.eye(self.dim)))

    def apply(self, rho) -> np.ndarray:
        """Raw ``sum K rho K^dagger`` with no validation; ``rho`` may be any operator."""
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.dim, self.dim):
            raise DimensionError(f"channel acts on dim {self.dim}, state has shape {rho.shape}")
        return sum(k @ rho @ k.conj().T for k in self.operators)


@dataclass(frozen=True)
class NoiseSpec:
    """Noise kind and strength for one qutrit.

    ``ad_params`` gives independent ``(p1, p2)`` for amplitude damping; when
    omitted, amplitude damping uses ``p1 = p2 = p``.
    """

    kind: NoiseKind = NoiseKind.NONE
    p: float = 0.0
    ad_params: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if not isinstance(self.kind, NoiseKind):
            object.__setattr__(self, "kind", NoiseKind.parse(self.kind))
        object.__setattr__(self, "p", _check_probability("p", self.p))
        if self.ad_params is not None:
            if self.kind is not NoiseKind.AMPLITUDE_DAMPING:
                raise ValueError("ad_params only apply to amplitude damping")
            p1, p2 = self.ad_params
            object.__setattr__(
                self, "ad_params",
                (_check_probability("p1", p1), _check_probability("p2", p2)),
            )

    @classmethod
    def none(cls) -> "NoiseSpec":
        return cls()

    @property
    def is_identity(self) -> bool:
        if self.kind is NoiseKind.NONE:
            return True
        if self.ad_params is not None:
            return self.ad_params == (0.0, 0.0)
        return self.p == 0.0

    def kraus(self) -> KrausSet:
        kind = self.kind
        if kind is NoiseKind.NONE:
            return identity_kraus()
        if kind is NoiseKind.BIT_FLIP:
            return bit_flip_kraus(self.p)
        if kind is NoiseKind.PHASE_FLIP:
            return phase_flip_kraus(self.p)
        if kind is NoiseKind.DEPOLARIZING:
            return depolarizing_kraus(self.p)
        p1, p2 = self.ad_params if self.ad_params is not None else (self.p, self.p)
        return amplitude_damping_kraus(p1, p2)

    def __str__(self):
        if self.kind is NoiseKind.NONE:
            return "non"
        if self.ad_params is not None:
            return f"AD(p1={self.ad_params[0]:g}, p2={self.ad_params[1]:g})"
        return f"{self.kind.short}({self.p:g})"


def identity_kraus(dim: int = QUTRIT) -> KrausSet:
    return KrausSet((np.eye(dim, dtype=complex),))


def bit_flip_kraus(p: float) -> KrausSet:
    p = _check_probability("p", p)
    up = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
    down = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
    return KrausSet((
        math.sqrt(1 - p) * IDENTITY,
        math.sqrt(p / 2) * up,
        math.sqrt(p / 2) * down,
    ))


def phase_flip_kraus(p: float) -> KrausSet:
    p = _check_probability("p", p)
    return KrausSet((
        math.sqrt(1 - p) * IDENTITY,
        math.sqrt(p / 2) * np.diag([1, -1, 1]).astype(complex),
        math.sqrt(p / 2) * np.diag([1, 1, -1]).astype(complex),
    ))


# (shift power, clock power) for K1..K8: Y, Z, Y^2, YZ, Y^2Z, YZ^2, Y^2Z^2, Z^2
_DEPOLARIZING_WORDS = ((1, 0), (0, 1), (2, 0), (1, 1), (2, 1), (1, 2), (2, 2), (0, 2))


def depolarizing_kraus(p: float) -> KrausSet:
    p = _check_probability("p", p)
    w = math.sqrt(p / 8)
    ops = [math.sqrt(1 - p) * IDENTITY]
    for ny, nz in _DEPOLARIZING_WORDS:
        word = np.linalg.matrix_power(SHIFT, ny) @ np.linalg.matrix_power(CLOCK, nz)
        ops.append(w * word)
    return KrausSet(tuple(ops))


def amplitude_damping_kraus(p1: float, p2: Optional[float] = None) -> KrausSet:
    """Vee-system damping: ``|1>`` decays to ``|0>`` with ``p1``, ``|2>`` with ``p2``."""
    p1 = _check_probability("p1", p1)
    p2 = p1 if p2 is None else _check_probability("p2", p2)
    k0 = np.diag([1.0, math.sqrt(1 - p1), math.sqrt(1 - p2)]).astype(complex)
    k1 = np.zeros((3, 3), dtype=complex)
    k1[0, 1] = math.sqrt(p1)
    k2 = np.zeros((3, 3), dtype=complex)
    k2[0, 2] = math.sqrt(p2)
    return KrausSet((k0, k1, k2))


def gamma_to_p(gamma: float, t: float) -> float:
    """Damping probability ``1 - exp(-gamma t)`` after time ``t``."""
    if gamma < 0 or t < 0:
        raise ValueError("decay rate and time must be non-negative")
    return -math.expm1(-gamma * t)


def lift_to_subsystem(k: KrausSet, slot: int, n_subsystems: int = 3) -> KrausSet:
    """Embed a single-qutrit Kraus set on ``slot`` of an ``n_subsystems`` register."""
    if k.dim != QUTRIT:
        raise DimensionError("only single-qutrit Kraus sets can be lifted")
    if slot not in range(n_subsystems):
        raise ValueError(f"slot must be in 0..{n_subsystems - 1}, got {slot!r}")
    lifted = []
    for op in k:
        factors = [IDENTITY] * n_subsystems
        factors[slot] = op
        lifted.append(tensor_product(*factors))
    return KrausSet(tuple(lifted))


def apply_channel(rho, k: KrausSet) -> DensityMatrix:
    """``sum_j K_j rho K_j^dagger``, validated as a density matrix."""
    return validate_density(k.apply(np.asarray(rho, dtype=complex)))


def _apply_local(rho: np.ndarray, ops: KrausSet, slot: int) -> np.ndarray:
    """``sum_k (K_k on slot) rho (K_k on slot)^dagger`` on a three-qutrit operator.

    Contracts the slot's row and column axes directly instead of forming
    27x27 lifted operators; ``rho`` may carry leading batch axes.
    """
    k = np.asarray(ops.operators)
    shape = rho.shape
    t = rho.reshape(shape[:-2] + (3,) * 6)
    rows, cols = list("ABC"), list("DEF")
    in_sub = "".join(rows) + "".join(cols)
    rows[slot], cols[slot] = "x", "y"
    out_sub = "".join(rows) + "".join(cols)
    sub = f"kx{'ABC'[slot]},...{in_sub},ky{'DEF'[slot]}->...{out_sub}"
    out = np.einsum(sub, k, t, k.conj(), optimize=True)
    return out.reshape(shape)


def _triple_noise_raw(rho: np.ndarray, specs: Sequence[NoiseSpec]) -> np.ndarray:
    # innermost first: Bob (slot 2), then Alice (slot 1), then input (slot 0)
    out = np.asarray(rho, dtype=complex)
    for slot in (2, 1, 0):
        spec = specs[slot]
        if spec.is_identity:
            continue
        out = _apply_local(out, _kraus_cached(spec), slot)
    return out


@lru_cache(maxsize=1024)
def _kraus_cached(spec: NoiseSpec) -> KrausSet:
    return spec.kraus()


def compose_triple_noise(rho, input_spec: NoiseSpec, alice_spec: NoiseSpec,
                         bob_spec: NoiseSpec) -> DensityMatrix:
    """Apply independent noise to the input, Alice and Bob qutrits of a 27-dim state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (27, 27):
        raise DimensionError(f"expected a three-qutrit state, got shape {rho.shape}")
    return validate_density(_triple_noise_raw(rho, (input_spec, alice_spec, bob_spec)))


def triple_kraus(input_spec: NoiseSpec, alice_spec: NoiseSpec, bob_spec: NoiseSpec) -> KrausSet:
    """Product Kraus set ``E_i (x) F_j (x) G_k`` on the 27-dim register."""
    ops = [
        tensor_product(e, f, g)
        for e in input_spec.kraus()
        for f in alice_spec.kraus()
        for g in bob_spec.kraus()
    ]
    return KrausSet(tuple(ops))


# -- correlated amplitude damping ------------------------------------------------

@dataclass(frozen=True)
class CadParams:
    """Correlated amplitude damping on the two channel qutrits.

    ``pairing="standard"`` attaches ``p1`` to the joint decay ``|11> -> |00>``
    and ``p2`` to ``|22> -> |00>``; ``"swapped"`` exchanges them.  The two
    agree whenever ``p1 == p2``.
    """

    eta: float
    p1: float
    p2: float
    pairing: str = "standard"

    def __post_init__(self):
        for name in ("eta", "p1", "p2"):
            object.__setattr__(self, name, _check_probability(name, getattr(self, name)))
        if self.pairing not in ("standard", "swapped"):
            raise ValueError(f"pairing must be 'standard' or 'swapped', got {self.pairing!r}")

    @classmethod
    def symmetric(cls, eta: float, p: float) -> "CadParams":
        return cls(eta=eta, p1=p, p2=p)


def correlated_kraus(params: CadParams) -> KrausSet:
    """Joint-decay operators ``A0, A1, A2`` on the 9-dim channel space."""
    q11, q22 = (params.p1, params.p2) if params.pairing == "standard" else (params.p2, params.p1)
    i00, i11, i22 = 0, 4, 8
    a0 = np.eye(9, dtype=complex)
    a0[i11, i11] = math.sqrt(1 - q11)
    a0[i22, i22] = math.sqrt(1 - q22)
    a1 = np.zeros((9, 9), dtype=complex)
    a1[i00, i11] = math.sqrt(q11)
    a2 = np.zeros((9, 9), dtype=complex)
    a2[i00, i22] = math.sqrt(q22)
    return KrausSet((a0, a1, a2))


def uncorrelated_kraus(params: CadParams) -> KrausSet:
    """``K_i (x) K_j`` for independent damping of both channel qutrits."""
    single = amplitude_damping_kraus(params.p1, params.p2)
    return KrausSet(tuple(tensor_product(a, b) for a in single for b in single))


def _cad_raw(rho: np.ndarray, params: CadParams) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (9, 9):
        raise DimensionError(f"correlated damping acts on two qutrits, got shape {rho.shape}")
    independent = uncorrelated_kraus(params).apply(rho)
    if params.eta == 0.0:
        return independent
    joint = correlated_kraus(params).apply(rho)
    return (1 - params.eta) * independent + params.eta * joint


def cad_channel(rho_ch, params: CadParams) -> DensityMatrix:
    """Mixture ``(1-eta) * independent damping + eta * joint decay``, validated."""
    return validate_density(_cad_raw(np.asarray(rho_ch, dtype=complex), params))
