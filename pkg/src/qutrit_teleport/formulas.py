"""Registry of printed closed-form average fidelities.

Every entry is keyed by a :class:`FormulaId`: the noise kind on the
(input, Alice-channel, Bob-channel) qutrits plus a *variant* naming which
probabilities are free and which are tied together.

Variants
--------
``input``
    Only the input qutrit is noisy; one variable ``p_I``.
``input_bob``
    Input and Bob's qutrit are noisy; variables ``(p_I, p_B)``.
``input_alice``
    Input and Alice's channel qutrit share ``p = p_I = p_A``; optional
    Bob noise with ``p_B``; variables ``(p,)`` or ``(p, p_B)``.
``channel``
    Both channel qutrits share ``p = p_A = p_B``; optional input noise with
    ``p_I``; variables ``(p,)`` or ``(p_I, p)``.
``cad``
    Correlated amplitude damping on the channel with ``p = p_1 = p_2``;
    variables ``(p, eta)``.

The ``printed`` string of each entry is the right-hand side as typeset,
kept so that reports can show exactly which expression was audited.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Callable, Dict, Tuple

from .channels import NoiseKind

BF, PF, DP, AD, NON = (
    NoiseKind.BIT_FLIP,
    NoiseKind.PHASE_FLIP,
    NoiseKind.DEPOLARIZING,
    NoiseKind.AMPLITUDE_DAMPING,
    NoiseKind.NONE,
)

VARIANT_VARIABLES: Dict[str, Tuple[str, ...]] = {
    "input": ("p_I",),
    "input_bob": ("p_I", "p_B"),
    "input_alice": ("p",),
    "input_alice_bob": ("p", "p_B"),
    "channel": ("p",),
    "channel_input": ("p_I", "p"),
    "cad": ("p", "eta"),
}


@dataclass(frozen=True)
class FormulaId:
    triple: Tuple[NoiseKind, NoiseKind, NoiseKind]
    variant: str

    def __post_init__(self):
        if self.variant not in VARIANT_VARIABLES:
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def variables(self) -> Tuple[str, ...]:
        return VARIANT_VARIABLES[self.variant]

    @property
    def label(self) -> str:
        names = ",".join(k.short for k in self.triple)
        return f"F[{names}]/{self.variant}"

    def noise_probabilities(self, probs) -> Tuple[float, float, float]:
        """Map the variant's free variables onto ``(p_I, p_A, p_B)``.

        For the ``cad`` variant the channel strength is returned in both the
        Alice and Bob slots; the correlation parameter is not included.
        """
        probs = tuple(float(x) for x in probs)
        if len(probs) != len(self.variables):
            raise ValueError(
                f"{self.label} takes {len(self.variables)} values "
                f"{self.variables}, got {len(probs)}"
            )
        v = self.variant
        if v == "input":
            return probs[0], 0.0, 0.0
        if v == "input_bob":
            return probs[0], 0.0, probs[1]
        if v == "input_alice":
            return probs[0], probs[0], 0.0
        if v == "input_alice_bob":
            return probs[0], probs[0], probs[1]
        if v == "channel":
            return 0.0, probs[0], probs[0]
        if v == "channel_input":
            return probs[0], probs[1], probs[1]
        return 0.0, probs[0], probs[0]


@dataclass(frozen=True)
class Formula:
    id: FormulaId
    printed: str
    evaluate: Callable[..., float]

    def __call__(self, probs) -> float:
        self.id.noise_probabilities(probs)  # arity check
        return float(self.evaluate(*[float(x) for x in probs]))


def _s(x: float) -> float:
    # sqrt(1 - x), clipped so that x = 1 + tiny roundoff does not raise
    return sqrt(max(0.0, 1.0 - x))


REGISTRY: Dict[FormulaId, Formula] = {}


def _register(triple, variant, printed, fn):
    fid = FormulaId(triple, variant)
    if fid in REGISTRY:
        raise RuntimeError(f"duplicate registry entry {fid.label}")
    REGISTRY[fid] = Formula(fid, printed, fn)


# -- noise on the input qutrit only -------------------------------------------

_register((BF, NON, NON), "input", r"1 - \frac{4p_I}{5}", lambda pI: 1 - 4 * pI / 5)
_register((PF, NON, NON), "input", r"1 - \frac{8p_I}{15}", lambda pI: 1 - 8 * pI / 15)
_register((DP, NON, NON), "input", r"1 - \frac{3p_I}{5}", lambda pI: 1 - 3 * pI / 5)
_register(
    (AD, NON, NON), "input",
    r"- \frac{2p_I}{5} + \frac{4\sqrt{1-p_I}}{15} + \frac{11}{15}",
    lambda pI: -2 * pI / 5 + 4 * _s(pI) / 15 + 11 / 15,
)

# -- input and Bob's qutrit ---------------------------------------------------

_register(
    (BF, NON, BF), "input_bob",
    r"\frac{6p_Ip_B}{5} - \frac{4p_I}{5} - \frac{4p_B}{5} + 1",
    lambda pI, pB: 6 * pI * pB / 5 - 4 * pI / 5 - 4 * pB / 5 + 1,
)
_register(
    (BF, NON, PF), "input_bob",
    r"\frac{8p_Ip_B}{15} - \frac{4p_I}{5} - \frac{8p_B}{15} + 1",
    lambda pI, pB: 8 * pI * pB / 15 - 4 * pI / 5 - 8 * pB / 15 + 1,
)
_register(
    (BF, NON, DP), "input_bob",
    r"\frac{9p_Ip_B}{10} - \frac{4p_I}{5} - \frac{3p_B}{5} + 1",
    lambda pI, pB: 9 * pI * pB / 10 - 4 * pI / 5 - 3 * pB / 5 + 1,
)
_register(
    (BF, NON, AD), "input_bob",
    r"\frac{8p_Ip_B}{15} - \frac{8p_I}{15} - \frac{2p_B}{5} + \frac{4\sqrt{1-p_B}}{15}"
    r" - \frac{4p_I\sqrt{1-p_B}}{15} + \frac{11}{15}",
    lambda pI, pB: (8 * pI * pB / 15 - 8 * pI / 15 - 2 * pB / 5 + 4 * _s(pB) / 15
                    - 4 * pI * _s(pB) / 15 + 11 / 15),
)
_register(
    (PF, NON, BF), "input_bob",
    r"\frac{8p_Ip_B}{15} - \frac{8p_I}{15} -\frac{4p_B}{5} + 1",
    lambda pI, pB: 8 * pI * pB / 15 - 8 * pI / 15 - 4 * pB / 5 + 1,
)
_register(
    (PF, NON, PF), "input_bob",
    r"\frac{32p_Ip_B}{45} - \frac{8p_I}{15} -\frac{8p_B}{15} + 1",
    lambda pI, pB: 32 * pI * pB / 45 - 8 * pI / 15 - 8 * pB / 15 + 1,
)
_register(
    (PF, NON, DP), "input_bob",
    r"\frac{2p_Ip_B}{5} - \frac{8p_I}{15} - \frac{3p_B}{5} + 1",
    lambda pI, pB: 2 * pI * pB / 5 - 8 * pI / 15 - 3 * pB / 5 + 1,
)
_register(
    (PF, NON, AD), "input_bob",
    r"\frac{8p_Ip_B}{45} - \frac{8p_I}{45} - \frac{2p_B}{5} + \frac{4\sqrt{1-p_B}}{15}"
    r" - \frac{16p_I\sqrt{1-p_B}}{45} + \frac{11}{15}",
    lambda pI, pB: (8 * pI * pB / 45 - 8 * pI / 45 - 2 * pB / 5 + 4 * _s(pB) / 15
                    - 16 * pI * _s(pB) / 45 + 11 / 15),
)
_register(
    (DP, NON, BF), "input_bob",
    r"\frac{9p_Ip_B}{10} - \frac{3p_I}{5} - \frac{4p_B}{5} + 1",
    lambda pI, pB: 9 * pI * pB / 10 - 3 * pI / 5 - 4 * pB / 5 + 1,
)
_register(
    (DP, NON, PF), "input_bob",
    r"\frac{2p_Ip_B}{5} - \frac{3p_I}{5} - \frac{8p_B}{15} + 1",
    lambda pI, pB: 2 * pI * pB / 5 - 3 * pI / 5 - 8 * pB / 15 + 1,
)
_register(
    (DP, NON, DP), "input_bob",
    r"\frac{27p_Ip_B}{40} - \frac{3p_I}{5} - \frac{3p_B}{5} + 1",
    lambda pI, pB: 27 * pI * pB / 40 - 3 * pI / 5 - 3 * pB / 5 + 1,
)
_register(
    (DP, NON, AD), "input_bob",
    r"\frac{p_I\sqrt{1-p_B}}{15 } -\frac{2p_I}{5}+ \frac{2p_B(p_I-1)}{5}"
    r" +\frac{4(1-p_I)\sqrt{1-p_B}}{15} + \frac{11}{15}",
    lambda pI, pB: (pI * _s(pB) / 15 - 2 * pI / 5 + 2 * pB * (pI - 1) / 5
                    + 4 * (1 - pI) * _s(pB) / 15 + 11 / 15),
)
_register(
    (AD, NON, BF), "input_bob",
    r"\frac{8p_Ip_B}{15} - \frac{2p_I}{5} - \frac{4p_B\sqrt{1-p_I}}{15} - \frac{8p_B}{15}"
    r" + \frac{4\sqrt{1-p_I}}{15} + \frac{11}{15}",
    lambda pI, pB: (8 * pI * pB / 15 - 2 * pI / 5 - 4 * pB * _s(pI) / 15 - 8 * pB / 15
                    + 4 * _s(pI) / 15 + 11 / 15),
)
_register(
    (AD, NON, PF), "input_bob",
    r"\frac{8p_Ip_B}{45} - \frac{2p_I}{5} - \frac{16p_B\sqrt{1-p_I}}{45} - \frac{8p_B}{45}"
    r" + \frac{4\sqrt{1-p_I}}{15} + \frac{11}{15}",
    lambda pI, pB: (8 * pI * pB / 45 - 2 * pI / 5 - 16 * pB * _s(pI) / 45 - 8 * pB / 45
                    + 4 * _s(pI) / 15 + 11 / 15),
)
_register(
    (AD, NON, DP), "input_bob",
    r"\frac{19p_Ip_B}{30} - \frac{2p_I}{5} - \frac{7p_B^2}{30} - \frac{p_B\sqrt{1-p_I}}{5}"
    r" - \frac{2p_B}{5}  + \frac{4\sqrt{1-p_I}}{15} + \frac{11}{15}",
    lambda pI, pB: (19 * pI * pB / 30 - 2 * pI / 5 - 7 * pB ** 2 / 30 - pB * _s(pI) / 5
                    - 2 * pB / 5 + 4 * _s(pI) / 15 + 11 / 15),
)
_register(
    (AD, NON, AD), "input_bob",
    r"\frac{14p_Ip_B}{45} - \frac{4p_I\sqrt{1-p_B}}{45} - \frac{14p_I}{45}"
    r" - \frac{4p_B\sqrt{1-p_I}}{45} - \frac{14p_B}{45} + \frac{8\sqrt{1-p_I}\sqrt{1-p_B}}{45}"
    r" + \frac{4\sqrt{1-p_I}}{45} + \frac{4\sqrt{1-p_B}}{45} + \frac{29}{45}",
    lambda pI, pB: (14 * pI * pB / 45 - 4 * pI * _s(pB) / 45 - 14 * pI / 45
                    - 4 * pB * _s(pI) / 45 - 14 * pB / 45 + 8 * _s(pI) * _s(pB) / 45
                    + 4 * _s(pI) / 45 + 4 * _s(pB) / 45 + 29 / 45),
)

# -- input and Alice's channel qutrit, tied p = p_I = p_A ---------------------

_register((BF, BF, NON), "input_alice", r"\frac{6p^2}{5} - \frac{8p}{5}  + 1",
          lambda p: 6 * p ** 2 / 5 - 8 * p / 5 + 1)
_register((PF, PF, NON), "input_alice", r"\frac{32p^2}{45} - \frac{16p}{15}  + 1",
          lambda p: 32 * p ** 2 / 45 - 16 * p / 15 + 1)
_register((DP, DP, NON), "input_alice", r"\frac{27p^2}{40} - \frac{6p}{5}  + 1",
          lambda p: 27 * p ** 2 / 40 - 6 * p / 5 + 1)
_register(
    (AD, AD, NON), "input_alice",
    r"\frac{14p^2}{45} - \frac{8p\sqrt{1-p}}{45}  -\frac{4p}{5} +\frac{8\sqrt{1-p}}{45}"
    r" + \frac{37}{45}",
    lambda p: 14 * p ** 2 / 45 - 8 * p * _s(p) / 45 - 4 * p / 5 + 8 * _s(p) / 45 + 37 / 45,
)

_register(
    (BF, BF, BF), "input_alice_bob",
    r"-\frac{9p^2p_B}{5} + \frac{6p^2}{5} + \frac{12pp_B}{5} - \frac{8p}{5} - \frac{4p_B}{5} + 1",
    lambda p, pB: (-9 * p ** 2 * pB / 5 + 6 * p ** 2 / 5 + 12 * p * pB / 5 - 8 * p / 5
                   - 4 * pB / 5 + 1),
)
_register(
    (BF, BF, PF), "input_alice_bob",
    r"-\frac{4p^2p_B}{5} + \frac{6p^2}{5} + \frac{16pp_B}{15} - \frac{8p}{5} - \frac{8p_B}{15} + 1",
    lambda p, pB: (-4 * p ** 2 * pB / 5 + 6 * p ** 2 / 5 + 16 * p * pB / 15 - 8 * p / 5
                   - 8 * pB / 15 + 1),
)
_register(
    (BF, BF, DP), "input_alice_bob",
    r"-\frac{27p^2p_B}{20} + \frac{6p^2}{5} + \frac{9pp_B}{5} - \frac{8p}{5} - \frac{3p_B}{5} + 1",
    lambda p, pB: (-27 * p ** 2 * pB / 20 + 6 * p ** 2 / 5 + 9 * p * pB / 5 - 8 * p / 5
                   - 3 * pB / 5 + 1),
)
_register(
    (BF, BF, AD), "input_alice_bob",
    r"-\frac{4p^2p_B}{5} + \frac{2p^2\sqrt{1-p_B}}{15} + \frac{4p^2}{5} + \frac{16pp_B}{15}"
    r" - \frac{8p\sqrt{1-p_B}}{15} - \frac{16p}{15} -\frac{2p_B}{5} + \frac{4\sqrt{1-p_B}}{15}"
    r" +\frac{11}{15}",
    lambda p, pB: (-4 * p ** 2 * pB / 5 + 2 * p ** 2 * _s(pB) / 15 + 4 * p ** 2 / 5
                   + 16 * p * pB / 15 - 8 * p * _s(pB) / 15 - 16 * p / 15 - 2 * pB / 5
                   + 4 * _s(pB) / 15 + 11 / 15),
)
_register(
    (PF, PF, BF), "input_alice_bob",
    r"-\frac{32p^2p_B}{45} + \frac{32p^2}{45} + \frac{16pp_B}{15} - \frac{16p}{15}"
    r" - \frac{4p_B}{5} + 1",
    lambda p, pB: (-32 * p ** 2 * pB / 45 + 32 * p ** 2 / 45 + 16 * p * pB / 15
                   - 16 * p / 15 - 4 * pB / 5 + 1),
)
_register(
    (PF, PF, PF), "input_alice_bob",
    r"-\frac{16p^2p_B}{15} + \frac{32p^2}{45} + \frac{68pp_B}{45}  -  \frac{16p}{15}"
    r" - \ \frac{8p_B}{15} + 1",
    lambda p, pB: (-16 * p ** 2 * pB / 15 + 32 * p ** 2 / 45 + 68 * p * pB / 45
                   - 16 * p / 15 - 8 * pB / 15 + 1),
)
_register(
    (PF, PF, DP), "input_alice_bob",
    r"-\frac{8p^2p_B}{15} + \frac{32p^2}{45} + \frac{4pp_B}{5} - \frac{16p}{15}"
    r" - \frac{3p_B}{5} + 1",
    lambda p, pB: (-8 * p ** 2 * pB / 15 + 32 * p ** 2 / 45 + 4 * p * pB / 5
                   - 16 * p / 15 - 3 * pB / 5 + 1),
)
_register(
    (PF, PF, AD), "input_alice_bob",
    r"-\frac{16p^2p_B}{45} + \frac{16p^2\sqrt{1-p_B}}{45} + \frac{16p^2}{45} + \frac{4pp_B}{9}"
    r" + \frac{28p\sqrt{1-p_B}}{45} - \frac{4p}{9} - \frac{2p_B}{5} + \frac{4\sqrt{1-p_B}}{15}"
    r" + \frac{11}{15}",
    lambda p, pB: (-16 * p ** 2 * pB / 45 + 16 * p ** 2 * _s(pB) / 45 + 16 * p ** 2 / 45
                   + 4 * p * pB / 9 + 28 * p * _s(pB) / 45 - 4 * p / 9 - 2 * pB / 5
                   + 4 * _s(pB) / 15 + 11 / 15),
)
_register(
    (DP, DP, BF), "input_alice_bob",
    r"-\frac{81p^2p_B}{80} + \frac{27p^2}{40} + \frac{9pp_B}{5} - \frac{6p}{5} - \frac{4p_B}{5} + 1",
    lambda p, pB: (-81 * p ** 2 * pB / 80 + 27 * p ** 2 / 40 + 9 * p * pB / 5 - 6 * p / 5
                   - 4 * pB / 5 + 1),
)
_register(
    (DP, DP, PF), "input_alice_bob",
    r"-\frac{9p^2p_B}{20} + \frac{27p^2}{40} + \frac{4pp_B}{5} - \frac{6p}{5} - \frac{8p_B}{15} + 1",
    lambda p, pB: (-9 * p ** 2 * pB / 20 + 27 * p ** 2 / 40 + 4 * p * pB / 5 - 6 * p / 5
                   - 8 * pB / 15 + 1),
)
_register(
    (DP, DP, DP), "input_alice_bob",
    r"-\frac{243p^2p_B}{320} + \frac{27p^2}{40} + \frac{27pp_B}{20}  -  \frac{6p}{5}"
    r" -  \frac{3p_B}{5} + 1",
    lambda p, pB: (-243 * p ** 2 * pB / 320 + 27 * p ** 2 / 40 + 27 * p * pB / 20
                   - 6 * p / 5 - 3 * pB / 5 + 1),
)
_register(
    (DP, DP, AD), "input_alice_bob",
    r"-\frac{9p^2p_B}{20} + \frac{9p^2\sqrt{1-p_B}}{40} + \frac{9p^2}{20}  + \frac{4pp_B}{5}"
    r" - \frac{2p\sqrt{1-p_B}}{5} -  \frac{4p}{5} - \frac{2p_B}{5} + \frac{4\sqrt{1-p_B}}{15}"
    r" + \frac{11}{15}",
    lambda p, pB: (-9 * p ** 2 * pB / 20 + 9 * p ** 2 * _s(pB) / 40 + 9 * p ** 2 / 20
                   + 4 * p * pB / 5 - 2 * p * _s(pB) / 5 - 4 * p / 5 - 2 * pB / 5
                   + 4 * _s(pB) / 15 + 11 / 15),
)
_register(
    (AD, AD, BF), "input_alice_bob",
    r"-\frac{4p^2p_B}{9} + \frac{14p^2}{45} + \frac{8pp_B\sqrt{1-p}}{45} + \frac{16pp_B}{15}"
    r" - \frac{8p\sqrt{1-p}}{45} - \frac{4p}{5} -\frac{8p_B\sqrt{1-p}}{45} -\frac{28p_B}{45}"
    r" + \frac{8\sqrt{1-p}}{45} + \frac{37}{45}",
    lambda p, pB: (-4 * p ** 2 * pB / 9 + 14 * p ** 2 / 45 + 8 * p * pB * _s(p) / 45
                   + 16 * p * pB / 15 - 8 * p * _s(p) / 45 - 4 * p / 5
                   - 8 * pB * _s(p) / 45 - 28 * pB / 45 + 8 * _s(p) / 45 + 37 / 45),
)
_register(
    (AD, AD, PF), "input_alice_bob",
    r"-\frac{4p^2p_B}{45} + \frac{14p^2}{45} + \frac{4pp_B\sqrt{1-p}}{15} + \frac{16pp_B}{45}"
    r" - \frac{8p\sqrt{1-p}}{45} - \frac{4p}{5} -\frac{4p_B\sqrt{1-p}}{15} -\frac{4p_B}{15}"
    r" + \frac{8\sqrt{1-p}}{45} + \frac{37}{45}",
    lambda p, pB: (-4 * p ** 2 * pB / 45 + 14 * p ** 2 / 45 + 4 * p * pB * _s(p) / 15
                   + 16 * p * pB / 45 - 8 * p * _s(p) / 45 - 4 * p / 5
                   - 4 * pB * _s(p) / 15 - 4 * pB / 15 + 8 * _s(p) / 45 + 37 / 45),
)
_register(
    (AD, AD, DP), "input_alice_bob",
    r"-\frac{p^2p_B}{3} + \frac{14p^2}{45} + \frac{2pp_B\sqrt{1-p}}{15} + \frac{4pp_B}{5}"
    r" - \frac{8p\sqrt{1-p}}{45} - \frac{4p}{5} -\frac{2p_B\sqrt{1-p}}{15} -\frac{7p_B}{15}"
    r" + \frac{8\sqrt{1-p}}{45} + \frac{37}{45}",
    lambda p, pB: (-p ** 2 * pB / 3 + 14 * p ** 2 / 45 + 2 * p * pB * _s(p) / 15
                   + 4 * p * pB / 5 - 8 * p * _s(p) / 45 - 4 * p / 5
                   - 2 * pB * _s(p) / 15 - 7 * pB / 15 + 8 * _s(p) / 45 + 37 / 45),
)
_register(
    (AD, AD, AD), "input_alice_bob",
    r"-\frac{26p^2p_B}{45} + \frac{14p^2}{45} + \frac{4pp_B\sqrt{1-p}}{45}  +  \frac{8pp_B}{9}"
    r" - \frac{4p\sqrt{1-p}\sqrt{1-p_B}}{45} - \frac{4p\sqrt{1-p}}{45} -   \frac{28p}{45}"
    r"  - \frac{4p_B(1-p)}{45} - \frac{14p_B}{45} + \frac{4\sqrt{1-p}\sqrt{1-p_B}}{45}"
    r" + \frac{8(1-p)\sqrt{1-p_B}}{45} + \frac{4\sqrt{1-p}}{45} +\frac{29}{45}",
    lambda p, pB: (-26 * p ** 2 * pB / 45 + 14 * p ** 2 / 45 + 4 * p * pB * _s(p) / 45
                   + 8 * p * pB / 9 - 4 * p * _s(p) * _s(pB) / 45 - 4 * p * _s(p) / 45
                   - 28 * p / 45 - 4 * pB * (1 - p) / 45 - 14 * pB / 45
                   + 4 * _s(p) * _s(pB) / 45 + 8 * (1 - p) * _s(pB) / 45
                   + 4 * _s(p) / 45 + 29 / 45),
)

# -- both channel qutrits, tied p = p_A = p_B ---------------------------------

_register((NON, BF, BF), "channel", r"\frac{6p^2}{5} - \frac{8p}{5}  + 1",
          lambda p: 6 * p ** 2 / 5 - 8 * p / 5 + 1)
_register((NON, PF, PF), "channel", r"\frac{4p^2}{5} - \frac{16p}{15}  + 1",
          lambda p: 4 * p ** 2 / 5 - 16 * p / 15 + 1)
_register((NON, DP, DP), "channel", r"\frac{27p^2}{40} - \frac{6p}{5} +1",
          lambda p: 27 * p ** 2 / 40 - 6 * p / 5 + 1)
_register((NON, AD, AD), "channel", r"\frac{2p^2}{3} - \frac{16p}{15} + 1",
          lambda p: 2 * p ** 2 / 3 - 16 * p / 15 + 1)

_register(
    (BF, BF, BF), "channel_input",
    r"-\frac{9p^2p_I}{5} + \frac{6p^2}{5} + \frac{12pp_I}{5} - \frac{8p}{5} - \frac{4p_I}{5} + 1",
    lambda pI, p: (-9 * p ** 2 * pI / 5 + 6 * p ** 2 / 5 + 12 * p * pI / 5 - 8 * p / 5
                   - 4 * pI / 5 + 1),
)
_register(
    (PF, BF, BF), "channel_input",
    r"-\frac{4p^2p_I}{5} + \frac{6p^2}{5} + \frac{16pp_I}{15} - \frac{8p}{5} - \frac{8p_I}{15} + 1",
    lambda pI, p: (-4 * p ** 2 * pI / 5 + 6 * p ** 2 / 5 + 16 * p * pI / 15 - 8 * p / 5
                   - 8 * pI / 15 + 1),
)
_register(
    (DP, BF, BF), "channel_input",
    r"-\frac{27p^2p_I}{20} + \frac{6p^2}{5} + \frac{9pp_I}{5} - \frac{8p}{5} - \frac{3p_I}{5} + 1",
    lambda pI, p: (-27 * p ** 2 * pI / 20 + 6 * p ** 2 / 5 + 9 * p * pI / 5 - 8 * p / 5
                   - 3 * pI / 5 + 1),
)
_register(
    (AD, BF, BF), "channel_input",
    r"-\frac{4p^2p_I}{5} + \frac{2p^2\sqrt{1-p_I}}{5} + \frac{4p^2}{5} + \frac{16pp_I}{15}"
    r" - \frac{8p\sqrt{1-p_I}}{15} - \frac{16p}{15} -  \frac{2p_I}{5} + \frac{4\sqrt{1-p_I}}{15}"
    r" + \frac{11}{15}",
    lambda pI, p: (-4 * p ** 2 * pI / 5 + 2 * p ** 2 * _s(pI) / 5 + 4 * p ** 2 / 5
                   + 16 * p * pI / 15 - 8 * p * _s(pI) / 15 - 16 * p / 15 - 2 * pI / 5
                   + 4 * _s(pI) / 15 + 11 / 15),
)
_register(
    (BF, PF, PF), "channel_input",
    r"-\frac{4p^2p_I}{5} + \frac{4p^2}{5} + \frac{16pp_I}{15}  -  \frac{16p}{15}"
    r" - \ \frac{4p_I}{5} + 1",
    lambda pI, p: (-4 * p ** 2 * pI / 5 + 4 * p ** 2 / 5 + 16 * p * pI / 15 - 16 * p / 15
                   - 4 * pI / 5 + 1),
)
_register(
    (PF, PF, PF), "channel_input",
    r"-\frac{16p^2p_I}{15} + \frac{4p^2}{5} + \frac{64pp_I}{45}  -  \frac{16p}{15}"
    r" - \ \frac{8p_I}{15} + 1",
    lambda pI, p: (-16 * p ** 2 * pI / 15 + 4 * p ** 2 / 5 + 64 * p * pI / 45
                   - 16 * p / 15 - 8 * pI / 15 + 1),
)
_register(
    (DP, PF, PF), "channel_input",
    r"-\frac{3p^2p_I}{5} + \frac{4p^2}{5} + \frac{4pp_I}{5}  -  \frac{16p}{15}"
    r" - \frac{3p_I}{5} +  1",
    lambda pI, p: (-3 * p ** 2 * pI / 5 + 4 * p ** 2 / 5 + 4 * p * pI / 5 - 16 * p / 15
                   - 3 * pI / 5 + 1),
)
_register(
    (AD, PF, PF), "channel_input",
    r"-\frac{4p^2p_I}{15} + \frac{8p^2\sqrt{1-p_I}}{15} + \frac{4p^2}{15}  +  \frac{16pp_I}{45}"
    r" -  \frac{32p\sqrt{1-p_I}}{45} - \frac{16p}{45} -\frac{2p_I}{5}+ \frac{4\sqrt{1-p_I}}{15}"
    r" + \frac{11}{15}",
    lambda pI, p: (-4 * p ** 2 * pI / 15 + 8 * p ** 2 * _s(pI) / 15 + 4 * p ** 2 / 15
                   + 16 * p * pI / 45 - 32 * p * _s(pI) / 45 - 16 * p / 45 - 2 * pI / 5
                   + 4 * _s(pI) / 15 + 11 / 15),
)
_register(
    (BF, DP, DP), "channel_input",
    r"- \frac{81p^2p_I}{80} + \frac{27p^2}{40} + \frac{9pp_I}{5}  -  \frac{6p}{5}"
    r" - \frac{4p_I}{5} + 1",
    lambda pI, p: (-81 * p ** 2 * pI / 80 + 27 * p ** 2 / 40 + 9 * p * pI / 5 - 6 * p / 5
                   - 4 * pI / 5 + 1),
)
_register(
    (PF, DP, DP), "channel_input",
    r"-\frac{9p^2p_I}{20} + \frac{27p^2}{40} + \frac{4pp_I}{5}  -  \frac{6p}{5}"
    r" - \frac{8p_I}{15} + 1",
    lambda pI, p: (-9 * p ** 2 * pI / 20 + 27 * p ** 2 / 40 + 4 * p * pI / 5 - 6 * p / 5
                   - 8 * pI / 15 + 1),
)
_register(
    (DP, DP, DP), "channel_input",
    r"-\frac{243p^2p_I}{320} + \frac{27p^2}{40} + \frac{27pp_I}{20}  -  \frac{6p}{5}"
    r" -  \frac{3p_I}{5} + 1",
    lambda pI, p: (-243 * p ** 2 * pI / 320 + 27 * p ** 2 / 40 + 27 * p * pI / 20
                   - 6 * p / 5 - 3 * pI / 5 + 1),
)
_register(
    (AD, DP, DP), "channel_input",
    r"-\frac{9p^2p_I}{20} + \frac{9p^2\sqrt{1-p_I}}{40} - \frac{2p\sqrt{1-p_I}}{5}"
    r"  +  \frac{9p^2}{20} +  \frac{4pp_I}{5} - \frac{4p}{5} - \frac{2p_I}{5}"
    r" + \frac{4\sqrt{1-p_I}}{15} +\frac{11}{15}",
    lambda pI, p: (-9 * p ** 2 * pI / 20 + 9 * p ** 2 * _s(pI) / 40 - 2 * p * _s(pI) / 5
                   + 9 * p ** 2 / 20 + 4 * p * pI / 5 - 4 * p / 5 - 2 * pI / 5
                   + 4 * _s(pI) / 15 + 11 / 15),
)
_register(
    (BF, AD, AD), "channel_input",
    r"-\frac{14p^2p_I}{15} + \frac{2p^2}{3} + \frac{4pp_I}{3}  -  \frac{16p}{15}"
    r" -  \frac{4p_I}{5} + 1",
    lambda pI, p: (-14 * p ** 2 * pI / 15 + 2 * p ** 2 / 3 + 4 * p * pI / 3 - 16 * p / 15
                   - 4 * pI / 5 + 1),
)
_register(
    (PF, AD, AD), "channel_input",
    r"-\frac{8p^2p_I}{45} + \frac{2p^2}{3} + \frac{16pp_I}{45}  -  \frac{16p}{15}"
    r" - \frac{8p_I}{15} + 1",
    lambda pI, p: (-8 * p ** 2 * pI / 45 + 2 * p ** 2 / 3 + 16 * p * pI / 45 - 16 * p / 15
                   - 8 * pI / 15 + 1),
)
_register(
    (DP, AD, AD), "channel_input",
    r"-\frac{7p^2p_I}{10} + \frac{2p^2}{3} + pp_I -  \frac{16p}{15} -  \frac{3p_I}{5} +1",
    lambda pI, p: (-7 * p ** 2 * pI / 10 + 2 * p ** 2 / 3 + p * pI - 16 * p / 15
                   - 3 * pI / 5 + 1),
)
# the typeset "+ -" before the sqrt term is read as a single minus
_register(
    (AD, AD, AD), "channel_input",
    r"-\frac{26p^2p_I}{45} + \frac{4p^2\sqrt{1-p_I}}{45} + \frac{26p^2}{45}  +  \frac{32pp_I}{45}"
    r"+ -  \frac{16p\sqrt{1-p_I}}{45} - \frac{32p}{45}  - \frac{2p_I}{5}"
    r" + \frac{4\sqrt{1-p_I}}{15} +\frac{11}{15}",
    lambda pI, p: (-26 * p ** 2 * pI / 45 + 4 * p ** 2 * _s(pI) / 45 + 26 * p ** 2 / 45
                   + 32 * p * pI / 45 - 16 * p * _s(pI) / 45 - 32 * p / 45 - 2 * pI / 5
                   + 4 * _s(pI) / 15 + 11 / 15),
)

# -- correlated amplitude damping on the channel, p = p_A = p_B = p_1 = p_2 ---

_register(
    (NON, AD, AD), "cad",
    r"-\frac{2\eta p^2}{3} + \frac{16\eta p}{15} + \frac{4\eta\sqrt{1-p}}{15}"
    r" + \frac{2\eta(1-p)}{15} - \frac{2\eta}{5} + \frac{2p^2}{3} - \frac{16p}{15} + 1",
    lambda p, eta: (-2 * eta * p ** 2 / 3 + 16 * eta * p / 15 + 4 * eta * _s(p) / 15
                    + 2 * eta * (1 - p) / 15 - 2 * eta / 5 + 2 * p ** 2 / 3
                    - 16 * p / 15 + 1),
)


def get(triple, variant: str) -> Formula:
    key = FormulaId(tuple(triple), variant)
    try:
        return REGISTRY[key]
    except KeyError:
        raise KeyError(f"no printed formula for {key.label}") from None


def closed_form(fid: FormulaId, probs) -> float:
    """Evaluate the printed expression for ``fid`` at ``probs``."""
    return REGISTRY[fid](probs)
