"""Qutrit teleportation under bit-flip, phase-flip, depolarizing and amplitude-damping noise."""

from .algebra import (
    DensityMatrix,
    InvalidDensityMatrix,
    PureState,
    adjoint,
    frobenius_distance,
    multiply,
    partial_trace,
    tensor_product,
    trace,
    validate_density,
)
from .channels import (
    CadParams,
    KrausSet,
    NoiseKind,
    NoiseSpec,
    amplitude_damping_kraus,
    apply_channel,
    bit_flip_kraus,
    cad_channel,
    compose_triple_noise,
    depolarizing_kraus,
    gamma_to_p,
    lift_to_subsystem,
    phase_flip_kraus,
)
from .fidelity import (
    FidelityReport,
    QuadratureSpec,
    average_fidelity,
    cad_eta_independence_probe,
    monte_carlo_average,
    scenario_fidelity,
    state_fidelity,
    verify_formula,
)
from .formulas import REGISTRY, FormulaId, closed_form
from .teleportation import (
    TeleportScenario,
    bell_basis,
    channel_state,
    derive_corrections,
    general_input,
    input_state,
    teleport,
)

__version__ = "0.1.0"
