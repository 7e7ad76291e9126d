"""Dense linear algebra on one to three qutrits.

Operators are plain ``numpy`` complex arrays.  Subsystem ``0`` is the input
qutrit, ``1`` Alice's half of the channel and ``2`` Bob's half; the basis
label ``|xyz>`` sits at flat index ``9x + 3y + z`` (the ordering produced
by :func:`numpy.kron`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, List, Sequence

import numpy as np

QUTRIT = 3
VALID_DIMS = (3, 9, 27)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
EIGENVALUE_FLOOR = -1e-9
NORM_TOL = 1e-12


class DimensionError(ValueError):
    """Operands have incompatible or unsupported dimensions."""


@dataclass(frozen=True)
class Violation:
    invariant: str
    magnitude: float

    def __str__(self):
        return f"{self.invariant} (magnitude {self.magnitude:.3g})"


class InvalidDensityMatrix(ValueError):
    """Raised by :func:`validate_density`; carries every violated invariant."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("invalid density matrix: " + "; ".join(map(str, self.violations)))


def _frozen(m) -> np.ndarray:
    a = np.array(m, dtype=complex)
    a.setflags(write=False)
    return a


def _subsystems(dim: int) -> int:
    if dim not in VALID_DIMS:
        raise DimensionError(f"dimension {dim} is not 3, 9 or 27")
    return {3: 1, 9: 2, 27: 3}[dim]


@dataclass(frozen=True)
class PureState:
    """Normalised state vector of one or more qutrits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalised: sum |amp|^2 = {norm!r}")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(amps / np.linalg.norm(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.projector())

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)


@dataclass(frozen=True)
class DensityMatrix:
    """A validated state of 1, 2 or 3 qutrits.

    Construction runs :func:`check_density` and raises
    :class:`InvalidDensityMatrix` if an invariant fails.
    """

    matrix: np.ndarray
    n_subsystems: int = field(init=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        problems = check_density(m)
        if problems:
            raise InvalidDensityMatrix(problems)
        object.__setattr__(self, "matrix", _frozen(m))
        object.__setattr__(self, "n_subsystems", _subsystems(m.shape[0]))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def _as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def tensor_product(*mats) -> np.ndarray:
    """Kronecker product, ``(a (x) b)[i*db + k, j*db + l] = a[i, j] * b[k, l]``."""
    if not mats:
        raise ValueError("need at least one operand")
    arrs = [_as_square(m) for m in mats]
    for a in arrs:
        if not np.all(np.isfinite(a)):
            raise ValueError("operands must be finite")
    return reduce(np.kron, arrs)


def adjoint(m) -> np.ndarray:
    return _as_square(m).conj().T


def multiply(a, b) -> np.ndarray:
    a, b = _as_square(a), _as_square(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def trace(m) -> complex:
    return complex(np.trace(_as_square(m)))


def frobenius_distance(a, b) -> float:
    a, b = _as_square(a), _as_square(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def partial_trace(rho, keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``rho`` may be a :class:`DensityMatrix` or any square array of dimension
    9 or 27; the result keeps the kept subsystems in their original order.
    Works on arbitrary (not necessarily Hermitian) operators, which the
    superoperator construction in :mod:`qutrit_teleport.fidelity` relies on.
    """
    m = _as_square(rho)
    n = _subsystems(m.shape[0])
    keep = sorted(set(int(k) for k in keep))
    if n < 2:
        raise DimensionError("partial trace needs at least two subsystems")
    if not keep or len(keep) >= n or keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep={keep} must be a nonempty proper subset of range({n})")

    t = m.reshape([QUTRIT] * (2 * n))
    letters = "abcdefghijkl"
    rows = list(letters[:n])
    cols = list(letters[n:2 * n])
    for k in range(n):
        if k not in keep:
            cols[k] = rows[k]
    out = "".join(rows[k] for k in keep) + "".join(cols[k] for k in keep)
    reduced = np.einsum("".join(rows) + "".join(cols) + "->" + out, t)
    d = QUTRIT ** len(keep)
    return reduced.reshape(d, d)


def check_density(m) -> List[Violation]:
    """Return the list of violated density-matrix invariants (empty if valid)."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return [Violation("square", float("inf"))]
    if a.shape[0] not in VALID_DIMS:
        return [Violation("dimension in (3, 9, 27)", float(a.shape[0]))]
    if not np.all(np.isfinite(a)):
        return [Violation("finite entries", float("inf"))]

    problems = []
    herm = float(np.max(np.abs(a - a.conj().T)))
    if herm > HERMITIAN_TOL:
        problems.append(Violation("hermitian", herm))
    tr = np.trace(a)
    if abs(tr - 1.0) > TRACE_TOL:
        problems.append(Violation("unit trace", float(abs(tr - 1.0))))
    lowest = float(np.linalg.eigvalsh((a + a.conj().T) / 2)[0])
    if lowest < EIGENVALUE_FLOOR:
        problems.append(Violation("positive semidefinite", -lowest))
    return problems


def validate_density(m) -> DensityMatrix:
    if isinstance(m, DensityMatrix):
        return m
    return DensityMatrix(np.asarray(m, dtype=complex))


def basis_ket(*digits: int) -> np.ndarray:
    """Computational basis vector ``|d0 d1 ...>``."""
    v = np.zeros(QUTRIT ** len(digits), dtype=complex)
    idx = 0
    for d in digits:
        if not 0 <= d < QUTRIT:
            raise ValueError(f"qutrit label {d} out of range")
        idx = idx * QUTRIT + d
    v[idx] = 1.0
    return v


def maximally_mixed(n_subsystems: int = 1) -> np.ndarray:
    d = QUTRIT ** n_subsystems
    return np.eye(d, dtype=complex) / d
