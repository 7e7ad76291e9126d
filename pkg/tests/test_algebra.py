import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_density, random_state
from qutrit_teleport.algebra import (
    DensityMatrix,
    DimensionError,
    InvalidDensityMatrix,
    PureState,
    adjoint,
    basis_ket,
    check_density,
    frobenius_distance,
    maximally_mixed,
    multiply,
    partial_trace,
    tensor_product,
    trace,
    validate_density,
)

seeds = st.integers(0, 2**32 - 1)


def test_basis_ordering_matches_kron():
    assert np.argmax(np.abs(basis_ket(1, 2, 0))) == 9 * 1 + 3 * 2 + 0
    np.testing.assert_array_equal(basis_ket(2, 1), np.kron(basis_ket(2), basis_ket(1)))


def test_tensor_product_dims_and_entries():
    a = np.arange(9).reshape(3, 3)
    b = np.eye(3)
    t = tensor_product(a, b)
    assert t.shape == (9, 9)
    assert t[3 * 1 + 2, 3 * 2 + 2] == a[1, 2]
    assert tensor_product(a, b, b).shape == (27, 27)


def test_tensor_product_rejects_nonfinite():
    with pytest.raises(ValueError):
        tensor_product(np.full((3, 3), np.nan), np.eye(3))


def test_multiply_dimension_mismatch():
    with pytest.raises(DimensionError):
        multiply(np.eye(3), np.eye(9))


def test_adjoint_trace_distance():
    m = np.array([[1, 2j, 0], [0, 1, 0], [0, 0, 1]])
    np.testing.assert_array_equal(adjoint(m), m.conj().T)
    assert trace(m) == 3
    assert frobenius_distance(m, m) == 0


@pytest.mark.parametrize("keep,expected_dim", [([0], 3), ([2], 3), ([0, 2], 9), ([1, 2], 9)])
def test_partial_trace_of_product(keep, expected_dim, rng):
    parts = [random_density(rng) for _ in range(3)]
    full = tensor_product(*parts)
    out = partial_trace(full, keep)
    assert out.shape == (expected_dim, expected_dim)
    np.testing.assert_allclose(out, tensor_product(*[parts[k] for k in keep]), atol=1e-13)


def test_partial_trace_two_qutrits(rng):
    a, b = random_density(rng), random_density(rng)
    np.testing.assert_allclose(partial_trace(np.kron(a, b), [1]), b, atol=1e-13)


@pytest.mark.parametrize("keep", [[], [0, 1, 2], [3], [-1]])
def test_partial_trace_bad_keep(keep):
    with pytest.raises(ValueError):
        partial_trace(np.eye(27) / 27, keep)


def test_partial_trace_single_qutrit_rejected():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(3) / 3, [0])


@given(seeds)
def test_partial_trace_preserves_trace_and_positivity(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 27, rank=3)
    for keep in ([0], [1], [2], [0, 1]):
        red = partial_trace(rho, keep)
        assert abs(np.trace(red) - 1) < 1e-12
        assert not check_density(red)


@given(seeds)
def test_partial_trace_is_linear(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(27, 27)) + 1j * rng.normal(size=(27, 27))
    b = rng.normal(size=(27, 27))
    c = complex(rng.normal(), rng.normal())
    lhs = partial_trace(a + c * b, [2])
    np.testing.assert_allclose(lhs, partial_trace(a, [2]) + c * partial_trace(b, [2]), atol=1e-11)


def test_density_valid_and_frozen(rng):
    d = DensityMatrix(random_density(rng))
    assert d.n_subsystems == 1
    with pytest.raises(ValueError):
        d.matrix[0, 0] = 0


@pytest.mark.parametrize("dim,n", [(3, 1), (9, 2), (27, 3)])
def test_maximally_mixed(dim, n):
    assert validate_density(maximally_mixed(n)).dim == dim


def test_density_reports_every_violation():
    bad = np.diag([1.5, -0.5, 0.5]).astype(complex)
    bad[0, 1] = 1.0
    with pytest.raises(InvalidDensityMatrix) as exc:
        DensityMatrix(bad)
    names = {v.invariant for v in exc.value.violations}
    assert names == {"hermitian", "unit trace", "positive semidefinite"}


def test_density_rejects_wrong_dimension():
    assert check_density(np.eye(4) / 4)[0].invariant.startswith("dimension")
    with pytest.raises(InvalidDensityMatrix):
        DensityMatrix(np.eye(2) / 2)


def test_density_tolerances():
    # eigenvalue floor is -1e-9; trace kept at exactly 1
    ok = np.diag([0.5 + 2.5e-10, 0.5 + 2.5e-10, -5e-10]).astype(complex)
    assert check_density(ok) == []
    bad = np.diag([0.5 + 2.5e-9, 0.5 + 2.5e-9, -5e-9]).astype(complex)
    assert [v.invariant for v in check_density(bad)] == ["positive semidefinite"]


def test_pure_state_normalisation():
    with pytest.raises(ValueError):
        PureState([1, 1, 0])
    s = PureState.normalized([1, 1, 0])
    assert s.dim == 3
    np.testing.assert_allclose(np.trace(s.projector()), 1)


@given(seeds)
def test_pure_state_projector_is_density(seed):
    psi = PureState(random_state(np.random.default_rng(seed)))
    assert psi.density().dim == 3
