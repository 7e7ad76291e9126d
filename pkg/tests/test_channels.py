import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_density
from qutrit_teleport.algebra import InvalidDensityMatrix, basis_ket, tensor_product
from qutrit_teleport.channels import (
    CLOCK,
    SHIFT,
    CadParams,
    KrausSet,
    NoiseKind,
    NoiseSpec,
    amplitude_damping_kraus,
    apply_channel,
    bit_flip_kraus,
    cad_channel,
    compose_triple_noise,
    correlated_kraus,
    depolarizing_kraus,
    gamma_to_p,
    identity_kraus,
    lift_to_subsystem,
    phase_flip_kraus,
    triple_kraus,
    uncorrelated_kraus,
    weyl,
)

GRID = [i / 20 for i in range(21)]
FAMILIES = {
    "BF": bit_flip_kraus,
    "PF": phase_flip_kraus,
    "DP": depolarizing_kraus,
    "AD": amplitude_damping_kraus,
}
probs = st.floats(0.0, 1.0)
seeds = st.integers(0, 2**32 - 1)


@pytest.mark.parametrize("name", FAMILIES)
@pytest.mark.parametrize("p", GRID)
def test_completeness_on_grid(name, p):
    assert FAMILIES[name](p).completeness_error() <= 1e-10


@pytest.mark.parametrize("p", GRID)
@pytest.mark.parametrize("eta", [0.0, 0.5, 1.0])
def test_cad_completeness_on_grid(p, eta):
    params = CadParams.symmetric(eta, p)
    assert correlated_kraus(params).completeness_error() <= 1e-10
    assert uncorrelated_kraus(params).completeness_error() <= 1e-10


@pytest.mark.parametrize("name", FAMILIES)
@given(p=probs, seed=seeds)
def test_channels_map_states_to_states(name, p, seed):
    rho = random_density(np.random.default_rng(seed))
    out = apply_channel(rho, FAMILIES[name](p))
    assert out.dim == 3


def test_weyl_relations():
    assert np.allclose(np.linalg.matrix_power(SHIFT, 3), np.eye(3))
    assert np.allclose(np.linalg.matrix_power(CLOCK, 3), np.eye(3))
    w = np.exp(2j * np.pi / 3)
    # Z Y = w^k Y Z for some cube root of unity
    ratio = (CLOCK @ SHIFT) @ np.linalg.inv(SHIFT @ CLOCK)
    assert any(np.allclose(ratio, w ** k * np.eye(3)) for k in (1, 2))
    assert np.allclose(weyl(0, 0), np.eye(3))


@pytest.mark.parametrize("p", [0.0, 0.3, 1.0])
def test_bit_flip_on_ground_state(p):
    out = bit_flip_kraus(p).apply(np.outer(basis_ket(0), basis_ket(0)))
    np.testing.assert_allclose(np.diag(out).real, [1 - p, p / 2, p / 2], atol=1e-15)


@pytest.mark.parametrize("p", [0.0, 0.4, 1.0])
def test_phase_flip_keeps_populations_and_damps_coherence(p):
    plus = np.ones(3) / math.sqrt(3)
    out = phase_flip_kraus(p).apply(np.outer(plus, plus))
    np.testing.assert_allclose(np.diag(out), np.full(3, 1 / 3), atol=1e-15)
    # |0><1| picks up (1-p) + p/2 (-1) + p/2 (1) = 1 - p
    assert out[0, 1] == pytest.approx((1 - p) / 3)


@given(p=probs, seed=seeds)
def test_depolarizing_mixes_toward_identity(p, seed):
    # sum over all nine Weyl conjugations is 3 Tr(rho) I
    rho = random_density(np.random.default_rng(seed))
    out = depolarizing_kraus(p).apply(rho)
    expected = (1 - p) * rho + (p / 8) * (3 * np.eye(3) - rho)
    np.testing.assert_allclose(out, expected, atol=1e-12)


@pytest.mark.parametrize("p1,p2", [(0.2, 0.7), (1.0, 0.0), (0.5, 0.5)])
def test_amplitude_damping_populations(p1, p2):
    rho = np.diag([0.2, 0.3, 0.5]).astype(complex)
    out = amplitude_damping_kraus(p1, p2).apply(rho)
    np.testing.assert_allclose(
        np.diag(out).real, [0.2 + 0.3 * p1 + 0.5 * p2, 0.3 * (1 - p1), 0.5 * (1 - p2)], atol=1e-15
    )


def test_gamma_to_p():
    assert gamma_to_p(0.0, 5.0) == 0.0
    assert gamma_to_p(1.0, 1.0) == pytest.approx(1 - math.exp(-1))
    assert gamma_to_p(1e-12, 1.0) == pytest.approx(1e-12, rel=1e-9)


@pytest.mark.parametrize("p", [-0.1, 1.1, float("nan")])
def test_probability_out_of_range(p):
    with pytest.raises(ValueError):
        NoiseSpec(NoiseKind.BIT_FLIP, p)


def test_kraus_set_rejects_incomplete():
    with pytest.raises(ValueError):
        KrausSet((0.5 * np.eye(3),))


def test_noise_kind_parse():
    assert NoiseKind.parse("bf") is NoiseKind.BIT_FLIP
    assert NoiseKind.parse("none") is NoiseKind.NONE
    assert NoiseKind.parse("AD") is NoiseKind.AMPLITUDE_DAMPING
    with pytest.raises(ValueError):
        NoiseKind.parse("GAD")


def test_ad_params_only_for_amplitude_damping():
    with pytest.raises(ValueError):
        NoiseSpec(NoiseKind.PHASE_FLIP, 0.1, ad_params=(0.1, 0.2))
    spec = NoiseSpec(NoiseKind.AMPLITUDE_DAMPING, 0.0, ad_params=(0.1, 0.2))
    assert len(spec.kraus()) == 3 and not spec.is_identity


def test_lift_to_subsystem_places_operator():
    k = amplitude_damping_kraus(0.3)
    lifted = lift_to_subsystem(k, 1)
    np.testing.assert_allclose(lifted[1], tensor_product(np.eye(3), k[1], np.eye(3)))
    assert lifted.completeness_error() <= 1e-10


@given(seed=seeds, p=probs, q=probs)
def test_noise_on_different_slots_commutes(seed, p, q):
    rho = random_density(np.random.default_rng(seed), 27, rank=2)
    a = lift_to_subsystem(phase_flip_kraus(p), 0)
    b = lift_to_subsystem(amplitude_damping_kraus(q), 2)
    np.testing.assert_allclose(a.apply(b.apply(rho)), b.apply(a.apply(rho)), atol=1e-12)


@given(seed=seeds, p=probs, q=probs, r=probs)
def test_compose_triple_matches_product_kraus(seed, p, q, r):
    rho = random_density(np.random.default_rng(seed), 27, rank=2)
    specs = (NoiseSpec("DP", p), NoiseSpec("BF", q), NoiseSpec("AD", r))
    fast = compose_triple_noise(rho, *specs).matrix
    slow = triple_kraus(*specs).apply(rho)
    np.testing.assert_allclose(fast, slow, atol=1e-12)


def test_compose_triple_requires_three_qutrits():
    with pytest.raises(ValueError):
        compose_triple_noise(np.eye(9) / 9, NoiseSpec(), NoiseSpec(), NoiseSpec())


def test_identity_kraus_is_noop(rng):
    rho = random_density(rng)
    np.testing.assert_array_equal(identity_kraus().apply(rho), rho)


@given(seed=seeds, eta=probs, p=probs)
def test_cad_maps_states_to_states(seed, eta, p):
    rho = random_density(np.random.default_rng(seed), 9)
    assert cad_channel(rho, CadParams.symmetric(eta, p)).dim == 9


@given(seed=seeds, p=probs)
def test_cad_eta_zero_is_independent_damping(seed, p):
    rho = random_density(np.random.default_rng(seed), 9)
    params = CadParams.symmetric(0.0, p)
    single = amplitude_damping_kraus(p)
    expected = sum(np.kron(a, b) @ rho @ np.kron(a, b).conj().T for a in single for b in single)
    np.testing.assert_allclose(cad_channel(rho, params).matrix, expected, atol=1e-12)


def test_cad_joint_decay():
    one_one = np.outer(basis_ket(1, 1), basis_ket(1, 1))
    out = cad_channel(one_one, CadParams.symmetric(1.0, 0.25)).matrix
    assert out[0, 0].real == pytest.approx(0.25)
    assert out[4, 4].real == pytest.approx(0.75)
    assert np.count_nonzero(np.abs(out) > 1e-15) == 2


def test_cad_pairing():
    std = CadParams(1.0, 0.2, 0.6)
    swp = CadParams(1.0, 0.2, 0.6, pairing="swapped")
    one_one = np.outer(basis_ket(1, 1), basis_ket(1, 1))
    assert cad_channel(one_one, std).matrix[0, 0].real == pytest.approx(0.2)
    assert cad_channel(one_one, swp).matrix[0, 0].real == pytest.approx(0.6)
    sym = [correlated_kraus(CadParams(0.5, 0.3, 0.3, pairing=x)) for x in ("standard", "swapped")]
    for a, b in zip(*sym):
        np.testing.assert_array_equal(a, b)
    with pytest.raises(ValueError):
        CadParams(0.5, 0.1, 0.1, pairing="diagonal")


def test_cad_rejects_wrong_shape():
    with pytest.raises(ValueError):
        cad_channel(np.eye(3) / 3, CadParams.symmetric(0.5, 0.5))


def test_apply_channel_validates_output():
    with pytest.raises(InvalidDensityMatrix):
        apply_channel(np.diag([2.0, -1.0, 0.0]), identity_kraus())
