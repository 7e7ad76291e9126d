import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import random_state
from qutrit_teleport.channels import CadParams, NoiseSpec
from qutrit_teleport.fidelity import outcome_fidelities, state_fidelity
from qutrit_teleport.teleportation import (
    TeleportScenario,
    bell_basis,
    channel_state,
    corrected_branches,
    derive_corrections,
    general_input,
    input_state,
    teleport,
)

seeds = st.integers(0, 2**32 - 1)
probs = st.floats(0.0, 1.0)
KINDS = ["BF", "PF", "DP", "AD"]


def test_bell_basis_orthonormal():
    vecs = np.array([b.amplitudes for b in bell_basis()])
    np.testing.assert_allclose(vecs.conj() @ vecs.T, np.eye(9), atol=1e-14)


def test_bell_basis_maximally_entangled():
    for b in bell_basis():
        m = b.amplitudes.reshape(3, 3)
        np.testing.assert_allclose(m @ m.conj().T, np.eye(3) / 3, atol=1e-14)


def test_first_bell_state_is_channel():
    np.testing.assert_allclose(bell_basis()[0].amplitudes, channel_state().amplitudes)


def test_correction_words():
    # outcome j = 3 s + m needs Z^m X^-s; as (Z^a Y^b)^dagger words this is
    assert derive_corrections().words == (
        (0, 0), (2, 0), (1, 0), (0, 2), (2, 2), (1, 2), (0, 1), (2, 1), (1, 1)
    )


def test_corrections_match_analytic_form():
    corr = derive_corrections()
    for s in range(3):
        for m in range(3):
            u, ref = corr[3 * s + m], oracle.correction(s, m)
            phase = np.vdot(ref.ravel(), u.ravel()) / 3
            np.testing.assert_allclose(u, phase * ref, atol=1e-14)


@given(seeds)
def test_noiseless_identity(seed):
    psi = random_state(np.random.default_rng(seed))
    for o in teleport(psi):
        assert abs(o.probability - 1 / 9) <= 1e-10
        assert abs(state_fidelity(psi, o.bob_state_corrected) - 1) <= 1e-10


def test_noiseless_raw_state_differs_from_input():
    psi = input_state(1.0, 0.5)
    out = teleport(psi)
    assert state_fidelity(psi, out[4].bob_state_raw.matrix) < 0.99


@given(seeds)
def test_outcome_probabilities_sum_to_one(seed):
    rng = np.random.default_rng(seed)
    specs = [NoiseSpec(k, p) for k, p in zip(rng.choice(KINDS, 3), rng.uniform(0, 1, 3))]
    total = sum(o.probability for o in teleport(random_state(rng), TeleportScenario(*specs)))
    assert total == pytest.approx(1.0, abs=1e-12)


@given(seeds)
def test_matches_reference_implementation(seed):
    rng = np.random.default_rng(seed)
    kinds = list(rng.choice(KINDS, 3))
    ps = list(rng.uniform(0, 1, 3))
    psi = random_state(rng)
    ours = teleport(psi, TeleportScenario(*[NoiseSpec(k, p) for k, p in zip(kinds, ps)]))
    ref = oracle.protocol(psi, list(zip(kinds, ps)))
    for o, (prob, fid) in zip(ours, ref):
        assert o.probability == pytest.approx(prob, abs=1e-12)
        if fid is not None and prob > 1e-10:
            assert state_fidelity(psi, o.bob_state_corrected.matrix) == pytest.approx(fid, abs=1e-9)


@given(seeds)
def test_fast_branches_match_direct_route(seed):
    rng = np.random.default_rng(seed)
    specs = [NoiseSpec(k, p) for k, p in zip(rng.choice(KINDS, 3), rng.uniform(0, 1, 3))]
    sc = TeleportScenario(*specs)
    psi = random_state(rng)
    fast = corrected_branches(np.outer(psi, psi.conj()), sc)
    for o, b in zip(teleport(psi, sc), fast):
        if o.defined:
            np.testing.assert_allclose(b, o.probability * o.bob_state_corrected.matrix, atol=1e-12)


def test_fast_branches_accept_stacks(rng):
    sc = TeleportScenario(NoiseSpec("AD", 0.3), bob_noise=NoiseSpec("PF", 0.2))
    states = [np.outer(v, v.conj()) for v in (random_state(rng) for _ in range(4))]
    stacked = corrected_branches(np.array(states), sc)
    assert stacked.shape == (4, 9, 3, 3)
    np.testing.assert_allclose(stacked[2], corrected_branches(states[2], sc), atol=1e-14)


def test_zero_probability_outcomes_are_reported():
    # full damping of the Bob qutrit and an input of |0>: Bob ends up in |0>
    sc = TeleportScenario(bob_noise=NoiseSpec("AD", 1.0))
    out = teleport(np.array([1, 0, 0]), sc)
    assert sum(o.probability for o in out) == pytest.approx(1)
    assert all(o.defined or o.probability < 1e-14 for o in out)


@pytest.mark.parametrize("kind", KINDS)
@given(p=probs, seed=seeds)
def test_per_outcome_fidelity_symmetric_for_input_noise(kind, p, seed):
    psi = random_state(np.random.default_rng(seed))
    f = outcome_fidelities(psi, TeleportScenario(NoiseSpec(kind, p)))
    assert max(f) - min(f) < 1e-10


@pytest.mark.parametrize("kind", ["BF", "DP"])
@pytest.mark.parametrize("slot", ["alice_noise", "bob_noise"])
@given(p=probs, seed=seeds)
def test_per_outcome_fidelity_symmetric_for_weyl_channel_noise(kind, slot, p, seed):
    psi = random_state(np.random.default_rng(seed))
    f = outcome_fidelities(psi, TeleportScenario(**{slot: NoiseSpec(kind, p)}))
    assert max(f) - min(f) < 1e-10


@pytest.mark.parametrize("kind", ["PF", "AD"])
def test_per_outcome_fidelity_depends_on_outcome_for_channel_noise(kind):
    # these Kraus sets do not commute with the corrections up to phase
    psi = input_state(1.0, 0.7)
    f = outcome_fidelities(psi, TeleportScenario(bob_noise=NoiseSpec(kind, 0.6)))
    assert max(f) - min(f) > 1e-2


def test_cad_excludes_alice_and_bob_noise():
    with pytest.raises(ValueError):
        TeleportScenario(alice_noise=NoiseSpec("BF", 0.1), cad=CadParams.symmetric(0.5, 0.5))


def test_scenario_str():
    sc = TeleportScenario(NoiseSpec("BF", 0.25), cad=CadParams.symmetric(0.5, 0.1))
    assert str(sc) == "[BF(0.25), CAD(eta=0.5, p1=0.1, p2=0.1)]"


@pytest.mark.parametrize("theta,phi", [(-0.1, 0), (4.0, 0), (0, 2 * math.pi), (0, -1)])
def test_input_state_range(theta, phi):
    with pytest.raises(ValueError):
        input_state(theta, phi)


def test_input_state_parametrisation():
    np.testing.assert_allclose(input_state(math.pi / 2, 0).amplitudes, [1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(input_state(0, 0).amplitudes, [0, 0, 1])


def test_general_input_normalisation():
    general_input(1 / math.sqrt(2), 1j / math.sqrt(2), 0)
    with pytest.raises(ValueError):
        general_input(1, 1, 0)


def test_teleport_rejects_two_qutrit_input():
    with pytest.raises(ValueError):
        teleport(np.eye(9)[0])
