import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bilocal_net import metrics as mt
from bilocal_net import network as nw
from bilocal_net import quantum as qm


def test_source_state_anchors():
    assert np.allclose(nw.source_state(1, 0), qm.bell_state("psi-"))
    assert np.allclose(nw.source_state(0, 0), np.eye(4) / 4)
    mix = 0.9 * qm.bell_state("psi-") + 0.05 * np.diag([0, 0.5, 0.5, 0]) + 0.05 * np.eye(4) / 4
    assert np.allclose(np.linalg.eigvalsh(nw.source_state(0.9, 0.05)), np.linalg.eigvalsh(mix))
    qm.check_density(nw.source_state(0.3, 0.7))
    with pytest.raises(nw.NetworkError):
        nw.source_state(0.8, 0.3)
    with pytest.raises(nw.NetworkError):
        nw.source_state(-0.1, 0)


def test_bsm_povm_anchors():
    povm = nw.bsm_povm(1.0)
    for kind in qm.BELL_KINDS:
        assert np.allclose(povm[kind], qm.bell_state(kind))
    psi = qm.bell_state("psi-")
    p0 = nw.bsm_povm(0.0)
    assert np.isclose(np.trace(p0["psi-"] @ psi).real, 0.5)
    half = {k: np.trace(m @ psi).real for k, m in nw.bsm_povm(0.5).items()}
    assert half == pytest.approx({"psi-": 0.75, "psi+": 0.25, "phi+": 0.0, "phi-": 0.0}, abs=1e-12)
    with pytest.raises(nw.NetworkError):
        nw.bsm_povm(1.5)


@pytest.mark.parametrize("p", np.round(np.linspace(0, 1, 11), 10))
def test_bsm_povm_complete_and_positive(p):
    povm = nw.bsm_povm(p)
    assert np.max(np.abs(sum(povm.values()) - np.eye(4))) < 1e-12
    for eff in povm.values():
        assert np.linalg.eigvalsh(eff).min() > -1e-12


def test_bell_bits_bijection():
    assert sorted(nw.BELL_BITS.values()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert nw.BELL_BITS["phi+"] == (0, 0) and nw.BELL_BITS["psi-"] == (1, 1)


def test_settings_canonical():
    s = nw.Settings(-np.pi / 4, 2 * np.pi, 9.0, 0.1)
    assert np.isclose(s.a0, 7 * np.pi / 4)
    assert s.a1 == 0.0
    assert 0 <= s.c0 < 2 * np.pi
    fs = nw.fixed_settings()
    assert np.allclose(fs.as_array(), [np.pi / 4, 7 * np.pi / 4, np.pi / 4, 7 * np.pi / 4])
    assert np.allclose(qm.bloch_observable(fs.a0), (qm.SZ + qm.SX) / np.sqrt(2), atol=1e-12)
    assert np.allclose(qm.bloch_observable(fs.a1), (qm.SZ - qm.SX) / np.sqrt(2), atol=1e-12)
    with pytest.raises(nw.NetworkError):
        nw.Settings(np.nan, 0, 0, 0)


def test_config_validation():
    with pytest.raises(nw.NetworkError):
        nw.NetworkConfig(v1=0.9, w_colored=0.2)
    with pytest.raises(nw.NetworkError):
        nw.NetworkConfig(p_bsm=-0.01)


def test_ideal_network_bob_uniform():
    rho23 = qm.partial_trace(nw.network_state(nw.NetworkConfig()), keep=[1, 2])
    assert np.allclose(rho23, np.eye(4) / 4)  # so every Bell outcome has weight 1/4
    for s in (nw.fixed_settings(), nw.Settings(0.3, 1.2, 2.2, 5.0)):
        b = nw.network_behavior(nw.NetworkConfig(), s)
        bob = b.sum(axis=(2, 5))
        assert np.allclose(bob, 0.25, atol=1e-12)


def test_depolarized_sources_uniform():
    b = nw.network_behavior(nw.NetworkConfig(v1=0, v2=0), nw.Settings(0.4, 1.1, 2.0, 3.3))
    assert np.allclose(b, 1 / 16, atol=1e-14)


def _born_oracle_correlator(alpha, gamma, y, p=1.0):
    """Direct 16x16 trace of A (x) K_y (x) C on two singlets."""
    psi = qm.bell_vector("psi-")
    state = np.kron(psi, psi)
    povm = nw.bsm_povm(p)
    k = sum((-1) ** nw.BELL_BITS[kind][y] * eff for kind, eff in povm.items())
    op = np.kron(np.kron(qm.bloch_observable(alpha), k), qm.bloch_observable(gamma))
    return np.real(state.conj() @ op @ state)


def test_ideal_fixed_settings_correlators():
    s = nw.fixed_settings()
    b = nw.network_behavior(nw.NetworkConfig(), s)
    corr = mt.correlators(b)
    for x, z, y in itertools.product((0, 1), repeat=3):
        assert np.isclose(corr[x, y, z], _born_oracle_correlator(s.alice(x), s.charlie(z), y), atol=1e-12)
    rep = mt.bilocal_report(b)
    assert abs(abs(rep.I) - 0.5) < 1e-9 and abs(abs(rep.J) - 0.5) < 1e-9


def _swap_oracle(outcome):
    """Contract two singlet vectors with <bell|_{23} directly."""
    psi = qm.bell_vector("psi-").reshape(2, 2)
    bell = qm.bell_vector(outcome).reshape(2, 2)
    amp = np.einsum("ab,cd,bc->ad", psi, psi, bell.conj())
    prob = np.sum(np.abs(amp) ** 2)
    vec = amp.reshape(4) / np.sqrt(prob)
    return np.outer(vec, vec.conj()), prob


@pytest.mark.parametrize("outcome", qm.BELL_KINDS)
def test_swapped_state_ideal(outcome):
    rho, prob = nw.swapped_state(nw.NetworkConfig(), outcome)
    oracle, oprob = _swap_oracle(outcome)
    assert np.isclose(prob, 0.25) and np.isclose(oprob, 0.25)
    assert np.allclose(rho, oracle, atol=1e-12)
    if outcome == "psi-":
        assert np.allclose(rho, qm.bell_state("psi-"), atol=1e-12)


@pytest.mark.parametrize("v", [0.0, 0.3, 0.7, 0.95])
def test_swapped_state_werner(v):
    rho, _ = nw.swapped_state(nw.NetworkConfig(v1=v, v2=v), "psi-")
    assert np.allclose(rho, qm.werner_state(v * v), atol=1e-12)


def test_swapped_state_depolarized():
    for kind in qm.BELL_KINDS:
        rho, prob = nw.swapped_state(nw.NetworkConfig(v1=0, v2=0), kind)
        assert np.allclose(rho, np.eye(4) / 4) and np.isclose(prob, 0.25)
    with pytest.raises(nw.NetworkError):
        nw.swapped_state(nw.NetworkConfig(), "nope")


def test_swapped_recombination(rng):
    for _ in range(10):
        cfg = nw.NetworkConfig(v1=rng.uniform(0, 0.8), v2=rng.uniform(0, 0.8), w_colored=rng.uniform(0, 0.2),
                               p_bsm=rng.uniform())
        total = sum(prob * rho for rho, prob in (nw.swapped_state(cfg, k) for k in qm.BELL_KINDS))
        assert np.max(np.abs(total - qm.partial_trace(nw.network_state(cfg), keep=[0, 3]))) < 1e-10


unit = st.floats(0, 1)


@settings(max_examples=100, deadline=None)
@given(unit, unit, unit, st.floats(0, 1), st.lists(st.floats(-10, 10), min_size=4, max_size=4))
def test_behavior_invariants_random(v1, v2, wfrac, p, angles):
    w = wfrac * (1 - max(v1, v2))
    b = nw.network_behavior(nw.NetworkConfig(v1, v2, w, p), nw.Settings(*angles))
    assert b.min() >= -1e-12
    assert np.max(np.abs(b.sum(axis=(2, 3, 4, 5)) - 1)) < 1e-9
    alice = b.sum(axis=(3, 4, 5))
    charlie = b.sum(axis=(2, 3, 4))
    bob = b.sum(axis=(2, 5))
    assert np.max(np.abs(alice[:, 0] - alice[:, 1])) < 1e-9
    assert np.max(np.abs(charlie[0] - charlie[1])) < 1e-9
    assert np.max(np.abs(bob - bob[0, 0])) < 1e-9


def test_dephasing_scaling():
    s = nw.fixed_settings()
    ref = mt.correlators(nw.network_behavior(nw.NetworkConfig(v1=0.9, v2=0.8), s))
    for p in np.linspace(0, 1, 11):
        corr = mt.correlators(nw.network_behavior(nw.NetworkConfig(v1=0.9, v2=0.8, p_bsm=p), s))
        assert np.max(np.abs(corr[:, 0] - ref[:, 0])) < 1e-9
        assert np.max(np.abs(corr[:, 1] - p * ref[:, 1])) < 1e-9


def test_correlation_tensors_match_behavior(rng):
    from bilocal_net.optimize import fast_B

    for _ in range(10):
        cfg = nw.NetworkConfig(v1=rng.uniform(), v2=rng.uniform(), p_bsm=rng.uniform())
        s = nw.Settings(*rng.uniform(0, 6.28, 4))
        assert abs(fast_B(nw.correlation_tensors(cfg), s.as_array()) - mt.bilocal_report(nw.network_behavior(cfg, s)).B) < 1e-12


def test_sample_counts():
    b = nw.network_behavior(nw.NetworkConfig(v1=0.8), nw.fixed_settings())
    one = nw.sample_counts(b, 1, seed=3)
    assert np.all(one.sum(axis=(2, 3, 4, 5)) == 1)
    assert np.array_equal(nw.sample_counts(b, 500, 9), nw.sample_counts(b, 500, 9))
    assert not np.array_equal(nw.sample_counts(b, 500, 9), nw.sample_counts(b, 500, 10))
    det = np.zeros(nw.BEHAVIOR_SHAPE)
    det[:, :, 1, 0, 1, 0] = 1
    c = nw.sample_counts(det, 77, seed=1)
    assert np.all(c[:, :, 1, 0, 1, 0] == 77) and c.sum() == 4 * 77
    with pytest.raises(nw.NetworkError):
        nw.sample_counts(b, 0, seed=1)


def test_sample_counts_uniform_within_five_sigma():
    shots = 10**6
    uniform = np.full(nw.BEHAVIOR_SHAPE, 1 / 16)
    counts = nw.sample_counts(uniform, shots, seed=12345)
    sigma = np.sqrt(shots * (1 / 16) * (15 / 16))
    assert np.max(np.abs(counts - 62500)) < 5 * sigma


def test_check_behavior_rejects_signaling():
    b = np.full(nw.BEHAVIOR_SHAPE, 1 / 16)
    b[0, 0, 0, 0, 0, 0] += 0.01
    b[0, 0, 1, 0, 0, 0] -= 0.01
    with pytest.raises(nw.NetworkError):
        nw.check_behavior(b)
