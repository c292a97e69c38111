import itertools

import numpy as np
import pytest

from bilocal_net import quantum as qm
from conftest import random_density


def test_kron_identity_and_diagonal():
    assert np.allclose(qm.kron(qm.I2, qm.I2), np.eye(4))
    assert np.allclose(np.diag(qm.kron(qm.SZ, qm.SZ)), [1, -1, -1, 1])


def test_kron_matches_hand_expansion():
    # sx (x) sz written out entry by entry
    expected = np.array([
        [0, 0, 1, 0],
        [0, 0, 0, -1],
        [1, 0, 0, 0],
        [0, -1, 0, 0],
    ])
    assert np.array_equal(qm.kron(qm.SX, qm.SZ), expected)


def test_kron_rejects_non_square():
    with pytest.raises(qm.QuantumError):
        qm.kron(np.ones((2, 3)), qm.I2)


def _partial_trace_loops(rho, keep_first):
    out = np.zeros((2, 2), dtype=complex)
    for i, j, k in itertools.product(range(2), repeat=3):
        if keep_first:
            out[i, j] += rho[2 * i + k, 2 * j + k]
        else:
            out[i, j] += rho[2 * k + i, 2 * k + j]
    return out


def test_partial_trace_examples(rng, singlet):
    assert np.allclose(qm.partial_trace(singlet, keep=[0]), np.eye(2) / 2)
    rho = random_density(rng)
    assert np.allclose(qm.partial_trace(rho, keep=[0, 1]), rho)
    assert np.allclose(qm.partial_trace(rho, keep=[0]), _partial_trace_loops(rho, True), atol=1e-14)
    assert np.allclose(qm.partial_trace(rho, keep=[1]), _partial_trace_loops(rho, False), atol=1e-14)


def test_partial_trace_middle_qubits(rng):
    a, b, c = (random_density(rng, 2) for _ in range(3))
    rho = qm.kron(a, b, c)
    assert np.allclose(qm.partial_trace(rho, keep=[0, 2]), np.kron(a, c))
    assert np.allclose(qm.partial_trace(rho, keep=[1]), b)


def test_partial_trace_dimension_mismatch():
    with pytest.raises(qm.QuantumError):
        qm.partial_trace(np.eye(4) / 4, keep=[0], dims=[2, 3])


def test_partial_trace_is_linear(rng):
    for _ in range(20):
        r1, r2 = random_density(rng, 8), random_density(rng, 8)
        t = rng.uniform()
        mix = qm.partial_trace(t * r1 + (1 - t) * r2, keep=[0, 2])
        sep = t * qm.partial_trace(r1, keep=[0, 2]) + (1 - t) * qm.partial_trace(r2, keep=[0, 2])
        assert np.max(np.abs(mix - sep)) < 1e-10


def _pt_loops(rho):
    out = np.zeros_like(rho)
    for a, b, c, d in itertools.product(range(2), repeat=4):
        out[2 * a + b, 2 * c + d] = rho[2 * a + d, 2 * c + b]
    return out


def test_partial_transpose_examples(singlet):
    assert np.allclose(qm.partial_transpose(np.eye(4) / 4), np.eye(4) / 4)
    assert np.isclose(np.linalg.eigvalsh(qm.partial_transpose(singlet)).min(), -0.5)
    w = qm.werner_state(0.5)
    oracle = np.linalg.eigvalsh(_pt_loops(w)).min()
    assert np.isclose(oracle, -0.125)
    assert np.isclose(qm.hermitian_eigs(qm.partial_transpose(w)).min(), oracle, atol=1e-12)


def test_partial_transpose_involution_and_trace(rng):
    rho = random_density(rng)
    for sub in (0, 1):
        pt = qm.partial_transpose(rho, sub)
        assert qm.is_hermitian(pt)
        assert np.isclose(np.trace(pt), 1)
        assert np.allclose(qm.partial_transpose(pt, sub), rho)
    assert np.allclose(qm.partial_transpose(rho, 1), _pt_loops(rho))
    with pytest.raises(qm.QuantumError):
        qm.partial_transpose(np.eye(8) / 8)


def test_hermitian_eigs(rng):
    assert np.allclose(qm.hermitian_eigs(qm.SZ), [1, -1])
    assert np.allclose(qm.hermitian_eigs(qm.SX + qm.SZ), [np.sqrt(2), -np.sqrt(2)])
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = g + g.conj().T
    w, v = qm.hermitian_eigs(h, vectors=True)
    assert abs(w.sum() - np.trace(h).real) < 1e-10
    assert np.all(np.diff(w) <= 0)
    assert np.max(np.abs(h - (v * w) @ v.conj().T)) <= 1e-9
    with pytest.raises(qm.QuantumError):
        qm.hermitian_eigs(np.array([[0, 1], [0, 0]]))


def test_bloch_observable():
    assert np.allclose(qm.bloch_observable(0.0), qm.SZ)
    # plate angle 11.25 deg -> Bloch angle 45 deg
    assert np.allclose(qm.bloch_observable(np.pi / 4), (qm.SZ + qm.SX) / np.sqrt(2), atol=1e-12)
    assert np.allclose(qm.bloch_observable(-np.pi / 4), (qm.SZ - qm.SX) / np.sqrt(2), atol=1e-12)
    assert np.allclose(qm.bloch_observable(7 * np.pi / 4), (qm.SZ - qm.SX) / np.sqrt(2), atol=1e-12)
    for alpha in np.linspace(-7, 7, 57):
        obs = qm.bloch_observable(alpha)
        assert np.max(np.abs(obs @ obs - np.eye(2))) < 1e-12
        assert np.allclose(qm.hermitian_eigs(obs), [1, -1])


def test_bell_states():
    psi = qm.bell_state("psi-")
    assert np.allclose(psi, np.outer([0, 1, -1, 0], [0, 1, -1, 0]) / 2)
    assert abs(np.trace(qm.bell_state("phi+") @ psi)) < 1e-15
    assert np.allclose(sum(qm.bell_state(k) for k in qm.BELL_KINDS), np.eye(4))
    for k1, k2 in itertools.combinations(qm.BELL_KINDS, 2):
        assert abs(np.trace(qm.bell_state(k1) @ qm.bell_state(k2))) < 1e-15
    for k in qm.BELL_KINDS:
        qm.check_density(qm.bell_state(k))
        assert np.isclose(np.trace(qm.bell_state(k) @ qm.bell_state(k)), 1)


def test_fidelity(rng, singlet):
    rho = random_density(rng)
    assert np.isclose(qm.fidelity(rho, rho), 1)
    zero, one = qm.projector(qm.ket("0")), qm.projector(qm.ket("1"))
    assert qm.fidelity(zero, one) == pytest.approx(0, abs=1e-12)
    # pure vs mixed: <psi|sigma|psi>
    assert np.isclose(qm.fidelity(singlet, np.eye(4) / 4), 0.25)
    sigma = random_density(rng)
    assert np.isclose(qm.fidelity(rho, sigma), qm.fidelity(sigma, rho))
    with pytest.raises(qm.QuantumError):
        qm.fidelity(rho, np.eye(2) / 2)


def test_check_density_rejects():
    with pytest.raises(qm.QuantumError):
        qm.check_density(np.diag([1.2, -0.2]))
    with pytest.raises(qm.QuantumError):
        qm.check_density(np.eye(2))
    with pytest.raises(qm.QuantumError):
        qm.check_density(np.array([[0.5, 0.1], [0.2, 0.5]]))
