import json

import numpy as np
import pytest

from bilocal_net import metrics as mt
from bilocal_net import quantum as qm
from bilocal_net import tomography as tomo
from conftest import random_density

X, Y, Z = 0, 1, 2


def test_simulate_anchors(singlet):
    c = tomo.simulate_tomography(qm.projector(qm.ket("00")), 1000, seed=1).counts
    assert c[Z, Z, 0, 0] == 1000
    c = tomo.simulate_tomography(singlet, 1000, seed=2).counts
    assert c[Z, Z, 0, 0] == 0 and c[Z, Z, 1, 1] == 0
    assert np.all(c.sum(axis=(2, 3)) == 1000)
    probs = tomo.born_probabilities(singlet)
    assert np.allclose(probs[X, Y], 0.25)


def test_simulate_deterministic(singlet):
    a = tomo.simulate_tomography(singlet, 500, seed=7)
    b = tomo.simulate_tomography(singlet, 500, seed=7)
    assert np.array_equal(a.counts, b.counts)


def test_singlet_xy_uniform_statistically(singlet):
    shots = 40_000
    c = tomo.simulate_tomography(singlet, shots, seed=3).counts[X, Y]
    sigma = np.sqrt(shots * 0.25 * 0.75)
    assert np.max(np.abs(c - shots / 4)) < 5 * sigma


def test_linear_inversion_exact(rng):
    for _ in range(10):
        rho = random_density(rng)
        est = tomo.linear_inversion(tomo.exact_counts(rho, shots=1))
        assert np.max(np.abs(est - rho)) < 1e-10


def test_linear_inversion_zero_shots():
    with pytest.raises(ValueError):
        tomo.linear_inversion(tomo.TomographyCounts(np.zeros((3, 3, 2, 2)), 0))


def test_linear_inversion_unbiased_for_mixed_state():
    ts = []
    for seed in range(30):
        ts.append(tomo.pauli_expectations(tomo.simulate_tomography(np.eye(4) / 4, 2000, seed)))
    ts = np.array(ts)
    mean = ts.mean(axis=0)
    se = ts.std(axis=0, ddof=1) / np.sqrt(len(ts))
    assert np.all(np.abs(mean[1:, 1:]) < 5 * se[1:, 1:] + 1e-12)


def test_estimator_unbiased_general_state(rng):
    rho = random_density(rng)
    exact = tomo.pauli_expectations(tomo.exact_counts(rho))
    ts = np.array([tomo.pauli_expectations(tomo.simulate_tomography(rho, 1000, s)) for s in range(40)])
    se = ts.std(axis=0, ddof=1) / np.sqrt(len(ts))
    assert np.all(np.abs(ts.mean(axis=0) - exact) <= 5 * se + 1e-12)


def test_project_physical_examples(rng):
    rho = random_density(rng)
    assert np.max(np.abs(tomo.project_physical(rho) - rho)) < 1e-12
    out = tomo.project_physical(np.diag([0.6, 0.6, 0.0, -0.2]).astype(complex))
    assert np.allclose(out, np.diag([0.5, 0.5, 0, 0]), atol=1e-12)
    for _ in range(20):
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = g + g.conj().T
        h = h - (np.trace(h).real - 1) / 4 * np.eye(4)
        qm.check_density(tomo.project_physical(h))
    with pytest.raises(qm.QuantumError):
        tomo.project_physical(np.array([[1, 1], [0, 0]], dtype=complex))


def test_project_physical_is_nearest_among_samples(rng):
    m = np.diag([0.7, 0.5, -0.05, -0.15]).astype(complex)
    best = np.linalg.norm(tomo.project_physical(m) - m)
    for _ in range(200):
        other = random_density(rng)
        assert np.linalg.norm(other - m) >= best - 1e-12


def test_singlet_reconstruction_quality(singlet):
    for seed in range(3):
        est = tomo.reconstruct(tomo.simulate_tomography(singlet, 10**5, seed))
        assert qm.fidelity(est, singlet) > 0.99


def test_horodecki_error_shrinks_with_shots():
    rho = qm.werner_state(0.8)
    target = mt.horodecki_max_chsh(rho)
    rms = []
    for shots in (10**3, 10**4, 10**5):
        errs = [mt.horodecki_max_chsh(tomo.reconstruct(tomo.simulate_tomography(rho, shots, s))) - target
                for s in range(8)]
        rms.append(np.sqrt(np.mean(np.square(errs))))
    assert rms[0] > rms[1] > rms[2]


def test_counts_json_round_trip(singlet):
    tc = tomo.simulate_tomography(singlet, 100, seed=5)
    data = json.loads(json.dumps(tc.to_dict()))
    assert data["shots"] == 100 and len(data["settings"]) == 9
    assert set(data["settings"][0]["counts"]) == {"++", "+-", "-+", "--"}
    back = tomo.TomographyCounts.from_dict(data)
    assert np.array_equal(back.counts, tc.counts) and back.shots == 100
