"""Two-qubit Pauli tomography: sampling, linear inversion, projection onto states."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import quantum as qm

AXES = ("x", "y", "z")


@dataclass(frozen=True)
class TomographyCounts:
    """Counts ``counts[i, j, s, t]`` for Pauli setting (AXES[i], AXES[j]).

    Outcome index 0 is the +1 eigenvalue. Counts may be floats when exact
    probabilities are fed in for testing.
    """

    counts: np.ndarray
    shots: int

    def __post_init__(self):
        c = np.asarray(self.counts)
        if c.shape != (3, 3, 2, 2):
            raise ValueError(f"counts must have shape (3, 3, 2, 2), got {c.shape}")
        if np.any(c < 0):
            raise ValueError("negative counts")

    def to_dict(self) -> dict:
        return {
            "shots": int(self.shots),
            "settings": [
                {
                    "setting": AXES[i] + AXES[j],
                    "counts": {
                        f"{'+-'[s]}{'+-'[t]}": _jsonable(self.counts[i, j, s, t])
                        for s, t in itertools.product((0, 1), repeat=2)
                    },
                }
                for i, j in itertools.product(range(3), repeat=2)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TomographyCounts":
        counts = np.zeros((3, 3, 2, 2))
        for entry in data["settings"]:
            i, j = AXES.index(entry["setting"][0]), AXES.index(entry["setting"][1])
            for key, val in entry["counts"].items():
                counts[i, j, "+-".index(key[0]), "+-".index(key[1])] = val
        if np.all(counts == np.round(counts)):
            counts = counts.astype(np.int64)
        return cls(counts, int(data["shots"]))


def _jsonable(v):
    v = v.item() if hasattr(v, "item") else v
    return int(v) if float(v).is_integer() else float(v)


def _setting_projectors(i: int, j: int):
    pa = qm.observable_projectors(qm.PAULI[AXES[i]])
    pb = qm.observable_projectors(qm.PAULI[AXES[j]])
    return [[np.kron(pa[s], pb[t]) for t in (0, 1)] for s in (0, 1)]


def born_probabilities(rho: np.ndarray) -> np.ndarray:
    out = np.zeros((3, 3, 2, 2))
    for i, j in itertools.product(range(3), repeat=2):
        proj = _setting_projectors(i, j)
        for s, t in itertools.product((0, 1), repeat=2):
            out[i, j, s, t] = np.real(np.trace(proj[s][t] @ rho))
    return np.clip(out, 0, None)


def simulate_tomography(rho: np.ndarray, shots: int, seed: int) -> TomographyCounts:
    rho = qm.check_density(rho)
    if rho.shape != (4, 4):
        raise qm.QuantumError("tomography is implemented for two qubits")
    if shots < 1:
        raise ValueError("shots must be positive")
    rng = np.random.default_rng(np.uint64(int(seed) % 2**64))
    probs = born_probabilities(rho)
    counts = np.zeros((3, 3, 2, 2), dtype=np.int64)
    for i, j in itertools.product(range(3), repeat=2):
        pr = probs[i, j].reshape(4)
        counts[i, j] = rng.multinomial(shots, pr / pr.sum()).reshape(2, 2)
    return TomographyCounts(counts, shots)


def exact_counts(rho: np.ndarray, shots: int = 1) -> TomographyCounts:
    """Expected counts without sampling noise."""
    return TomographyCounts(born_probabilities(qm.check_density(rho)) * shots, shots)


def pauli_expectations(tc: TomographyCounts) -> np.ndarray:
    """Estimated ``t[i, j] = <s_i (x) s_j>`` for i, j over (0, x, y, z)."""
    c = np.asarray(tc.counts, dtype=float)
    totals = c.sum(axis=(2, 3))
    if np.any(totals <= 0):
        raise ValueError("a tomography setting has zero shots")
    freq = c / totals[:, :, None, None]
    sign = np.array([1.0, -1.0])
    t = np.zeros((4, 4))
    t[0, 0] = 1.0
    t[1:, 1:] = np.einsum("ijst,s,t->ij", freq, sign, sign)
    # single-party terms, averaged over the other party's setting
    t[1:, 0] = np.einsum("ijst,s->ij", freq, sign).mean(axis=1)
    t[0, 1:] = np.einsum("ijst,t->ij", freq, sign).mean(axis=0)
    return t


def linear_inversion(tc: TomographyCounts) -> np.ndarray:
    t = pauli_expectations(tc)
    labels = ("0", "x", "y", "z")
    rho = np.zeros((4, 4), dtype=complex)
    for i, j in itertools.product(range(4), repeat=2):
        rho += t[i, j] * np.kron(qm.PAULI[labels[i]], qm.PAULI[labels[j]])
    rho /= 4
    return 0.5 * (rho + rho.conj().T)


def project_physical(m: np.ndarray) -> np.ndarray:
    """Closest density matrix in Frobenius norm to a Hermitian unit-trace matrix.

    Negative eigenvalues are zeroed one at a time, starting from the most
    negative, with the removed weight spread evenly over the eigenvalues
    that remain.
    """
    w, v = qm.hermitian_eigs(m, vectors=True)  # descending
    w = w.copy()
    n = len(w)
    acc = 0.0
    i = n - 1
    while i >= 0 and w[i] + acc / (i + 1) < 0:
        acc += w[i]
        w[i] = 0.0
        i -= 1
    if i >= 0:
        w[: i + 1] += acc / (i + 1)
    rho = (v * w) @ v.conj().T
    return 0.5 * (rho + rho.conj().T)


def reconstruct(tc: TomographyCounts) -> np.ndarray:
    return project_physical(linear_inversion(tc))
