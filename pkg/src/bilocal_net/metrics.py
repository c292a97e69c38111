"""Bilocality, CHSH and entanglement figures of merit."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import quantum as qm
from .network import BEHAVIOR_SHAPE

TSIRELSON = 2 * np.sqrt(2)
BILOCAL_CRITICAL_P = 3 - 2 * np.sqrt(2)


@dataclass(frozen=True)
class BilocalReport:
    I: float
    J: float
    B: float
    lhv_linear: float


def correlators(b: np.ndarray) -> np.ndarray:
    """``E[x, y, z] = <A_x B_y C_z>`` from a behavior (or frequency table)."""
    b = np.asarray(b, dtype=float).reshape(BEHAVIOR_SHAPE)
    sign = np.array([1.0, -1.0])
    # axes x, z, a, b0, b1, c
    e0 = np.einsum("xzabdc,a,b,c->xz", b, sign, sign, sign)
    e1 = np.einsum("xzabdc,a,d,c->xz", b, sign, sign, sign)
    return np.stack([e0, e1], axis=1)


def bilocal_from_correlators(corr: np.ndarray) -> BilocalReport:
    corr = np.asarray(corr, dtype=float)
    if corr.shape != (2, 2, 2):
        raise ValueError(f"correlators must have shape (2, 2, 2), got {corr.shape}")
    I = 0.25 * corr[:, 0, :].sum()
    signs = np.array([[1.0, -1.0], [-1.0, 1.0]])
    J = 0.25 * float(np.sum(signs * corr[:, 1, :]))
    return BilocalReport(
        I=float(I),
        J=J,
        B=float(np.sqrt(abs(I)) + np.sqrt(abs(J))),
        lhv_linear=float(abs(I) + abs(J)),
    )


def bilocal_report(b: np.ndarray) -> BilocalReport:
    """I, J, B = sqrt|I| + sqrt|J| and |I| + |J| of a network behavior."""
    return bilocal_from_correlators(correlators(b))


def two_party_correlators(pac: np.ndarray) -> np.ndarray:
    """<A_x C_z> from a table ``pac[x, z, a, c]``."""
    pac = np.asarray(pac, dtype=float)
    if pac.shape != (2, 2, 2, 2):
        raise ValueError(f"two-party behavior must have shape (2, 2, 2, 2), got {pac.shape}")
    sign = np.array([1.0, -1.0])
    return np.einsum("xzac,a,c->xz", pac, sign, sign)


def chsh_from_correlators(e: np.ndarray) -> float:
    """Largest |S| over the eight CHSH sign assignments (one minus sign)."""
    e = np.asarray(e, dtype=float)
    best = 0.0
    for x, z in itertools.product((0, 1), repeat=2):
        signs = np.ones((2, 2))
        signs[x, z] = -1
        best = max(best, abs(float(np.sum(signs * e))))
    return best


def chsh_value(pac: np.ndarray) -> float:
    return chsh_from_correlators(two_party_correlators(pac))


def conditional_ac(b: np.ndarray, b0: int, b1: int) -> np.ndarray:
    """Alice-Charlie table conditioned on Bob's outcome (b0, b1)."""
    b = np.asarray(b, dtype=float).reshape(BEHAVIOR_SHAPE)
    slab = b[:, :, :, b0, b1, :]
    norm = slab.sum(axis=(2, 3), keepdims=True)
    if np.any(norm <= 1e-15):
        raise ValueError(f"Bob outcome ({b0}, {b1}) has zero probability")
    return slab / norm


def correlation_matrix(rho: np.ndarray) -> np.ndarray:
    """``T[i, j] = tr[rho s_i (x) s_j]`` for i, j in (x, y, z)."""
    rho = np.asarray(rho, dtype=complex)
    paulis = (qm.SX, qm.SY, qm.SZ)
    return np.array([[np.real(np.trace(rho @ np.kron(si, sj))) for sj in paulis] for si in paulis])


def horodecki_max_chsh(rho: np.ndarray) -> float:
    """Maximal CHSH value over all local measurements: 2 sqrt(u1 + u2)."""
    rho = qm.check_density(rho)
    if rho.shape != (4, 4):
        raise qm.QuantumError("Horodecki criterion needs a two-qubit state")
    t = correlation_matrix(rho)
    u = np.sort(np.linalg.eigvalsh(t.T @ t))[::-1]
    return float(2 * np.sqrt(max(u[0] + u[1], 0.0)))


def ppt_negativity(rho: np.ndarray) -> float:
    """Sum of |negative eigenvalues| of the partial transpose."""
    rho = qm.check_density(rho)
    if rho.shape != (4, 4):
        raise qm.QuantumError("negativity is implemented for two qubits only")
    ev = qm.hermitian_eigs(qm.partial_transpose(rho, 1))
    return float(0.0 - np.sum(ev[ev < 0]))
