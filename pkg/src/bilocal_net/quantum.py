"""Dense few-qubit quantum mechanics.

Matrices are plain complex ``numpy`` arrays. Subsystem 0 is the leftmost
tensor factor and basis indices are big-endian over qubits, so ``|01>`` is
index 1 of a two-qubit register.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

STRUCT_TOL = 1e-10
HERMITIAN_TOL = 1e-8

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"0": I2, "x": SX, "y": SY, "z": SZ}

BELL_KINDS = ("phi+", "phi-", "psi+", "psi-")


class QuantumError(ValueError):
    """Raised when a matrix fails a structural precondition."""


def kron(*ops: np.ndarray) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for op in ops:
        op = np.asarray(op)
        if op.ndim != 2 or op.shape[0] != op.shape[1]:
            raise QuantumError(f"kron expects square matrices, got {op.shape}")
        out = np.kron(out, op)
    return out


def ket(bits: str) -> np.ndarray:
    """Computational basis vector, e.g. ``ket("01")``."""
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def projector(vec: np.ndarray) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex)
    return np.outer(vec, vec.conj())


def is_hermitian(m: np.ndarray, tol: float = STRUCT_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def check_density(rho: np.ndarray, tol: float = STRUCT_TOL) -> np.ndarray:
    """Validate a density matrix and return it as a complex array.

    Checks Hermiticity (max entry deviation), unit trace and an eigenvalue
    floor of ``-tol``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise QuantumError(f"density matrix must be square, got {rho.shape}")
    if not is_hermitian(rho, tol):
        raise QuantumError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise QuantumError(f"density matrix trace is {np.trace(rho).real:.3g}")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise QuantumError("density matrix has a negative eigenvalue")
    return rho


def _num_qubits(dim: int) -> int:
    n = int(round(np.log2(dim)))
    if 2**n != dim:
        raise QuantumError(f"dimension {dim} is not a power of two")
    return n


def partial_trace(rho: np.ndarray, keep: Sequence[int], dims: Sequence[int] | None = None) -> np.ndarray:
    """Reduced state on the subsystems listed in ``keep`` (kept in ascending order)."""
    rho = np.asarray(rho, dtype=complex)
    if dims is None:
        dims = [2] * _num_qubits(rho.shape[0])
    dims = list(dims)
    if int(np.prod(dims)) != rho.shape[0] or rho.shape[0] != rho.shape[1]:
        raise QuantumError(f"dims {dims} do not match matrix shape {rho.shape}")
    n = len(dims)
    keep = sorted(set(keep))
    if any(k < 0 or k >= n for k in keep):
        raise QuantumError(f"subsystem index out of range in {keep}")
    traced = [k for k in range(n) if k not in keep]
    t = rho.reshape(dims + dims)
    # trace the highest index first so earlier axis numbers stay valid
    for k in sorted(traced, reverse=True):
        m = t.ndim // 2
        t = np.trace(t, axis1=k, axis2=k + m)
    d_keep = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(d_keep, d_keep)


def partial_transpose(rho: np.ndarray, subsystem: int = 1) -> np.ndarray:
    """Partial transpose of a two-qubit operator on ``subsystem`` (0 or 1)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise QuantumError(f"partial transpose needs a 4x4 matrix, got {rho.shape}")
    if subsystem not in (0, 1):
        raise QuantumError(f"subsystem must be 0 or 1, got {subsystem}")
    t = rho.reshape(2, 2, 2, 2)
    if subsystem == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(4, 4)


def hermitian_eigs(m: np.ndarray, vectors: bool = False):
    """Eigenvalues (descending) of a Hermitian matrix, optionally with eigenvectors as columns."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise QuantumError(f"expected a square matrix, got {m.shape}")
    if not is_hermitian(m, HERMITIAN_TOL):
        raise QuantumError("matrix is not Hermitian")
    h = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(h)
    w, v = w[::-1], v[:, ::-1]
    if vectors:
        return w, v
    return w


def bloch_observable(alpha: float) -> np.ndarray:
    """Dichotomic observable ``cos(alpha) sz + sin(alpha) sx`` on the x-z great circle."""
    return np.cos(alpha) * SZ + np.sin(alpha) * SX


def observable_projectors(obs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Projectors onto the +1 and -1 eigenspaces of a dichotomic observable.

    Outcome bit 0 is the +1 eigenvalue, bit 1 the -1 eigenvalue.
    """
    eye = np.eye(obs.shape[0], dtype=complex)
    return 0.5 * (eye + obs), 0.5 * (eye - obs)


def bell_vector(kind: str) -> np.ndarray:
    s = 1 / np.sqrt(2)
    vecs = {
        "phi+": s * (ket("00") + ket("11")),
        "phi-": s * (ket("00") - ket("11")),
        "psi+": s * (ket("01") + ket("10")),
        "psi-": s * (ket("01") - ket("10")),
    }
    try:
        return vecs[kind]
    except KeyError:
        raise QuantumError(f"unknown Bell state {kind!r}; expected one of {BELL_KINDS}") from None


def bell_state(kind: str) -> np.ndarray:
    return projector(bell_vector(kind))


def werner_state(v: float) -> np.ndarray:
    """Singlet mixed with white noise at visibility ``v``."""
    return v * bell_state("psi-") + (1 - v) * np.eye(4) / 4


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Uhlmann fidelity ``(tr sqrt(sqrt(rho) sigma sqrt(rho)))**2``."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise QuantumError(f"shape mismatch {rho.shape} vs {sigma.shape}")
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    sqrt_rho = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    inner = sqrt_rho @ sigma @ sqrt_rho
    ev = np.linalg.eigvalsh(0.5 * (inner + inner.conj().T))
    f = float(np.sum(np.sqrt(np.clip(ev, 0, None))) ** 2)
    return min(max(f, 0.0), 1.0)
