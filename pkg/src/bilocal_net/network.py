"""Two-source, three-node network: sources, Bob's Bell-state measurement, behaviors.

Qubits are ordered 1,2,3,4 (array axes 0..3). Source 1 feeds qubits 1-2,
source 2 feeds qubits 3-4. Alice measures qubit 1, Bob jointly measures
qubits 2-3, Charlie measures qubit 4.

A behavior is a float array of shape ``(2, 2, 2, 2, 2, 2)`` indexed as
``[x, z, a, b0, b1, c]``; flattening it in C order gives the canonical
64-entry index used everywhere else in the package.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from . import quantum as qm

BEHAVIOR_SHAPE = (2, 2, 2, 2, 2, 2)
BEHAVIOR_TOL = 1e-9

# Bob's outcome label -> (b0, b1). b0 separates phi from psi, b1 is the relative phase.
BELL_BITS: Dict[str, Tuple[int, int]] = {
    "phi+": (0, 0),
    "phi-": (0, 1),
    "psi+": (1, 0),
    "psi-": (1, 1),
}
BITS_BELL = {bits: kind for kind, bits in BELL_BITS.items()}

TWO_PI = 2 * np.pi


class NetworkError(ValueError):
    pass


def _check_unit(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0) or not np.isfinite(value):
        raise NetworkError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class NetworkConfig:
    """Noise parameters of the network.

    ``v1``/``v2`` are the singlet weights of the two sources, ``w_colored`` the
    weight of the dephased (colored) component in both sources and ``p_bsm``
    the quality of Bob's Bell-state measurement (1 is perfect).
    """

    v1: float = 1.0
    v2: float = 1.0
    w_colored: float = 0.0
    p_bsm: float = 1.0

    def __post_init__(self):
        for name in ("v1", "v2", "w_colored", "p_bsm"):
            _check_unit(name, getattr(self, name))
        for name in ("v1", "v2"):
            if getattr(self, name) + self.w_colored > 1.0 + 1e-12:
                raise NetworkError(f"{name} + w_colored exceeds 1")


@dataclass(frozen=True)
class Settings:
    """Measurement angles on the x-z Bloch circle, canonicalized to [0, 2pi)."""

    a0: float
    a1: float
    c0: float
    c1: float

    def __post_init__(self):
        for name in ("a0", "a1", "c0", "c1"):
            val = float(getattr(self, name))
            if not np.isfinite(val):
                raise NetworkError(f"setting {name} is not finite")
            val = val % TWO_PI
            if val >= TWO_PI:
                val = 0.0
            object.__setattr__(self, name, val)

    @classmethod
    def from_hwp_degrees(cls, a0: float, a1: float, c0: float, c1: float) -> "Settings":
        """Half-wave-plate angles in degrees; the Bloch angle is four times the plate angle."""
        return cls(*(4 * np.deg2rad(t) for t in (a0, a1, c0, c1)))

    def as_array(self) -> np.ndarray:
        return np.array([self.a0, self.a1, self.c0, self.c1])

    def alice(self, x: int) -> float:
        return (self.a0, self.a1)[x]

    def charlie(self, z: int) -> float:
        return (self.c0, self.c1)[z]

    def swapped_parties(self) -> "Settings":
        return Settings(self.c0, self.c1, self.a0, self.a1)


def fixed_settings() -> Settings:
    """Plate angles 11.25 and 78.75 degrees on both sides: (sz +- sx)/sqrt(2)."""
    return Settings.from_hwp_degrees(11.25, 78.75, 11.25, 78.75)


def source_state(v: float, w: float = 0.0) -> np.ndarray:
    """``v |psi-><psi-| + w (|01><01| + |10><10|)/2 + (1 - v - w) I/4``."""
    _check_unit("v", v)
    _check_unit("w", w)
    if v + w > 1.0 + 1e-12:
        raise NetworkError(f"v + w = {v + w} exceeds 1")
    colored = 0.5 * (qm.projector(qm.ket("01")) + qm.projector(qm.ket("10")))
    return v * qm.bell_state("psi-") + w * colored + (1 - v - w) * np.eye(4, dtype=complex) / 4


def bsm_povm(p: float) -> Dict[str, np.ndarray]:
    """Bell-state measurement dephased in the computational basis.

    Each Bell projector keeps weight ``p``; the rest is replaced by the
    parity-preserving diagonal part, so at ``p = 0`` the measurement still
    separates phi from psi but guesses the phase.
    """
    _check_unit("p", p)
    even = 0.5 * (qm.projector(qm.ket("00")) + qm.projector(qm.ket("11")))
    odd = 0.5 * (qm.projector(qm.ket("01")) + qm.projector(qm.ket("10")))
    povm = {}
    for kind in qm.BELL_KINDS:
        diag = odd if kind.startswith("psi") else even
        povm[kind] = p * qm.bell_state(kind) + (1 - p) * diag
    return povm


def network_state(cfg: NetworkConfig) -> np.ndarray:
    rho1 = source_state(cfg.v1, cfg.w_colored)
    rho2 = source_state(cfg.v2, cfg.w_colored)
    return np.kron(rho1, rho2)


def _party_projectors(angles) -> np.ndarray:
    """``P[setting, outcome]`` as a (2, 2, 2, 2) array."""
    return np.array([qm.observable_projectors(qm.bloch_observable(t)) for t in angles])


def network_behavior(cfg: NetworkConfig, s: Settings) -> np.ndarray:
    """Born-rule table p(a, b0, b1, c | x, z) for the whole network."""
    rho = network_state(cfg).reshape((2,) * 8)
    povm = bsm_povm(cfg.p_bsm)
    bob = np.zeros((2, 2, 2, 2, 2, 2), dtype=complex)  # [b0, b1, i2, i3, j2, j3]
    for kind, eff in povm.items():
        bob[BELL_BITS[kind]] = eff.reshape(2, 2, 2, 2)
    pa = _party_projectors((s.a0, s.a1))
    pc = _party_projectors((s.c0, s.c1))
    # tr[(Pa (x) M (x) Pc) rho] with rho indexed [i1 i2 i3 i4, j1 j2 j3 j4]
    out = np.einsum("xaij,deklmn,zcop,jmnpiklo->xzadec", pa, bob, pc, rho, optimize=True).real
    check_behavior(out)
    return out


def check_behavior(b: np.ndarray, tol: float = BEHAVIOR_TOL) -> np.ndarray:
    """Validate positivity, normalization and no-signaling of a behavior."""
    b = np.asarray(b, dtype=float)
    if b.shape != BEHAVIOR_SHAPE:
        b = b.reshape(BEHAVIOR_SHAPE) if b.size == 64 else None
        if b is None:
            raise NetworkError("behavior must have 64 entries")
    if not np.all(np.isfinite(b)):
        raise NetworkError("behavior has non-finite entries")
    if b.min() < -1e-12 and b.min() < -tol:
        raise NetworkError(f"behavior has negative entry {b.min():.3g}")
    norms = b.sum(axis=(2, 3, 4, 5))
    if np.max(np.abs(norms - 1)) > tol:
        raise NetworkError("behavior is not normalized for every (x, z)")
    alice = b.sum(axis=(3, 4, 5))  # [x, z, a]
    charlie = b.sum(axis=(2, 3, 4))  # [x, z, c]
    bob = b.sum(axis=(2, 5))  # [x, z, b0, b1]
    if np.max(np.abs(alice[:, 0] - alice[:, 1])) > tol:
        raise NetworkError("Alice's marginal depends on z")
    if np.max(np.abs(charlie[0] - charlie[1])) > tol:
        raise NetworkError("Charlie's marginal depends on x")
    if np.max(np.abs(bob - bob[0, 0])) > tol:
        raise NetworkError("Bob's marginal depends on the settings")
    return b


def swapped_state(cfg: NetworkConfig, outcome: str) -> Tuple[np.ndarray, float]:
    """State of qubits 1 and 4 conditioned on Bob's outcome, and that outcome's probability."""
    if outcome not in BELL_BITS:
        raise NetworkError(f"unknown Bell outcome {outcome!r}")
    eff = bsm_povm(cfg.p_bsm)[outcome]
    rho = network_state(cfg)
    op = qm.kron(qm.I2, eff, qm.I2)
    unnorm = qm.partial_trace(op @ rho, keep=[0, 3])
    prob = float(np.real(np.trace(unnorm)))
    if prob <= 1e-12:
        raise NetworkError(f"outcome {outcome} has zero probability")
    state = unnorm / prob
    return 0.5 * (state + state.conj().T), prob


def correlation_tensors(cfg: NetworkConfig) -> np.ndarray:
    """Tensors ``T[y, i, j] = tr[(s_i (x) K_y (x) s_j) rho]`` with ``i, j`` over (z, x).

    ``K_y = sum_b (-1)**b_y M_b`` is Bob's y-th bit observable, so for angles
    ``alpha, gamma`` the correlator <A B_y C> equals
    ``(cos alpha, sin alpha) @ T[y] @ (cos gamma, sin gamma)``.
    """
    rho = network_state(cfg)
    povm = bsm_povm(cfg.p_bsm)
    paulis = (qm.SZ, qm.SX)
    out = np.zeros((2, 2, 2))
    for y in (0, 1):
        k = sum((-1) ** BELL_BITS[kind][y] * eff for kind, eff in povm.items())
        for i, si in enumerate(paulis):
            for j, sj in enumerate(paulis):
                out[y, i, j] = np.real(np.trace(qm.kron(si, k, sj) @ rho))
    return out


def sample_counts(b: np.ndarray, shots_per_setting: int, seed: int) -> np.ndarray:
    """Multinomial counts for each setting pair, same shape as the behavior."""
    if int(shots_per_setting) < 1:
        raise NetworkError("shots_per_setting must be positive")
    b = check_behavior(b)
    rng = np.random.default_rng(np.uint64(int(seed) % 2**64))
    counts = np.zeros(BEHAVIOR_SHAPE, dtype=np.int64)
    for x in (0, 1):
        for z in (0, 1):
            probs = np.clip(b[x, z].reshape(16), 0, None)
            probs = probs / probs.sum()
            counts[x, z] = rng.multinomial(int(shots_per_setting), probs).reshape(2, 2, 2, 2)
    return counts


def frequencies(counts: np.ndarray) -> np.ndarray:
    """Empirical behavior from a count table."""
    counts = np.asarray(counts, dtype=float)
    totals = counts.sum(axis=(2, 3, 4, 5), keepdims=True)
    if np.any(totals <= 0):
        raise NetworkError("count table has a setting with zero shots")
    return counts / totals
