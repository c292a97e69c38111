"""Search for Alice/Charlie angles that maximize the bilocality quantity B."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.optimize import minimize

from .metrics import bilocal_report
from .network import NetworkConfig, Settings, correlation_tensors, fixed_settings, network_behavior

GRID_STEP = np.pi / 16
XATOL = 1e-6
MAX_ITER = 500
N_SEEDS = 8


@dataclass
class OptimizationResult:
    settings: Settings
    B: float
    trace: List[Tuple[int, float]] = field(default_factory=list)
    baseline_B: float = 0.0


def _unit(angles: np.ndarray) -> np.ndarray:
    return np.stack([np.cos(angles), np.sin(angles)], axis=-1)


def fast_B(tensors: np.ndarray, angles) -> float:
    """B from the correlation tensors of a config; equals the full Born-rule value."""
    a0, a1, c0, c1 = _unit(np.asarray(angles, dtype=float))
    I = 0.25 * (a0 + a1) @ tensors[0] @ (c0 + c1)
    J = 0.25 * (a0 - a1) @ tensors[1] @ (c0 - c1)
    return float(np.sqrt(abs(I)) + np.sqrt(abs(J)))


def grid_B(tensors: np.ndarray, step: float = GRID_STEP) -> Tuple[np.ndarray, np.ndarray]:
    """B on the full 4-angle grid; returns (angles, B[k0, k1, l0, l1])."""
    ang = np.arange(0.0, 2 * np.pi - 1e-12, step)
    u = _unit(ang)
    s = u[:, None, :] + u[None, :, :]
    d = u[:, None, :] - u[None, :, :]
    I = 0.25 * np.einsum("abi,ij,cdj->abcd", s, tensors[0], s)
    J = 0.25 * np.einsum("abi,ij,cdj->abcd", d, tensors[1], d)
    return ang, np.sqrt(np.abs(I)) + np.sqrt(np.abs(J))


def settings_B(cfg: NetworkConfig, s: Settings) -> float:
    """B through the full network behavior, the path used by the sweeps."""
    return bilocal_report(network_behavior(cfg, s)).B


def optimize_settings(cfg: NetworkConfig, restarts: int = 4, seed: int = 0) -> OptimizationResult:
    """Coarse grid followed by Nelder-Mead refinement from several starts.

    Restart 0 starts from the best grid point; later restarts start from the
    next-best grid points with a seeded random jitter. The fixed settings are
    always a candidate, so the result never falls below them.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    rng = np.random.default_rng(np.uint64(int(seed) % 2**64))
    tensors = correlation_tensors(cfg)
    ang, grid = grid_B(tensors)
    order = np.argsort(-grid, axis=None, kind="stable")

    trace: List[Tuple[int, float]] = []
    it = 0
    best_so_far = -np.inf
    candidates: List[Settings] = [fixed_settings()]
    for r in range(restarts):
        idx = np.unravel_index(order[min(r, order.size - 1)], grid.shape)
        x0 = ang[list(idx)]
        if r > 0:
            x0 = x0 + rng.normal(scale=GRID_STEP / 2, size=4)
        simplex = np.vstack([x0] + [x0 + GRID_STEP / 2 * e for e in np.eye(4)])

        def record(xk):
            nonlocal it, best_so_far
            it += 1
            best_so_far = max(best_so_far, fast_B(tensors, xk))
            trace.append((it, best_so_far))

        res = minimize(
            lambda v: -fast_B(tensors, v),
            x0,
            method="Nelder-Mead",
            callback=record,
            options={
                "initial_simplex": simplex,
                "xatol": XATOL,
                "fatol": np.inf,
                "maxiter": MAX_ITER,
            },
        )
        candidates.append(Settings(*res.x))

    scored = [(settings_B(cfg, s), s) for s in candidates]
    baseline = scored[0][0]
    best_B, best = min(scored, key=lambda t: (-t[0], tuple(t[1].as_array())))
    return OptimizationResult(best, best_B, trace, baseline)
