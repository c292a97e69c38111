"""Sweeps over network noise reproducing the data behind the bilocality figures.

Every ``run_*`` function returns a list of flat records (dicts with a fixed
key order) that :func:`write_records` turns into CSV plus a JSON mirror.
"""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import metrics as mt
from . import polytope
from . import tomography as tomo
from .config import ExperimentConfig
from .network import (
    NetworkConfig,
    Settings,
    fixed_settings,
    frequencies,
    network_behavior,
    sample_counts,
    swapped_state,
)
from .optimize import optimize_settings
from .quantum import fidelity

ENTANGLED_TOL = 1e-12

SWEEP_FIELDS = (
    "p", "v1", "v2", "w", "settings_mode", "a0", "a1", "c0", "c1",
    "I", "J", "B", "lhv_linear", "max_lhv_score", "chsh_max_swapped", "negativity_swapped",
    "sigma_I", "sigma_J", "sigma_B",
)


def point_seed(seed: int, index: int) -> int:
    """Independent, order-free seed for grid point ``index``."""
    return int(np.random.SeedSequence([int(seed) % 2**64, index]).generate_state(1, dtype=np.uint64)[0])


def network_config(pt: Dict[str, float]) -> NetworkConfig:
    return NetworkConfig(v1=pt["v1"], v2=pt["v2"], w_colored=pt["w"], p_bsm=pt["p"])


def _settings_for(cfg: ExperimentConfig, net: NetworkConfig, mode: str, seed: int) -> Settings:
    if mode == "fixed":
        return fixed_settings()
    return optimize_settings(net, restarts=cfg.restarts, seed=seed).settings


def _bootstrap(counts: np.ndarray, n_boot: int, seed: int) -> Dict[str, float]:
    """Standard deviations of I, J, B over multinomial resamples of a count table."""
    if n_boot < 2:
        return {"sigma_I": 0.0, "sigma_J": 0.0, "sigma_B": 0.0}
    rng = np.random.default_rng(np.uint64(seed))
    freq = frequencies(counts)
    shots = counts.sum(axis=(2, 3, 4, 5))
    boot = np.zeros((n_boot,) + counts.shape)
    for x in (0, 1):
        for z in (0, 1):
            pr = freq[x, z].reshape(16)
            draws = rng.multinomial(int(shots[x, z]), pr, size=n_boot) / shots[x, z]
            boot[:, x, z] = draws.reshape(n_boot, 2, 2, 2, 2)
    I = np.empty(n_boot)
    J = np.empty(n_boot)
    for k in range(n_boot):
        rep = mt.bilocal_report(boot[k])
        I[k], J[k] = rep.I, rep.J
    B = np.sqrt(np.abs(I)) + np.sqrt(np.abs(J))
    return {"sigma_I": float(I.std(ddof=1)), "sigma_J": float(J.std(ddof=1)), "sigma_B": float(B.std(ddof=1))}


def _nontrivial(cfg: ExperimentConfig) -> List[polytope.Inequality]:
    if cfg.facets:
        return [f for f in polytope.read_facets(cfg.facets) if f.kind == polytope.NONTRIVIAL]
    return polytope.nontrivial_facets()


def facet_scores(b, facets: Sequence[polytope.Inequality], sampled: bool) -> np.ndarray:
    """Facet scores; exact model behaviors are rationalized and scored exactly."""
    if sampled:
        return polytope.evaluate_inequalities(b, facets)
    return np.array([float(v) for v in polytope.exact_scores(b, facets)])


def _swapped_metrics(net: NetworkConfig) -> Dict[str, float]:
    rho, _ = swapped_state(net, "psi-")
    return {"chsh_max_swapped": mt.horodecki_max_chsh(rho), "negativity_swapped": mt.ppt_negativity(rho)}


def sweep_record(cfg: ExperimentConfig, pt: Dict[str, float], index: int, mode: str,
                 facets: Sequence[polytope.Inequality]) -> Dict[str, object]:
    net = network_config(pt)
    seed = point_seed(cfg.seed, index)
    s = _settings_for(cfg, net, mode, seed)
    behavior = network_behavior(net, s)
    errors = {"sigma_I": 0.0, "sigma_J": 0.0, "sigma_B": 0.0}
    observed = behavior
    if cfg.shots > 0:
        counts = sample_counts(behavior, cfg.shots, seed)
        observed = frequencies(counts)
        errors = _bootstrap(counts, cfg.bootstrap, point_seed(seed, 1))
    rep = mt.bilocal_report(observed)
    scores = facet_scores(observed, facets, sampled=cfg.shots > 0)
    rec: Dict[str, object] = {
        "p": pt["p"], "v1": pt["v1"], "v2": pt["v2"], "w": pt["w"], "settings_mode": mode,
        "a0": s.a0, "a1": s.a1, "c0": s.c0, "c1": s.c1,
        "I": rep.I, "J": rep.J, "B": rep.B, "lhv_linear": rep.lhv_linear,
        "max_lhv_score": float(scores.max()),
    }
    rec.update(_swapped_metrics(net))
    rec.update(errors)
    return rec


def run_sweep(cfg: ExperimentConfig, modes: Optional[Sequence[str]] = None) -> List[Dict[str, object]]:
    """B, I, J and friends on every grid point, for each requested settings mode."""
    modes = list(modes) if modes is not None else [cfg.settings]
    facets = _nontrivial(cfg)
    records = []
    for index, pt in enumerate(cfg.grid()):
        for mode in modes:
            records.append(sweep_record(cfg, pt, index, mode, facets))
    return records


def run_fig3(cfg: ExperimentConfig) -> List[Dict[str, object]]:
    return run_sweep(cfg, modes=("fixed", "optimized"))


def run_optimize(cfg: ExperimentConfig) -> List[Dict[str, object]]:
    records = []
    for index, pt in enumerate(cfg.grid()):
        net = network_config(pt)
        res = optimize_settings(net, restarts=cfg.restarts, seed=point_seed(cfg.seed, index))
        s = res.settings
        records.append({
            "p": pt["p"], "v1": pt["v1"], "v2": pt["v2"], "w": pt["w"],
            "B_fixed": res.baseline_B, "B_optimized": res.B,
            "a0": s.a0, "a1": s.a1, "c0": s.c0, "c1": s.c1,
            "iterations": len(res.trace),
        })
    return records


def run_membership(cfg: ExperimentConfig) -> List[Dict[str, object]]:
    facets = _nontrivial(cfg)
    records = []
    for index, pt in enumerate(cfg.grid()):
        net = network_config(pt)
        s = _settings_for(cfg, net, cfg.settings, point_seed(cfg.seed, index))
        b = network_behavior(net, s)
        res = polytope.lp_membership(b)
        rep = mt.bilocal_report(b)
        records.append({
            "p": pt["p"], "v1": pt["v1"], "v2": pt["v2"], "w": pt["w"], "settings_mode": cfg.settings,
            "B": rep.B, "lhv_feasible": res.feasible, "lhv_feasible_relaxed": res.relaxed_feasible,
            "relaxed_residual": res.relaxed_residual,
            "max_lhv_score": float(facet_scores(b, facets, sampled=False).max()),
        })
    return records


def run_fig4a(cfg: ExperimentConfig) -> List[Dict[str, object]]:
    """Rescaled scores of every nontrivial LHV facet at each grid point."""
    facets = _nontrivial(cfg)
    records = []
    for index, pt in enumerate(cfg.grid()):
        net = network_config(pt)
        seed = point_seed(cfg.seed, index)
        s = _settings_for(cfg, net, cfg.settings, seed)
        b = network_behavior(net, s)
        if cfg.shots > 0:
            b = frequencies(sample_counts(b, cfg.shots, seed))
        scores = facet_scores(b, facets, sampled=cfg.shots > 0)
        rec: Dict[str, object] = {
            "p": pt["p"], "v1": pt["v1"], "v2": pt["v2"], "w": pt["w"], "settings_mode": cfg.settings,
            "B": mt.bilocal_report(b).B, "any_violated": bool(np.any(scores > 0)),
        }
        rec.update({f"score_{k:02d}": float(v) for k, v in enumerate(scores)})
        records.append(rec)
    return records


def classify_region(B: float, chsh: float) -> str:
    bil = B > 1.0
    chsh_v = chsh > 2.0
    if bil and chsh_v:
        return "both"
    if bil:
        return "only_bilocality"
    if chsh_v:
        return "only_chsh"
    return "neither"


def fig4b_point(net: NetworkConfig, shots: int = 0, seed: int = 0) -> Dict[str, object]:
    """B at fixed settings versus the maximal CHSH of the psi- conditioned state."""
    B = mt.bilocal_report(network_behavior(net, fixed_settings())).B
    rho, prob = swapped_state(net, "psi-")
    if shots > 0:
        est = tomo.reconstruct(tomo.simulate_tomography(rho, shots, seed))
    else:
        est = rho
    chsh = mt.horodecki_max_chsh(est)
    neg = mt.ppt_negativity(est)
    return {
        "B": B, "chsh_max": chsh, "negativity": neg, "entangled": bool(neg > ENTANGLED_TOL),
        "region": classify_region(B, chsh), "psi_minus_probability": prob,
        "fidelity": fidelity(est, rho),
    }


def run_fig4b(cfg: ExperimentConfig) -> List[Dict[str, object]]:
    records = []
    for index, pt in enumerate(cfg.grid()):
        rec: Dict[str, object] = {"p": pt["p"], "v1": pt["v1"], "v2": pt["v2"], "w": pt["w"]}
        rec.update(fig4b_point(network_config(pt), cfg.shots, point_seed(cfg.seed, index)))
        records.append(rec)
    return records


def only_bilocality_interval(ps: Sequence[float], v1: float = 1.0, v2: float = 1.0,
                             w: float = 0.0) -> List[float]:
    """Noise values where B > 1 at fixed settings while the swapped state cannot violate CHSH."""
    hits = []
    for p in ps:
        rec = fig4b_point(NetworkConfig(v1=v1, v2=v2, w_colored=w, p_bsm=p))
        if rec["region"] == "only_bilocality":
            hits.append(float(p))
    return hits


def scan_B_window(lo: float, hi: float, v_grid: Sequence[float], w_grid: Sequence[float],
                  p_grid: Sequence[float]) -> List[Dict[str, float]]:
    """Symmetric-source configs whose fixed-settings B falls inside ``[lo, hi]``."""
    hits = []
    for v in v_grid:
        for w in w_grid:
            if v + w > 1.0:
                continue
            for p in p_grid:
                net = NetworkConfig(v1=v, v2=v, w_colored=w, p_bsm=p)
                B = mt.bilocal_report(network_behavior(net, fixed_settings())).B
                if lo <= B <= hi:
                    hits.append({"v": float(v), "w": float(w), "p": float(p), "B": B})
    return hits


def run_tomo(cfg: ExperimentConfig) -> List[Dict[str, object]]:
    shots = cfg.shots if cfg.shots > 0 else 10_000
    records = []
    for index, pt in enumerate(cfg.grid()):
        net = network_config(pt)
        rho, _ = swapped_state(net, "psi-")
        counts = tomo.simulate_tomography(rho, shots, point_seed(cfg.seed, index))
        est = tomo.reconstruct(counts)
        records.append({
            "p": pt["p"], "v1": pt["v1"], "v2": pt["v2"], "w": pt["w"], "shots": shots,
            "fidelity": fidelity(est, rho),
            "chsh_max_true": mt.horodecki_max_chsh(rho), "chsh_max_est": mt.horodecki_max_chsh(est),
            "negativity_true": mt.ppt_negativity(rho), "negativity_est": mt.ppt_negativity(est),
            "counts": json.dumps(counts.to_dict(), sort_keys=True),
        })
    return records


def critical_p(v1: float = 1.0, v2: float = 1.0, w: float = 0.0, tol: float = 1e-12) -> float:
    """Smallest BSM noise p with B(p) >= 1 at fixed settings, by bisection."""
    def excess(p):
        return mt.bilocal_report(network_behavior(NetworkConfig(v1, v2, w, p), fixed_settings())).B - 1.0

    lo, hi = 0.0, 1.0
    if excess(hi) < 0:
        raise ValueError("B stays below 1 on the whole p range")
    if excess(lo) >= 0:
        return 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if excess(mid) >= 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# -- output -------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        if not math.isfinite(v):
            raise ValueError("non-finite value in output record")
        return format(float(v), ".9g")
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (float, np.floating)):
        return float(format(float(v), ".9g"))
    if isinstance(v, np.integer):
        return int(v)
    return v


def records_to_csv(records: Sequence[Dict[str, object]]) -> str:
    if not records:
        return ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(records[0].keys())
    writer.writerow(header)
    for rec in records:
        if list(rec.keys()) != header:
            raise ValueError("records do not share the same columns")
        writer.writerow([_fmt(rec[k]) for k in header])
    return buf.getvalue()


def records_to_json(records: Sequence[Dict[str, object]]) -> str:
    return json.dumps([{k: _json_value(v) for k, v in rec.items()} for rec in records], indent=1) + "\n"


def write_records(records: Sequence[Dict[str, object]], out: str) -> List[Path]:
    """Write ``out`` as CSV and ``out`` with a ``.json`` suffix as the JSON mirror."""
    csv_path = Path(out)
    json_path = csv_path.with_suffix(".json")
    if json_path == csv_path:
        csv_path = csv_path.with_suffix(".csv")
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    csv_path.write_text(records_to_csv(records), encoding="utf-8")
    json_path.write_text(records_to_json(records), encoding="utf-8")
    return [csv_path, json_path]
