"""Flat ``key = value`` experiment configuration with command-line overrides."""
from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

MODES = ("sweep", "facets", "membership", "tomo", "optimize", "fig3", "fig4a", "fig4b")
SETTINGS_MODES = ("fixed", "optimized")
GRID_KEYS = ("p", "v1", "v2", "w")


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending line or field."""


def default_p_grid() -> List[float]:
    return [round(k / 10, 12) for k in range(11)]


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str = "sweep"
    p: Tuple[float, ...] = tuple(default_p_grid())
    v1: Tuple[float, ...] = (1.0,)
    v2: Optional[Tuple[float, ...]] = (1.0,)  # None ties v2 to v1
    w: Tuple[float, ...] = (0.0,)
    shots: int = 0
    seed: int = 0
    out: Optional[str] = None
    settings: str = "fixed"
    restarts: int = 4
    bootstrap: int = 200
    facets: Optional[str] = None

    def grid(self) -> List[Dict[str, float]]:
        """Grid points in output order: v1, v2, w outermost, p innermost."""
        pts = []
        v2s = self.v2 if self.v2 is not None else (None,)
        for v1 in self.v1:
            for v2 in v2s:
                for w in self.w:
                    for p in self.p:
                        pts.append({"p": p, "v1": v1, "v2": v1 if v2 is None else v2, "w": w})
        return pts


def parse_values(key: str, text: str) -> Tuple[float, ...]:
    """``a``, ``a, b, c`` or ``start:stop:step`` (stop inclusive)."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, step = (float(t) for t in text.split(":"))
            if step <= 0:
                raise ConfigError(f"{key}: step must be > 0")
            if stop < start:
                raise ConfigError(f"{key}: empty range {text}")
            n = int(np.floor((stop - start) / step + 1e-9)) + 1
            vals = tuple(round(start + k * step, 12) for k in range(n))
        else:
            vals = tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{key}: cannot parse {text!r}") from None
    if not vals:
        raise ConfigError(f"{key}: empty value list")
    for v in vals:
        if not 0.0 <= v <= 1.0:
            raise ConfigError(f"{key}: value {v} outside [0, 1]")
    return vals


def _coerce(key: str, text: str):
    if key in GRID_KEYS:
        if key == "v2" and text.strip() == "v1":
            return None
        return parse_values(key, text)
    if key in ("shots", "seed", "restarts", "bootstrap"):
        try:
            val = int(text)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {text!r}") from None
        if key in ("shots", "bootstrap") and val < 0:
            raise ConfigError(f"{key}: must be >= 0")
        if key == "restarts" and val < 1:
            raise ConfigError("restarts: must be >= 1")
        return val
    if key == "mode" and text not in MODES:
        raise ConfigError(f"mode: unknown mode {text!r}")
    if key == "settings" and text not in SETTINGS_MODES:
        raise ConfigError(f"settings: expected fixed or optimized, got {text!r}")
    return text


KEYS = tuple(f.name for f in fields(ExperimentConfig))


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, object]:
    values: Dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _coerce(key, val)
        except ConfigError as exc:
            raise ConfigError(f"{source}:{lineno}: {exc}") from None
    return values


def load_config(path: Optional[str], overrides: Dict[str, Optional[str]]) -> ExperimentConfig:
    values: Dict[str, object] = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError:
            raise
        values.update(parse_config_text(text, str(path)))
    for key, raw in overrides.items():
        if raw is not None:
            try:
                values[key] = _coerce(key, str(raw))
            except ConfigError as exc:
                raise ConfigError(f"--{key}: {exc}") from None
    cfg = replace(ExperimentConfig(), **values)
    _validate(cfg)
    return cfg


def _validate(cfg: ExperimentConfig) -> None:
    if cfg.mode not in MODES:
        raise ConfigError(f"mode: unknown mode {cfg.mode!r}")
    v2s = cfg.v2 if cfg.v2 is not None else cfg.v1
    for w in cfg.w:
        for name, vs in (("v1", cfg.v1), ("v2", v2s)):
            for v in vs:
                if v + w > 1.0 + 1e-12:
                    raise ConfigError(f"{name} + w: {v} + {w} exceeds 1")
