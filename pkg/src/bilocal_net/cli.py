"""``bilocal-net`` command line front end.

Exit codes: 0 success, 1 invalid configuration, 2 I/O error, 3 internal
invariant breach.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import harness, polytope
from .config import MODES, ConfigError, ExperimentConfig, load_config
from .network import NetworkError
from .quantum import QuantumError

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_INVARIANT = 0, 1, 2, 3

RUNNERS = {
    "sweep": harness.run_sweep,
    "fig3": harness.run_fig3,
    "optimize": harness.run_optimize,
    "membership": harness.run_membership,
    "fig4a": harness.run_fig4a,
    "fig4b": harness.run_fig4b,
    "tomo": harness.run_tomo,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bilocal-net", description=__doc__.splitlines()[0])
    ap.add_argument("mode", choices=MODES)
    ap.add_argument("--config", default=None, help="key = value configuration file")
    for key in ("p", "v1", "v2", "w"):
        ap.add_argument(f"--{key}", default=None, help="value, comma list or start:stop:step")
    ap.add_argument("--shots", default=None)
    ap.add_argument("--seed", default=None)
    ap.add_argument("--settings", default=None, choices=("fixed", "optimized"))
    ap.add_argument("--restarts", default=None)
    ap.add_argument("--bootstrap", default=None)
    ap.add_argument("--facets", default=None, help="facet file to use instead of recomputing")
    ap.add_argument("--out", default=None, help="output path (CSV; a .json mirror is written alongside)")
    return ap


def _run_facets(cfg: ExperimentConfig) -> dict:
    sc = polytope.scenario()
    facets = polytope.facet_enumeration()
    summary = {
        "vertices": int(sc.vertices.shape[0]),
        "affine_dimension": sc.affine_dimension(),
        "facets": len(facets),
        "positivity": sum(f.kind == polytope.POSITIVITY for f in facets),
        "nontrivial": sum(f.kind == polytope.NONTRIVIAL for f in facets),
    }
    if cfg.out:
        polytope.write_facets(cfg.out, facets)
        Path(cfg.out).with_suffix(".json").write_text(json.dumps(summary, indent=1) + "\n", encoding="utf-8")
    return summary


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {k: getattr(args, k) for k in
                 ("p", "v1", "v2", "w", "shots", "seed", "settings", "restarts", "bootstrap", "facets", "out")}
    overrides["mode"] = args.mode
    try:
        cfg = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"bilocal-net: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"bilocal-net: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        if cfg.mode == "facets":
            summary = _run_facets(cfg)
            print(json.dumps(summary))
            return EXIT_OK
        records = RUNNERS[cfg.mode](cfg)
        if cfg.out:
            harness.write_records(records, cfg.out)
        else:
            sys.stdout.write(harness.records_to_csv(records))
    except OSError as exc:
        print(f"bilocal-net: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NetworkError, QuantumError, AssertionError, ValueError, RuntimeError) as exc:
        print(f"bilocal-net: invariant breach: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
