"""Facet file format: tab-separated integer coefficients in behavior order, then the bound."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, List

from .lhv import Inequality, scenario


def format_facets(ineqs: Iterable[Inequality]) -> str:
    ordered = sorted(ineqs, key=lambda f: (f.coeffs, f.bound))
    return "".join("\t".join(str(v) for v in (*f.coeffs, f.bound)) + "\n" for f in ordered)


def write_facets(path, ineqs: Iterable[Inequality]) -> None:
    Path(path).write_text(format_facets(ineqs), encoding="utf-8")


def read_facets(path, n_b: int = 4) -> List[Inequality]:
    sc = scenario(n_b)
    out = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != sc.size + 1:
            raise ValueError(f"{path}:{lineno}: expected {sc.size + 1} fields, got {len(fields)}")
        vals = [int(v) for v in fields]
        out.append(sc.canonicalize(vals[:-1], vals[-1]))
    return out
