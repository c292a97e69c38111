"""Phase-one simplex over the rationals.

Decides whether ``A w = r, w >= 0`` is feasible. On success it returns a
feasible ``w``; otherwise a dual vector ``y`` with ``y @ A <= 0`` and
``y @ r > 0`` (a Farkas certificate).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

_DEGENERATE_SWITCH = 50


@dataclass
class PhaseOneResult:
    feasible: bool
    x: Optional[List[Fraction]]
    farkas: Optional[List[Fraction]]
    pivots: int


def phase_one(A: Sequence[Sequence], r: Sequence, max_pivots: int = 10_000) -> PhaseOneResult:
    m = len(A)
    n = len(A[0])
    signs = [1 if Fraction(ri) >= 0 else -1 for ri in r]
    # tableau columns: n structural, m artificial, then rhs
    tab: List[List[Fraction]] = []
    for i in range(m):
        s = signs[i]
        row = [Fraction(s * A[i][j]) for j in range(n)]
        row += [Fraction(int(i == k)) for k in range(m)]
        row.append(Fraction(s * r[i]) if not isinstance(r[i], Fraction) else s * r[i])
        tab.append(row)
    basis = [n + i for i in range(m)]
    width = n + m + 1
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [Fraction(0)] * width
    for j in range(width):
        if n <= j < n + m:
            continue
        cost[j] = -sum((tab[i][j] for i in range(m)), Fraction(0))
    # cost[-1] holds minus the objective value

    pivots = 0
    degenerate_run = 0
    while True:
        bland = degenerate_run >= _DEGENERATE_SWITCH
        enter = None
        best = Fraction(0)
        for j in range(n + m):
            cj = cost[j]
            if cj < 0:
                if bland:
                    enter = j
                    break
                if cj < best:
                    best, enter = cj, j
        if enter is None:
            break
        leave = None
        ratio = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                q = tab[i][-1] / a
                if ratio is None or q < ratio or (q == ratio and basis[i] < basis[leave]):
                    ratio, leave = q, i
        if leave is None:  # cannot happen: phase-one objective is bounded below
            raise RuntimeError("phase-one LP reported unbounded")
        degenerate_run = degenerate_run + 1 if ratio == 0 else 0
        _pivot(tab, cost, leave, enter)
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("simplex exceeded pivot limit")

    objective = -cost[-1]
    if objective == 0:
        x = [Fraction(0)] * n
        for i, bvar in enumerate(basis):
            if bvar < n:
                x[bvar] = tab[i][-1]
        return PhaseOneResult(True, x, None, pivots)
    # dual of the artificial columns: reduced cost = 1 - y_i
    y = [signs[i] * (1 - cost[n + i]) for i in range(m)]
    return PhaseOneResult(False, None, y, pivots)


def _pivot(tab, cost, leave, enter):
    prow = tab[leave]
    p = prow[enter]
    if p != 1:
        inv = 1 / p
        prow = [v * inv for v in prow]
        tab[leave] = prow
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(tab):
        if i == leave:
            continue
        f = row[enter]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
    f = cost[enter]
    if f:
        for j in nz:
            cost[j] -= f * prow[j]
