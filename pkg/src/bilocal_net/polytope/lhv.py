"""LHV polytope of the network scenario.

Alice and Charlie have two binary measurements, Bob a single measurement with
``n_b`` outcomes (4 for the full network, 2 when only ``b0`` is kept).
Behaviors are flat vectors indexed by ``(x, z, a, b, c)`` in C order, which
for ``n_b = 4`` and ``b = 2*b0 + b1`` coincides with the flattened network
behavior.

Everything combinatorial is done in a 9*n_b - 1 dimensional coordinate system
(one marginal per party combination with outcome 0, the remaining entries fixed
by normalization and no-signaling), in which the polytope is full-dimensional.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from .ddm import extreme_rays
from .exact import primitive, rank
from .simplex import phase_one

RATIONAL_DENOMINATOR = 10**9
RELAXED_EPS = 1e-7
NS_TOL = 1e-9

POSITIVITY = "positivity"
NONTRIVIAL = "nontrivial"


@dataclass(frozen=True)
class Inequality:
    """``coeffs @ p <= bound`` with integer data; ``coeffs`` is in behavior order."""

    coeffs: Tuple[int, ...]
    bound: int
    kind: str = NONTRIVIAL

    def value(self, b) -> float:
        return float(np.dot(np.asarray(self.coeffs, dtype=float), np.asarray(b, dtype=float).reshape(-1)))

    def exact_value(self, b: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, b) if c), Fraction(0))


@dataclass
class MembershipResult:
    feasible: bool
    weights: Optional[List[Fraction]]
    violated_certificate: Optional[Inequality]
    relaxed_feasible: bool
    relaxed_residual: float
    behavior: List[Fraction]


class Scenario:
    """Deterministic strategies, coordinates and facets for ``n_b`` Bob outcomes."""

    def __init__(self, n_b: int = 4):
        if n_b < 1:
            raise ValueError("Bob needs at least one outcome")
        self.n_b = n_b
        self.size = 4 * 2 * n_b * 2  # x, z, a, b, c

    def index(self, x: int, z: int, a: int, b: int, c: int) -> int:
        return (((x * 2 + z) * 2 + a) * self.n_b + b) * 2 + c

    # -- vertices -------------------------------------------------------
    @cached_property
    def strategies(self) -> List[Tuple[Tuple[int, int], int, Tuple[int, int]]]:
        resp = list(itertools.product((0, 1), repeat=2))
        return [(fa, b, fc) for fa in resp for b in range(self.n_b) for fc in resp]

    @cached_property
    def vertices(self) -> np.ndarray:
        """0/1 behaviors of all deterministic strategies, one per row."""
        out = np.zeros((len(self.strategies), self.size), dtype=np.int64)
        for k, (fa, b, fc) in enumerate(self.strategies):
            for x, z in itertools.product((0, 1), repeat=2):
                out[k, self.index(x, z, fa[x], b, fc[z])] = 1
        return out

    def affine_dimension(self) -> int:
        v = [[Fraction(int(e)) for e in row] for row in self.vertices]
        base = v[0]
        return rank([[e - f for e, f in zip(row, base)] for row in v[1:]])

    # -- coordinates ----------------------------------------------------
    @cached_property
    def coord_map(self) -> np.ndarray:
        """Integer matrix G with ``coords = G @ p``.

        Rows: p(b) for b < n_b - 1, p(a=0, b | x), p(b, c=0 | z), p(a=0, b, c=0 | x, z),
        each read off at a fixed setting of the parties it does not involve.
        """
        nb, rows = self.n_b, []

        def row_of(cells):
            r = np.zeros(self.size, dtype=np.int64)
            for cell in cells:
                r[self.index(*cell)] = 1
            return r

        for b in range(nb - 1):
            rows.append(row_of([(0, 0, a, b, c) for a in (0, 1) for c in (0, 1)]))
        for x in (0, 1):
            for b in range(nb):
                rows.append(row_of([(x, 0, 0, b, c) for c in (0, 1)]))
        for z in (0, 1):
            for b in range(nb):
                rows.append(row_of([(0, z, a, b, 0) for a in (0, 1)]))
        for x, z in itertools.product((0, 1), repeat=2):
            for b in range(nb):
                rows.append(row_of([(x, z, 0, b, 0)]))
        return np.array(rows)

    @cached_property
    def _coord_slots(self):
        nb = self.n_b
        pb = list(range(nb - 1))
        off = nb - 1
        pa = {(x, b): off + x * nb + b for x in (0, 1) for b in range(nb)}
        off += 2 * nb
        pc = {(z, b): off + z * nb + b for z in (0, 1) for b in range(nb)}
        off += 2 * nb
        pac = {(x, z, b): off + (x * 2 + z) * nb + b for x in (0, 1) for z in (0, 1) for b in range(nb)}
        return pb, pa, pc, pac

    @cached_property
    def reconstruction(self) -> Tuple[np.ndarray, np.ndarray]:
        """``(R, r0)`` with ``p = R @ coords + r0`` on the no-signaling affine hull."""
        dim = self.coord_map.shape[0]
        R = np.zeros((self.size, dim), dtype=np.int64)
        r0 = np.zeros(self.size, dtype=np.int64)
        pb, pa, pc, pac = self._coord_slots
        last = self.n_b - 1

        def add_pb(row, b, sign):
            if b < last:
                R[row, pb[b]] += sign
            else:
                r0[row] += sign
                for k in pb:
                    R[row, k] -= sign

        for x, z, b in itertools.product((0, 1), (0, 1), range(self.n_b)):
            i00 = self.index(x, z, 0, b, 0)
            i01 = self.index(x, z, 0, b, 1)
            i10 = self.index(x, z, 1, b, 0)
            i11 = self.index(x, z, 1, b, 1)
            R[i00, pac[x, z, b]] += 1
            R[i01, pa[x, b]] += 1
            R[i01, pac[x, z, b]] -= 1
            R[i10, pc[z, b]] += 1
            R[i10, pac[x, z, b]] -= 1
            add_pb(i11, b, 1)
            R[i11, pa[x, b]] -= 1
            R[i11, pc[z, b]] -= 1
            R[i11, pac[x, z, b]] += 1
        return R, r0

    @cached_property
    def vertex_coords(self) -> np.ndarray:
        return self.vertices @ self.coord_map.T

    # -- behaviors ------------------------------------------------------
    def check_exact(self, p: Sequence[Fraction]) -> None:
        """Raise unless ``p`` is nonnegative and lies on the no-signaling affine hull exactly."""
        if len(p) != self.size:
            raise ValueError(f"behavior must have {self.size} entries, got {len(p)}")
        if any(v < 0 for v in p):
            raise ValueError("behavior has a negative entry")
        R, r0 = self.reconstruction
        coords = self.coord_map @ np.array(p, dtype=object)
        back = R.astype(object) @ coords + r0.astype(object)
        if any(u != v for u, v in zip(back, p)):
            raise ValueError("behavior violates normalization or no-signaling")

    def rationalize(self, p: Sequence[float], denominator: int = RATIONAL_DENOMINATOR) -> List[Fraction]:
        """Exact behavior near ``p`` whose coordinates have the given denominator.

        Rounding happens in hull coordinates, so the result satisfies
        normalization and no-signaling exactly.
        """
        arr = np.asarray(p, dtype=float).reshape(-1)
        if arr.size != self.size:
            raise ValueError(f"behavior must have {self.size} entries, got {arr.size}")
        _check_float_behavior(self, arr)
        coords = [Fraction(int(round(v * denominator)), denominator) for v in self.coord_map @ arr]
        R, r0 = self.reconstruction
        return list(R.astype(object) @ np.array(coords, dtype=object) + r0.astype(object))

    def to_exact(self, p) -> List[Fraction]:
        if all(isinstance(v, (Fraction, int)) for v in np.asarray(p, dtype=object).reshape(-1)):
            exact = [Fraction(v) for v in np.asarray(p, dtype=object).reshape(-1)]
            self.check_exact(exact)
            return exact
        return self.rationalize(p)

    # -- inequalities ---------------------------------------------------
    def coord_form(self, coeffs: Sequence, bound) -> Tuple[List[Fraction], Fraction]:
        """Pull an inequality on behaviors back to hull coordinates."""
        R, r0 = self.reconstruction
        f = np.array([Fraction(c) for c in coeffs], dtype=object)
        g = list(R.T.astype(object) @ f)
        gamma = Fraction(bound) - sum((fi * int(ri) for fi, ri in zip(f, r0)), Fraction(0))
        return g, gamma

    def from_coord_form(self, g: Sequence, gamma, kind: Optional[str] = None) -> Inequality:
        """Canonical behavior-space inequality for ``g @ coords <= gamma``."""
        den = 1
        for v in list(g) + [gamma]:
            den = np.lcm(den, Fraction(v).denominator)
        ints = primitive([int(Fraction(v) * int(den)) for v in list(g) + [gamma]])
        g_int, gamma_int = ints[:-1], ints[-1]
        coeffs = [int(v) for v in self.coord_map.T @ np.array(g_int, dtype=np.int64)]
        if kind is None:
            kind = POSITIVITY if tuple(ints) in self._positivity_keys else NONTRIVIAL
        return Inequality(tuple(coeffs), int(gamma_int), kind)

    def canonicalize(self, coeffs: Sequence, bound, kind: Optional[str] = None) -> Inequality:
        g, gamma = self.coord_form(coeffs, bound)
        return self.from_coord_form(g, gamma, kind)

    def coord_key(self, ineq: Inequality) -> Tuple[int, ...]:
        g, gamma = self.coord_form(ineq.coeffs, ineq.bound)
        den = 1
        for v in g + [gamma]:
            den = np.lcm(den, v.denominator)
        return tuple(primitive([int(v * int(den)) for v in g + [gamma]]))

    @cached_property
    def _positivity_keys(self):
        keys = set()
        for k in range(self.size):
            coeffs = [0] * self.size
            coeffs[k] = -1
            g, gamma = self.coord_form(coeffs, 0)
            keys.add(tuple(primitive([int(v) for v in g + [gamma]])))
        return keys

    def positivity_inequalities(self) -> List[Inequality]:
        out = []
        for k in range(self.size):
            coeffs = [0] * self.size
            coeffs[k] = -1
            out.append(self.canonicalize(coeffs, 0, POSITIVITY))
        return out

    def vertex_range(self, ineq: Inequality) -> Tuple[int, int]:
        vals = self.vertices @ np.array(ineq.coeffs, dtype=np.int64)
        return int(vals.min()), int(vals.max())


@lru_cache(maxsize=None)
def scenario(n_b: int = 4) -> Scenario:
    return Scenario(n_b)


def _check_float_behavior(sc: Scenario, arr: np.ndarray) -> None:
    if not np.all(np.isfinite(arr)) or arr.min() < -NS_TOL:
        raise ValueError("behavior has negative or non-finite entries")
    R, r0 = sc.reconstruction
    back = R @ (sc.coord_map @ arr) + r0
    if np.max(np.abs(back - arr)) > NS_TOL * 10:
        raise ValueError("behavior violates normalization or no-signaling")


def enumerate_vertices(n_b: int = 4) -> np.ndarray:
    return scenario(n_b).vertices.copy()


def _sort_key(ineq: Inequality):
    return (ineq.coeffs, ineq.bound)


@lru_cache(maxsize=None)
def _facets_cached(n_b: int) -> Tuple[Inequality, ...]:
    sc = scenario(n_b)
    # valid inequality g.c <= gamma  <=>  (gamma, -g) . (1, c) >= 0
    rows = [[1] + [int(v) for v in vc] for vc in sc.vertex_coords]
    rays = extreme_rays(rows)
    facets = {sc.from_coord_form([-v for v in r[1:]], r[0]) for r in rays}
    return tuple(sorted(facets, key=_sort_key))


def facet_enumeration(n_b: int = 4) -> List[Inequality]:
    """All facets of the LHV polytope, exact and in canonical form, sorted lexicographically."""
    return list(_facets_cached(n_b))


def nontrivial_facets(n_b: int = 4) -> List[Inequality]:
    return [f for f in facet_enumeration(n_b) if f.kind == NONTRIVIAL]


def evaluate_inequalities(b, ineqs: Iterable[Inequality], n_b: int = 4) -> np.ndarray:
    """Scores ``(value - bound) / (bound - min over vertices)``; positive means violated.

    Fraction-valued behaviors are scored exactly and returned as a list of
    Fractions; anything else is scored in floating point.
    """
    sc = scenario(n_b)
    flat = np.asarray(b, dtype=object).reshape(-1)
    exact = all(isinstance(v, (Fraction, int)) for v in flat)
    p = flat if exact else np.asarray(b, dtype=float).reshape(-1)
    scores = []
    for ineq in ineqs:
        lo, _ = sc.vertex_range(ineq)
        scale = ineq.bound - lo
        if scale <= 0:
            raise ValueError("inequality is constant on the polytope")
        if exact:
            scores.append((ineq.exact_value(p) - ineq.bound) / scale)
        else:
            scores.append((ineq.value(p) - ineq.bound) / scale)
    return scores if exact else np.array(scores)


def exact_scores(b, ineqs: Iterable[Inequality], n_b: int = 4) -> List[Fraction]:
    """Scores of the rationalized behavior (see :meth:`Scenario.rationalize`)."""
    return evaluate_inequalities(scenario(n_b).to_exact(b), ineqs, n_b)


def relaxed_membership(b, n_b: int = 4) -> float:
    """Smallest max-norm distance from ``b`` to the polytope (float LP)."""
    sc = scenario(n_b)
    p = np.asarray(b, dtype=float).reshape(-1)
    V = sc.vertices.T.astype(float)  # size x nv
    nv = V.shape[1]
    # variables: weights (nv), t ; minimize t
    c = np.zeros(nv + 1)
    c[-1] = 1.0
    ones = np.ones((sc.size, 1))
    A_ub = np.block([[V, -ones], [-V, -ones]])
    b_ub = np.concatenate([p, -p])
    A_eq = np.concatenate([np.ones(nv), [0.0]])[None, :]
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=[(0, None)] * (nv + 1), method="highs")
    if res.status != 0:
        raise RuntimeError(f"relaxed membership LP failed: {res.message}")
    return float(res.x[-1])


def lp_membership(b, n_b: int = 4, relaxed: bool = True) -> MembershipResult:
    """Exact LHV membership of a behavior.

    Float behaviors are rationalized first (denominator 1e9 in hull
    coordinates). A feasible answer carries convex weights over the
    deterministic strategies; an infeasible one carries a valid inequality
    that the behavior violates. The float epsilon-relaxed answer is reported
    alongside.
    """
    sc = scenario(n_b)
    exact = sc.to_exact(b)
    coords = list(sc.coord_map.astype(object) @ np.array(exact, dtype=object))
    vc = sc.vertex_coords
    nv = vc.shape[0]
    A = [[1] * nv] + [[int(vc[k, i]) for k in range(nv)] for i in range(vc.shape[1])]
    r = [Fraction(1)] + coords
    res = phase_one(A, r)
    if relaxed:
        resid = relaxed_membership([float(v) for v in exact], n_b)
    else:
        resid = float("nan")
    relaxed_ok = bool(resid <= RELAXED_EPS) if relaxed else res.feasible
    if res.feasible:
        return MembershipResult(True, res.x, None, relaxed_ok, resid, exact)
    y = res.farkas
    # y . (1, c_v) <= 0 for all vertices and y . (1, c_b) > 0:  y[1:] . c <= -y[0]
    cert = sc.from_coord_form(y[1:], -y[0])
    return MembershipResult(False, None, cert, relaxed_ok, resid, exact)
