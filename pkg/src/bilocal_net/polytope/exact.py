"""Small exact linear-algebra helpers over ``Fraction`` and ``int``."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence


def vec_gcd(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def primitive(v: Sequence[int]) -> List[int]:
    """Divide an integer vector by the gcd of its entries."""
    g = vec_gcd(v)
    if g <= 1:
        return [int(x) for x in v]
    return [int(x) // g for x in v]


def integerize(v: Sequence[Fraction]) -> List[int]:
    """Smallest positive multiple of a rational vector that is integral."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def rank(rows: Sequence[Sequence]) -> int:
    return len(independent_rows(rows))


def independent_rows(rows: Sequence[Sequence]) -> List[int]:
    """Indices of a maximal linearly independent subset, chosen greedily in order."""
    basis: List[List[Fraction]] = []  # reduced rows, each with a pivot column
    pivots: List[int] = []
    chosen = []
    for idx, row in enumerate(rows):
        r = [Fraction(x) for x in row]
        for b, p in zip(basis, pivots):
            if r[p]:
                f = r[p] / b[p]
                r = [ri - f * bi for ri, bi in zip(r, b)]
        nz = next((j for j, x in enumerate(r) if x), None)
        if nz is not None:
            basis.append(r)
            pivots.append(nz)
            chosen.append(idx)
    return chosen


def inverse(m: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv_p = 1 / a[col][col]
        a[col] = [x * inv_p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
