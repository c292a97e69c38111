"""Double description method for pointed polyhedral cones, in integer arithmetic."""
from __future__ import annotations

from typing import List, Sequence

from .exact import independent_rows, integerize, inverse, primitive


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def extreme_rays(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Extreme rays of ``{y : rows @ y >= 0}``.

    ``rows`` must have full column rank (the cone is pointed). Rays are
    returned as primitive integer vectors. Adjacency uses the combinatorial
    test on zero sets, which is exact because every ray in the working set
    is extreme for the constraints processed so far.
    """
    rows = [[int(v) for v in r] for r in rows]
    d = len(rows[0])
    start = independent_rows(rows)
    if len(start) != d:
        raise ValueError(f"constraint matrix has rank {len(start)} < {d}; cone is not pointed")

    inv = inverse([rows[i] for i in start])
    rays: List[List[int]] = []
    zeros: List[int] = []
    full = 0
    for i in start:
        full |= 1 << i
    for j, i in enumerate(start):
        rays.append(integerize([inv[k][j] for k in range(d)]))
        zeros.append(full & ~(1 << i))

    done = set(start)
    for i in range(len(rows)):
        if i in done:
            continue
        row = rows[i]
        vals = [_dot(row, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]

        new_rays: List[List[int]] = []
        new_zeros: List[int] = []
        bit = 1 << i
        for kp in pos:
            zp = zeros[kp]
            for kn in neg:
                common = zp & zeros[kn]
                if bin(common).count("1") < d - 2:
                    continue
                adjacent = True
                for k3 in range(len(rays)):
                    if k3 != kp and k3 != kn and (zeros[k3] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vn = vals[kp], vals[kn]
                ray = primitive([vp * a - vn * b for a, b in zip(rays[kn], rays[kp])])
                new_rays.append(ray)
                new_zeros.append(common | bit)

        rays = [rays[k] for k in pos] + [rays[k] for k in zer] + new_rays
        zeros = [zeros[k] for k in pos] + [zeros[k] | bit for k in zer] + new_zeros
        done.add(i)
    return rays
