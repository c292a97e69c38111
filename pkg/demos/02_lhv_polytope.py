"""
The LHV polytope of the network
===============================

With one common hidden variable the behaviors p(a, b0, b1, c | x, z) form a
polytope with 64 deterministic vertices. We enumerate its facets exactly,
check membership of the quantum behaviors with a rational LP, and show a
behavior that the LP rejects.
"""

from collections import Counter

import numpy as np

from bilocal_net import NetworkConfig, bilocal_report, fixed_settings, network_behavior
from bilocal_net import polytope as pt

sc = pt.scenario()
print("vertices:", len(sc.vertices), " affine dimension:", sc.affine_dimension())

facets = pt.facet_enumeration()
print("facets:", Counter(f.kind for f in facets))

# Every nontrivial facet here is a CHSH inequality between Alice and Charlie,
# lifted to one of Bob's four outcomes.
f = pt.nontrivial_facets()[0]
print("one facet touches", int(np.sum(sc.vertices @ np.array(f.coeffs) == f.bound)), "vertices")

###############################################################################
# Quantum behaviors that violate bilocality are still LHV.
for p in (1.0, 0.6, 0.2):
    b = network_behavior(NetworkConfig(p_bsm=p), fixed_settings())
    res = pt.lp_membership(b)
    worst = max(pt.exact_scores(b, pt.nontrivial_facets()))
    print(f"p={p}: B={bilocal_report(b).B:.4f}  LHV feasible={res.feasible}  max facet score={float(worst):+.4f}")

###############################################################################
# A PR box between Alice and Charlie (Bob always says phi+) is not LHV; the
# LP returns a separating inequality.
box = np.zeros((2, 2, 2, 2, 2, 2))
for x in (0, 1):
    for z in (0, 1):
        for a in (0, 1):
            box[x, z, a, 0, 0, a ^ (x & z)] = 0.5
res = pt.lp_membership(box)
print("PR box feasible:", res.feasible)
print("certificate value vs bound:", res.violated_certificate.value(box), res.violated_certificate.bound)
