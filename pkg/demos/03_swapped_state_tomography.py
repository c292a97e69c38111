"""
CHSH of the swapped state versus bilocality
===========================================

Conditioning on Bob's psi- outcome leaves Alice and Charlie with a two-qubit
state. Its best CHSH value follows from the Horodecki criterion. We
reconstruct the state from simulated Pauli tomography and compare it with
the network's B.
"""

import numpy as np

from bilocal_net import NetworkConfig, horodecki_max_chsh, ppt_negativity, swapped_state
from bilocal_net import tomography as tomo
from bilocal_net.harness import fig4b_point
from bilocal_net.quantum import fidelity

rho, prob = swapped_state(NetworkConfig(), "psi-")
print("P(psi-) =", prob)
for shots in (10**3, 10**4, 10**5):
    est = tomo.reconstruct(tomo.simulate_tomography(rho, shots, seed=1))
    print(f"shots={shots:>6}  fidelity={fidelity(est, rho):.5f}  max CHSH={horodecki_max_chsh(est):.4f}")

###############################################################################
# With white-noise sources the chain can violate bilocality while the swapped
# state is useless for CHSH.
for p in np.linspace(0.5, 1, 6):
    rec = fig4b_point(NetworkConfig(v1=0.8, v2=0.8, p_bsm=p), shots=20_000, seed=3)
    print(f"p={p:.1f}  B={rec['B']:.3f}  max CHSH={rec['chsh_max']:.3f}  "
          f"negativity={rec['negativity']:.3f}  region={rec['region']}")

# With perfect sources the dephased Bell measurement always leaves a CHSH-violating state.
for p in (0.2, 0.5):
    rho, _ = swapped_state(NetworkConfig(p_bsm=p), "psi-")
    print(f"ideal sources p={p}: max CHSH={horodecki_max_chsh(rho):.4f}, negativity={ppt_negativity(rho):.3f}")
