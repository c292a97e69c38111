"""
Re-optimizing the measurement angles
====================================

The fixed angles are optimal only for a perfect Bell measurement. Letting
Alice and Charlie rotate their analyzers recovers a violation at every p > 0.
"""

import numpy as np

from bilocal_net import NetworkConfig, fixed_settings, optimize_settings
from bilocal_net.optimize import settings_B

for p in (1.0, 0.5, 0.2, 0.1, 0.05, 0.0):
    cfg = NetworkConfig(p_bsm=p)
    res = optimize_settings(cfg, restarts=3, seed=0)
    print(f"p={p:4.2f}  fixed B={settings_B(cfg, fixed_settings()):.4f}  optimized B={res.B:.4f}  "
          f"sqrt(1+p)={np.sqrt(1 + p):.4f}  angles={np.round(res.settings.as_array(), 3)}")
