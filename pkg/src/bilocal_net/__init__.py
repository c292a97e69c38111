"""Simulation and nonlocality analysis of a two-source, three-node quantum network."""
from .metrics import (
    BilocalReport,
    bilocal_report,
    chsh_value,
    correlators,
    horodecki_max_chsh,
    ppt_negativity,
)
from .network import (
    BELL_BITS,
    NetworkConfig,
    Settings,
    bsm_povm,
    fixed_settings,
    network_behavior,
    sample_counts,
    source_state,
    swapped_state,
)
from .optimize import OptimizationResult, optimize_settings

__version__ = "0.1.0"
