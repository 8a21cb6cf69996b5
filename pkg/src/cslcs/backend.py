"""Kernel backend selection.

Imports the compiled extension when available and falls back to the pure
Python kernels otherwise. CSLCS_PURE=1 forces the fallback (used by the
benchmark and for cross-checking).
"""

import os

from . import _pure

if os.environ.get("CSLCS_PURE", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

COMPILED: bool = _impl.COMPILED
NAME: str = "compiled" if COMPILED else "pure"

lcs_dp_u8 = _impl.lcs_dp_u8
lcs_bp = _impl.lcs_bp
evolve_cells = _impl.evolve_cells
evolve_b_cells = _impl.evolve_b_cells
gamma_trials = _impl.gamma_trials
lcs_sum_exhaustive = _impl.lcs_sum_exhaustive
