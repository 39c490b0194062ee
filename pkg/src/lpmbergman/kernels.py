"""Backend selection for the hot loops.

The compiled extension is used when it imports; set ``LPMBERGMAN_PURE=1``
to force the pure-Python versions.
"""

import os

BACKEND = "python"

if os.environ.get("LPMBERGMAN_PURE", "") not in ("", "0"):
    from lpmbergman._kernels_py import *  # noqa: F401,F403
else:
    try:
        from lpmbergman._kernels_c import *  # noqa: F401,F403
        BACKEND = "cython"
    except ImportError:
        from lpmbergman._kernels_py import *  # noqa: F401,F403

__all__ = [
    "BACKEND",
    "band_bases",
    "band_count",
    "band_rank",
    "closure_mask",
    "exchange_components",
    "max_meet",
    "mobius_top",
    "pack",
    "popcount",
    "satisfied",
    "tight",
    "union_meet",
]
