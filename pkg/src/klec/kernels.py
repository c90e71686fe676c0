"""Kernel backend selection: compiled Cython core with a numpy fallback.

Set KLEC_KERNELS=python (or =cython) to force a backend; the default picks
the compiled extension when it was built and silently falls back otherwise.
``benchmarks/bench_kernels.py`` compares the two.
"""

import os

import numpy as np

_requested = os.environ.get("KLEC_KERNELS", "auto")

if _requested not in ("auto", "cython", "python"):
    raise ValueError(f"KLEC_KERNELS must be auto, cython or python, not {_requested!r}")

if _requested == "python":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl
    except ImportError:
        if _requested == "cython":
            raise
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
power_sum_over_w = _impl.power_sum_over_w
gauss_histogram = _impl.gauss_histogram
kloosterman_histogram = _impl.kloosterman_histogram


def curve_lambda_sum(w_log, gamma_log, M, zech):
    """sum over x != 0 of lambda(x^3 + w x^2 + gamma x) for a single w."""
    return power_sum_over_w(
        np.array([w_log], dtype=np.int64),
        np.array([1], dtype=np.int64),
        gamma_log,
        M,
        zech,
    )
