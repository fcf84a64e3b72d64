"""NumPy/SciPy implementation of the hot kernels.

Selected at import time when the compiled extension is unavailable (or
disabled).  Semantics are identical to `_native`; only speed differs.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import kendalltau as _scipy_kendalltau

IMPL = "fallback"


def kendall_tau_b(x: np.ndarray, y: np.ndarray) -> float:
    """Tie-adjusted Kendall tau-b of two equal-length finite arrays.

    NaN when fewer than 2 pairs or one variable is constant.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if x.size != y.size:
        raise ValueError("x and y must have equal length")
    if x.size < 2:
        return float("nan")
    if np.all(x == x[0]) or np.all(y == y[0]):
        return float("nan")
    return float(_scipy_kendalltau(x, y, variant="b").statistic)


def tau_grid(
    target: np.ndarray,
    tn: np.ndarray,
    fp: np.ndarray,
    fn: np.ndarray,
    tp: np.ndarray,
    avals: np.ndarray,
    bvals: np.ndarray,
) -> np.ndarray:
    """Kendall tau-b between a target score and R_{a,b} per grid cell.

    ``target`` may hold NaN for undefined values; pairs with an undefined
    side are dropped cell by cell.  Cells with < 2 usable pairs are NaN.
    """
    target = np.asarray(target, dtype=np.float64)
    out = np.full((avals.size, bvals.size), np.nan)
    t_ok = np.isfinite(target)
    for i, a in enumerate(avals):
        num = (1.0 - a) * tn + a * tp
        for j, b in enumerate(bvals):
            den = num + (1.0 - b) * fp + b * fn
            ok = t_ok & (den != 0.0)
            if int(ok.sum()) < 2:
                continue
            out[i, j] = kendall_tau_b(target[ok], num[ok] / den[ok])
    return out
