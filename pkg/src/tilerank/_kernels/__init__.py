"""Hot-kernel dispatch: compiled extension when built, NumPy/SciPy otherwise.

Environment knobs:
  TILERANK_DISABLE_NATIVE=1  force the fallback implementation
  TILE_RANK_THREADS=N        worker threads for grid kernels (default 1)
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _fallback

if os.environ.get("TILERANK_DISABLE_NATIVE", "") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fallback

IMPL = _impl.IMPL


def active_impl() -> str:
    """Name of the kernel implementation in use ("native" or "fallback")."""
    return IMPL


def _n_threads() -> int:
    raw = os.environ.get("TILE_RANK_THREADS", "").strip()
    if not raw:
        return 1
    return max(1, int(raw))


def kendall_tau_b(x, y) -> float:
    """Kendall tau-b, dropping pairs where either side is NaN.

    NaN when fewer than 2 usable pairs remain or a side is constant.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError("x and y must have equal length")
    ok = np.isfinite(x) & np.isfinite(y)
    if int(ok.sum()) < 2:
        return float("nan")
    return _impl.kendall_tau_b(x[ok], y[ok])


def tau_grid(target, tn, fp, fn, tp, avals, bvals) -> np.ndarray:
    """Per-cell Kendall tau-b between a target score and R_{a,b}.

    Rows (a values) are split across TILE_RANK_THREADS workers; cells are
    independent, so the result does not depend on the schedule.
    """
    avals = np.ascontiguousarray(avals, dtype=np.float64)
    workers = min(_n_threads(), max(1, avals.size))
    if workers == 1:
        return _impl.tau_grid(target, tn, fp, fn, tp, avals, bvals)
    chunks = np.array_split(avals, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(
            pool.map(lambda ch: _impl.tau_grid(target, tn, fp, fn, tp, ch, bvals), chunks)
        )
    return np.vstack(parts)


def value_grid(tn: float, fp: float, fn: float, tp: float, avals, bvals) -> np.ndarray:
    """R_{a,b} of one performance over a coordinate grid (NaN = undefined)."""
    a = np.asarray(avals, dtype=np.float64)[:, None]
    b = np.asarray(bvals, dtype=np.float64)[None, :]
    num = (1.0 - a) * tn + a * tp
    den = num + (1.0 - b) * fp + b * fn
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den == 0.0, np.nan, num / den)
    return out


def score_samples(a: float, b: float, tn, fp, fn, tp) -> np.ndarray:
    """R_{a,b} of many performances given as component arrays (NaN = undefined)."""
    num = (1.0 - a) * np.asarray(tn, dtype=np.float64) + a * np.asarray(tp, dtype=np.float64)
    den = num + (1.0 - b) * np.asarray(fp, dtype=np.float64) + b * np.asarray(fn, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(den == 0.0, np.nan, num / den)
