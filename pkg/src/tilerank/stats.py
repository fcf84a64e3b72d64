"""Performance sampling, rank correlation tiles, and the volume under the tile.

Sampling uses NumPy's PCG64 generator seeded through SeedSequence; one
sample per row, components drawn column-by-column, so a given SampleSpec
reproduces its stream bit-for-bit.  The alpha=1 (uniform simplex) path is
built from plain uniforms via -log(1-u), which keeps the stream portable;
other concentrations rely on NumPy's gamma sampler.

VUT(P) is the mean of R_{a,b}(P) over the unit square.  It has a closed
form in four cases keyed on p_tp = p_tn and p_fn = p_fp; `vut_numeric`
provides the independent Gauss-Legendre oracle.  VUT characterizes a
performance but is not a ranking score.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .perf import Performance, TileCoord
from .tile import TileGrid, grid_coords

#: |p_tp - p_tn| (or |p_fn - p_fp|) below this routes to the equal case.
_ROUTE_TOL = 1e-12
#: below this the raw four-log formula cancels badly; use the expansion.
_TAYLOR_BAND = 1e-7


@dataclass(frozen=True)
class SampleSpec:
    """How to draw performances: size, seed, optional fixed negative prior.

    ``concentration`` is the symmetric Dirichlet parameter for unconstrained
    draws; fixed-prior draws are uniform over the prior slice (TNR and TPR
    independent uniforms) and only support concentration 1.
    """

    n: int
    seed: int
    prior_neg: float | None = None
    concentration: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.concentration <= 0:
            raise ValueError("concentration must be > 0")
        if self.prior_neg is not None:
            if not (0.0 < self.prior_neg < 1.0):
                raise ValueError("prior_neg must lie in (0, 1)")
            if self.concentration != 1.0:
                raise ValueError("fixed-prior sampling is defined for concentration 1 only")


def sample_components(spec: SampleSpec) -> np.ndarray:
    """Draw performances as an (n, 4) array of (tn, fp, fn, tp) rows."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(spec.seed)))
    if spec.prior_neg is not None:
        pn = spec.prior_neg
        pp = 1.0 - pn
        u = rng.random((spec.n, 2))
        tn = pn * u[:, 0]
        tp = pp * u[:, 1]
        return np.column_stack([tn, pn - tn, pp - tp, tp])
    if spec.concentration == 1.0:
        e = -np.log1p(-rng.random((spec.n, 4)))
    else:
        e = rng.gamma(spec.concentration, size=(spec.n, 4))
    return e / e.sum(axis=1, keepdims=True)


def sample_performances(spec: SampleSpec) -> list[Performance]:
    """Draw performances per the sampling recipe; deterministic given the seed."""
    return [Performance(*row) for row in sample_components(spec)]


def kendall_tau(xs: Sequence[float | None], ys: Sequence[float | None]) -> float | None:
    """Tie-adjusted Kendall tau-b, dropping pairs with an undefined side.

    None when fewer than 2 usable pairs remain or a side is constant.
    """
    x = np.array([np.nan if v is None else v for v in xs], dtype=float)
    y = np.array([np.nan if v is None else v for v in ys], dtype=float)
    tau = _kernels.kendall_tau_b(x, y)
    return None if math.isnan(tau) else tau


TargetScore = Callable[[Performance], "float | None"]


def _target_values(
    target: TargetScore | TileCoord, comps: np.ndarray
) -> np.ndarray:
    if isinstance(target, TileCoord):
        return _kernels.score_samples(
            target.a, target.b, comps[:, 0], comps[:, 1], comps[:, 2], comps[:, 3]
        )
    vals = np.empty(comps.shape[0])
    for k, row in enumerate(comps):
        v = target(Performance(*row))
        vals[k] = np.nan if v is None else v
    return vals


def correlation_tile(
    target: TargetScore | TileCoord,
    spec: SampleSpec,
    resolution: int = 51,
    *,
    a_coords: np.ndarray | None = None,
    b_coords: np.ndarray | None = None,
    target_name: str = "",
) -> TileGrid:
    """Kendall tau between a target score and every canonical score cell.

    The target is a callable on performances or a tile coordinate.  Pairs
    with an undefined side are dropped per cell; cells left with fewer than
    2 pairs are undefined.  Explicit coordinate arrays override resolution.
    """
    comps = sample_components(spec)
    xs = _target_values(target, comps)
    a = grid_coords(resolution) if a_coords is None else np.asarray(a_coords, dtype=float)
    b = grid_coords(resolution) if b_coords is None else np.asarray(b_coords, dtype=float)
    values = _kernels.tau_grid(
        xs, comps[:, 0], comps[:, 1], comps[:, 2], comps[:, 3], a, b
    )
    meta = {
        "kind": "kendall_tau",
        "target": target_name
        or (f"R({target.a},{target.b})" if isinstance(target, TileCoord) else "callable"),
        "n": spec.n,
        "seed": spec.seed,
        "concentration": spec.concentration,
        "prior_neg": spec.prior_neg,
        "kernel": _kernels.active_impl(),
    }
    return TileGrid(a, b, values, meta)


def _xlog(coef: float, arg: float) -> float:
    """coef * ln(arg) with the 0 * ln(0) = 0 convention of the closed form."""
    if coef == 0.0:
        return 0.0
    return coef * math.log(arg)


def _xlog1p_ratio(coef: float, num: float, den: float) -> float:
    """coef * log1p(num/den), with coef = 0 short-circuiting den = 0."""
    if coef == 0.0:
        return 0.0
    return coef * math.log1p(num / den)


def vut(p: Performance) -> float:
    """Volume under the tile: the mean of R_{a,b}(P) over the unit square.

    Closed form in four cases split on p_tp = p_tn and p_fn = p_fp (routing
    tolerance 1e-12).  Inside a 1e-7 band around the split the four-log
    expression cancels catastrophically, so a first-order expansion around
    the neighboring case is used instead.
    """
    a, b, c, d = p.tn, p.fp, p.fn, p.tp
    dd = d - a  # p_tp - p_tn
    cc = c - b  # p_fn - p_fp
    if abs(dd) <= _ROUTE_TOL and abs(cc) <= _ROUTE_TOL:
        return a + d  # constant tile: every canonical score equals A
    if abs(dd) <= _ROUTE_TOL:
        return _case2(a, b, c, cc)
    if abs(cc) <= _ROUTE_TOL:
        return _case3(a, b, d, dd)
    if abs(dd) < _TAYLOR_BAND:
        base = _case2(a, b, c, cc)
        lg = math.log((c + a) / (b + a)) if a + c > 0 and a + b > 0 else 0.0
        corr = dd * (lg - a * cc / ((c + a) * (b + a))) / (2.0 * cc) if a + c > 0 and a + b > 0 else 0.0
        return base + corr
    if abs(cc) < _TAYLOR_BAND:
        base = _case3(a, b, d, dd)
        lg = math.log((b + d) / (a + b)) if b + d > 0 and a + b > 0 else 0.0
        corr = -cc * (lg - b * dd / ((b + d) * (a + b))) / (2.0 * dd) if b + d > 0 and a + b > 0 else 0.0
        return base + corr
    # general case: regrouped into log1p ratios so each bracket scales with
    # its small factor instead of cancelling between O(1) logarithms
    n = (
        _xlog1p_ratio(c * c, dd, a + c)
        - _xlog1p_ratio(b * b, dd, a + b)
        + _xlog1p_ratio(a * a, cc, a + b)
        - _xlog1p_ratio(d * d, cc, b + d)
    )
    return 0.5 - n / (2.0 * cc * dd)


def _case2(a: float, b: float, c: float, cc: float) -> float:
    # p_tp = p_tn: the tile is constant in a; integrate over b only
    if a == 0.0:
        return 0.0
    return a * (math.log(a + c) - math.log(a + b)) / cc


def _case3(a: float, b: float, d: float, dd: float) -> float:
    # p_fn = p_fp: constant in b; complement of the dual case-2 integral
    if b == 0.0:
        return 1.0
    return 1.0 - b * (math.log(b + d) - math.log(a + b)) / dd


def vut_numeric(p: Performance, nodes_per_axis: int = 256) -> float:
    """Tensor Gauss-Legendre quadrature of R_{a,b}(P); oracle for `vut`."""
    if nodes_per_axis < 8:
        raise ValueError("nodes_per_axis must be >= 8")
    t, w = np.polynomial.legendre.leggauss(nodes_per_axis)
    x = 0.5 * (t + 1.0)
    w = 0.5 * w
    grid = _kernels.value_grid(p.tn, p.fp, p.fn, p.tp, x, x)
    return float(w @ grid @ w)
