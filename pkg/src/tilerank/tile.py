"""Tile rasterization, score placements, gamma curves and prior-grid overlays.

The tile maps each coordinate (a, b) of the unit square to the canonical
ranking score R_{a,b}.  Corners are TNR (0,0), TPR (1,1), NPV (0,1) and
PPV (1,0); accuracy sits at the center.  This module rasterizes value
tiles and the no-skill ceiling tile, places named scores and orderings,
samples the gamma_pi / gamma_tau curves, builds the deformed grid overlay
for shifted priors, and applies the chance-correction collapse map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .catalog import fbeta_b
from .perf import PerfError, Performance, TileCoord
from .ops import prior_shift_map


def grid_coords(resolution: int) -> np.ndarray:
    """Inclusive uniform grid over [0, 1]; endpoints carry the named corners."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    return np.linspace(0.0, 1.0, resolution)


@dataclass(frozen=True, eq=False)
class TileGrid:
    """Raster over (a, b): values[i, j] = cell value at (a[i], b[j]).

    NaN encodes an undefined cell; `meta` records how the grid was made
    (kind tag, priors, seed, score name, ...).
    """

    a: np.ndarray
    b: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.values.shape != (self.a.size, self.b.size):
            raise ValueError("values shape must be (len(a), len(b))")
        for coords in (self.a, self.b):
            if np.any(coords < 0) or np.any(coords > 1) or np.any(np.diff(coords) <= 0):
                raise ValueError("grid coordinates must be strictly increasing within [0, 1]")

    @property
    def n_a(self) -> int:
        return self.a.size

    @property
    def n_b(self) -> int:
        return self.b.size

    def value_at(self, i: int, j: int) -> float | None:
        v = self.values[i, j]
        return None if math.isnan(v) else float(v)


def value_tile(p: Performance, resolution: int = 101) -> TileGrid:
    """Rasterize R_{a,b}(P) over an inclusive resolution x resolution grid."""
    coords = grid_coords(resolution)
    values = _kernels.value_grid(p.tn, p.fp, p.fn, p.tp, coords, coords)
    meta = {"kind": "value", "performance": list(p.as_tuple()), "priors": list(p.priors)}
    return TileGrid(coords, coords, values, meta)


@dataclass(frozen=True)
class Placement:
    """Location of a score or ordering on the tile.

    ``dual=True`` marks orderings realized in reverse (minimizing the named
    score matches maximizing the canonical score at the spot).
    """

    name: str
    kind: str  # "point" | "segment"
    coords: tuple
    dual: bool = False
    prior_dependent: bool = False


_FIXED_POINTS: dict[str, tuple[float, float]] = {
    "NPV": (0.0, 1.0),
    "TPR": (1.0, 1.0),
    "TNR": (0.0, 0.0),
    "PPV": (1.0, 0.0),
    "A": (0.5, 0.5),
    "J-": (0.0, 0.5),
    "J+": (1.0, 0.5),
    "F1": (1.0, 0.5),
    "AnoFP": (0.5, 1.0),
    "AnoFN": (0.5, 0.0),
}

# prior-dependent orderings: name -> (position fn, dual)
_PRIOR_POINTS = {
    "PTN": (lambda pn, pp: (0.0, 0.0), False),
    "PFP": (lambda pn, pp: (0.0, 0.0), True),
    "PTP": (lambda pn, pp: (1.0, 1.0), False),
    "PFN": (lambda pn, pp: (1.0, 1.0), True),
    "SNPV": (lambda pn, pp: (0.0, 1.0), False),
    "NLR": (lambda pn, pp: (0.0, 1.0), True),
    "SPPV": (lambda pn, pp: (1.0, 0.0), False),
    "PLR": (lambda pn, pp: (1.0, 0.0), False),
    "BA": (lambda pn, pp: (pn, pn), False),
    "JY": (lambda pn, pp: (pn, pn), False),
    "detC": (lambda pn, pp: (pn, pn), False),
    "kappa": (lambda pn, pp: (pn * pn / (pn * pn + pp * pp), 0.5), False),
}

PLACEABLE = tuple(sorted(_FIXED_POINTS) + sorted(_PRIOR_POINTS) + ["Fbeta", "WA"])


def _check_prior_neg(prior_neg: float) -> tuple[float, float]:
    if not (0.0 < prior_neg < 1.0):
        raise PerfError(f"prior_neg must lie in (0, 1), got {prior_neg}")
    return prior_neg, 1.0 - prior_neg


def placement_of(
    name: str,
    prior_neg: float | None = None,
    *,
    weights: tuple[float, float] | None = None,
    beta: float | None = None,
) -> Placement:
    """Place a named score or ordering on the tile.

    Prior-dependent names (WA, BA, JY, kappa, the unconditional rates, the
    standardized values and likelihood ratios, detC) require ``prior_neg``.
    """
    if name in _FIXED_POINTS:
        return Placement(name, "point", _FIXED_POINTS[name])
    if name == "Fbeta":
        return Placement(name, "point", (1.0, fbeta_b(beta if beta is not None else 1.0)))
    if name == "WA":
        if prior_neg is None:
            raise PerfError("WA placement requires priors")
        pn, pp = _check_prior_neg(prior_neg)
        lam_neg, lam_pos = weights if weights is not None else (0.5, 0.5)
        if lam_neg < 0 or lam_pos < 0 or lam_neg + lam_pos <= 0:
            raise PerfError("WA weights must be non-negative and not both zero")
        w = lam_pos * pn / (lam_pos * pn + lam_neg * pp)
        return Placement(name, "point", (w, w), prior_dependent=True)
    if name in _PRIOR_POINTS:
        if prior_neg is None:
            raise PerfError(f"{name} placement requires priors")
        pn, pp = _check_prior_neg(prior_neg)
        pos_fn, dual = _PRIOR_POINTS[name]
        return Placement(name, "point", pos_fn(pn, pp), dual=dual, prior_dependent=True)
    raise PerfError(f"no placement known for {name!r}")


def standard_placements(prior_neg: float | None = None) -> list[Placement]:
    """All placeable names; prior-dependent ones only when priors are given."""
    out = [placement_of(n) for n in sorted(_FIXED_POINTS)]
    out.append(placement_of("Fbeta", beta=2.0))
    if prior_neg is not None:
        out.extend(placement_of(n, prior_neg) for n in sorted(_PRIOR_POINTS))
        out.append(placement_of("WA", prior_neg, weights=(0.25, 0.75)))
    return out


@dataclass(frozen=True, eq=False)
class Curve:
    """Sampled tile curve with its implicit-equation tag and parameter."""

    kind: str  # "gamma_pi" | "gamma_tau"
    param: float
    points: np.ndarray  # (n, 2)


def gamma_residual(kind: str, param: float, a, b):
    """Signed residual of the implicit curve equation (0 on the curve)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if kind == "gamma_pi":
        pn, pp = param, 1.0 - param
        return pp * pp * a * b - pn * pn * (1.0 - a) * (1.0 - b)
    if kind == "gamma_tau":
        tn_, tp_ = param, 1.0 - param
        return tp_ * tp_ * a * (1.0 - b) - tn_ * tn_ * (1.0 - a) * b
    raise ValueError(f"unknown curve kind: {kind!r}")


def gamma_curve(kind: str, param: float, n_samples: int = 257) -> Curve:
    """Sample a no-skill-equalizing curve.

    gamma_pi (fixed priors, param = prior_neg) runs from (0,1) to (1,0);
    gamma_tau (fixed prediction rates, param = rate_neg) from (0,0) to (1,1).
    Both are graphs b(a); sampling is cosine-spaced, denser near the
    endpoints where skewed parameters sharpen the curve.
    """
    if not (0.0 < param < 1.0):
        raise PerfError(f"curve parameter must lie in (0, 1), got {param}")
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    k = np.arange(n_samples)
    a = 0.5 * (1.0 - np.cos(np.pi * k / (n_samples - 1)))
    a[0], a[-1] = 0.0, 1.0
    if kind == "gamma_pi":
        pn, pp = param, 1.0 - param
        b = pn * pn * (1.0 - a) / (pp * pp * a + pn * pn * (1.0 - a))
    elif kind == "gamma_tau":
        tn_, tp_ = param, 1.0 - param
        b = tp_ * tp_ * a / (tn_ * tn_ * (1.0 - a) + tp_ * tp_ * a)
    else:
        raise ValueError(f"unknown curve kind: {kind!r}")
    return Curve(kind, param, np.column_stack([a, b]))


@dataclass(frozen=True)
class GridLine:
    """One overlay line: the pre-shift coordinate and where it lands."""

    axis: str  # "a" (vertical line) | "b" (horizontal line)
    source: float
    position: float


def prior_grid_overlay(target_priors: tuple[float, float], step: float = 0.1) -> list[GridLine]:
    """Deformed uniform grid showing a shift from balanced priors.

    Lines at multiples of ``step`` in the balanced tile are drawn at their
    shifted positions f^{-1}(x); endpoints stay fixed.
    """
    if not (0.0 < step <= 1.0):
        raise ValueError("step must lie in (0, 1]")
    _, inv = prior_shift_map((0.5, 0.5), target_priors)
    n = round(1.0 / step)
    xs = [min(k * step, 1.0) for k in range(n)] + [1.0]
    return [GridLine(axis, x, inv(x)) for axis in ("a", "b") for x in xs]


def no_skill_components(priors: tuple[float, float], tau_pos) -> tuple:
    """Component arrays of the no-skill family indexed by the positive rate."""
    pn, pp = priors
    tau_pos = np.asarray(tau_pos, dtype=float)
    tau_neg = 1.0 - tau_pos
    return pn * tau_neg, pn * tau_pos, pp * tau_neg, pp * tau_pos


def no_skill_value_tile(
    priors: tuple[float, float], resolution: int = 101, n_tau: int = 1025
) -> TileGrid:
    """Best value a no-skill classifier with the given priors can reach per cell.

    The maximum is taken over the one-parameter family of product measures,
    sampled at n_tau prediction rates including both constant classifiers.
    The winner flips from all-negative to all-positive across gamma_pi.
    """
    pn, pp = priors
    _check_prior_neg(pn)
    if abs(pn + pp - 1.0) > 1e-9:
        raise PerfError("priors must sum to 1")
    coords = grid_coords(resolution)
    tau = np.linspace(0.0, 1.0, n_tau)
    tn, fp, fn, tp = no_skill_components(priors, tau)
    values = np.full((coords.size, coords.size), np.nan)
    for i, a in enumerate(coords):
        num = (1.0 - a) * tn + a * tp  # (n_tau,)
        den = num[None, :] + np.outer(1.0 - coords, fp) + np.outer(coords, fn)
        with np.errstate(divide="ignore", invalid="ignore"):
            scores = np.where(den == 0.0, np.nan, num[None, :] / den)
        row_ok = ~np.all(np.isnan(scores), axis=1)
        values[i, row_ok] = np.nanmax(scores[row_ok], axis=1)
    meta = {"kind": "no_skill", "priors": [pn, pp], "n_tau": n_tau}
    return TileGrid(coords, coords, values, meta)


def no_skill_argmax_grid(priors: tuple[float, float], resolution: int = 101) -> np.ndarray:
    """Which constant classifier wins per cell: 0 all-negative, 1 all-positive.

    -1 marks ties and cells where a side is undefined.
    """
    coords = grid_coords(resolution)
    pn, pp = priors
    v_neg = _kernels.value_grid(pn, 0.0, pp, 0.0, coords, coords)
    v_pos = _kernels.value_grid(0.0, pn, 0.0, pp, coords, coords)
    out = np.full(v_neg.shape, -1, dtype=np.int8)
    both = np.isfinite(v_neg) & np.isfinite(v_pos)
    out[both & (v_neg > v_pos)] = 0
    out[both & (v_pos > v_neg)] = 1
    return out


def cohen_collapse(coord: TileCoord, priors: tuple[float, float]) -> TileCoord:
    """Where chance-correcting R_{a,b} lands: the point of gamma_pi at height b.

    Cohen-style correction of the score at (a, b) is perfectly rank-correlated
    with the canonical score at (a', b), a' = pn^2(1-b) / (pn^2(1-b) + pp^2 b);
    the whole horizontal line collapses onto one point of the curve.
    """
    pn, pp = priors
    _check_prior_neg(pn)
    b = coord.b
    a_new = pn * pn * (1.0 - b) / (pn * pn * (1.0 - b) + pp * pp * b)
    return TileCoord(a_new, b)
