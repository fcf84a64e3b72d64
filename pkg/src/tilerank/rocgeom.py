"""Iso-performance geometry of canonical ranking scores in ROC space.

For fixed priors, ROC (fpr, tpr) is a linear projection of the performance
simplex, so the locus of performances sharing a score value is a line.
All iso-lines of one score meet in a single pencil vertex, found as the
homogeneous intersection of the value-0 line (through (1, 0)) and the
value-1 line (through (0, 1)).  The vertex sits in the bottom-left gray
zone when a > b, in the upper-right when a < b, and at infinity when
a = b (parallel pencil: TNR, accuracy, TPR, ...).

The score varies affinely along any line of slope -prior_neg/prior_pos:
the denominator of R is constant in that direction, so the variation rate
is exact, not just an empirical fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .perf import PerfError, Performance, TileCoord, canonical_score


@dataclass(frozen=True)
class RocPoint:
    fpr: float
    tpr: float

    def __post_init__(self):
        if not (0.0 <= self.fpr <= 1.0 and 0.0 <= self.tpr <= 1.0):
            raise PerfError(f"ROC point outside unit square: ({self.fpr}, {self.tpr})")


@dataclass(frozen=True)
class HomLine:
    """Line u*fpr + v*tpr + w = 0, scaled to u^2 + v^2 = 1.

    The sign is fixed so the residual is positive where the score exceeds
    the line's value (the better side).
    """

    u: float
    v: float
    w: float
    value: float

    def residual(self, pt: RocPoint) -> float:
        return self.u * pt.fpr + self.v * pt.tpr + self.w


@dataclass(frozen=True)
class HomPoint:
    """Homogeneous point (x : y : h); h = 0 encodes a point at infinity."""

    x: float
    y: float
    h: float

    def __post_init__(self):
        if self.x == 0.0 and self.y == 0.0 and self.h == 0.0:
            raise PerfError("homogeneous point needs a nonzero coordinate")

    @property
    def at_infinity(self) -> bool:
        return self.h == 0.0

    def to_cartesian(self) -> tuple[float, float]:
        if self.at_infinity:
            raise PerfError("point at infinity has no cartesian coordinates")
        return (self.x / self.h, self.y / self.h)


def _check_priors(priors: tuple[float, float]) -> tuple[float, float]:
    pn, pp = priors
    if abs(pn + pp - 1.0) > 1e-9 or not (0.0 < pn < 1.0):
        raise PerfError(f"priors must lie in (0, 1) and sum to 1, got {priors}")
    return pn, pp


def performance_from_roc(pt: RocPoint, priors: tuple[float, float]) -> Performance:
    """Rebuild the performance with the given priors and conditional rates."""
    pn, pp = _check_priors(priors)
    return Performance(pn * (1.0 - pt.fpr), pn * pt.fpr, pp * (1.0 - pt.tpr), pp * pt.tpr)


def score_from_roc(
    pt: RocPoint, priors: tuple[float, float], coord: TileCoord
) -> float | None:
    """R_{a,b} evaluated at an ROC point under fixed priors."""
    return canonical_score(coord.a, coord.b, performance_from_roc(pt, priors))


def iso_line(value: float, coord: TileCoord, priors: tuple[float, float]) -> HomLine:
    """The ROC line along which the canonical score equals ``value``.

    Derived from numerator - value * denominator = 0, which is affine in
    (fpr, tpr); the positive-residual side holds the better performances.
    """
    pn, pp = _check_priors(priors)
    if not (0.0 <= value <= 1.0):
        raise PerfError(f"iso value must lie in [0, 1], got {value}")
    a, b = coord.a, coord.b
    u = -((1.0 - value) * (1.0 - a) + value * (1.0 - b)) * pn
    v = ((1.0 - value) * a + value * b) * pp
    w = (1.0 - value) * (1.0 - a) * pn - value * b * pp
    norm = math.hypot(u, v)
    if norm == 0.0:
        raise PerfError("degenerate iso-line: score is constant on ROC")
    return HomLine(u / norm, v / norm, w / norm, value)


def pencil_vertex(coord: TileCoord, priors: tuple[float, float]) -> HomPoint:
    """Common point of all iso-lines of R_{a,b} (at infinity iff a = b).

    Closed form of the value-0/value-1 line intersection; the homogeneous
    coordinate is pn*pp*(b - a) exactly, so the parallel pencil is exact.
    """
    pn, pp = _check_priors(priors)
    a, b = coord.a, coord.b
    x = b * pp * (a * pp + (1.0 - a) * pn)
    y = (1.0 - a) * pn * ((1.0 - b) * pn + b * pp)
    h = pn * pp * (b - a)
    if x == 0.0 and y == 0.0 and h == 0.0:  # unreachable for valid inputs
        raise PerfError("degenerate pencil")
    return HomPoint(x, y, h)


def vertex_zone(coord: TileCoord, priors: tuple[float, float]) -> str:
    """"bottom_left", "upper_right", or "infinity", decided by sign(a - b)."""
    vertex = pencil_vertex(coord, priors)
    if vertex.at_infinity:
        return "infinity"
    return "upper_right" if vertex.h > 0 else "bottom_left"


@dataclass(frozen=True)
class ValueAxis:
    """Affine variation of the score along the slope -pn/pp direction."""

    direction: tuple[float, float]  # unit vector of slope -pn/pp
    slope: float
    value_at_anchor: float | None
    rate: float | None  # d(score)/dt per unit step along direction


def linear_value_axis(
    coord: TileCoord, priors: tuple[float, float], anchor: RocPoint
) -> ValueAxis:
    """Score variation along the purple direction of slope -pn/pp.

    The score's denominator is constant along this direction, so the value
    varies affinely; the rate is returned in closed form (None when the
    score is undefined on the whole line).
    """
    pn, pp = _check_priors(priors)
    norm = math.hypot(pp, pn)
    direction = (pp / norm, -pn / norm)
    p = performance_from_roc(anchor, priors)
    a, b = coord.a, coord.b
    den = (
        (1.0 - a) * p.tn + (1.0 - b) * p.fp + b * p.fn + a * p.tp
    )
    value = score_from_roc(anchor, priors, coord)
    rate = None if den == 0.0 else -pn * pp / (norm * den)
    return ValueAxis(direction, -pn / pp, value, rate)
