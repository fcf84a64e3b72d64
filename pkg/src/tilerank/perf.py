"""Core data model for two-class crisp classification performances.

A performance is a probability measure over the four outcomes
(tn, fp, fn, tp).  Ranking scores weight the outcomes by a non-negative
importance and take the satisfied fraction:

    R_I(P) = (i_tn*p_tn + i_tp*p_tp) /
             (i_tn*p_tn + i_fp*p_fp + i_fn*p_fn + i_tp*p_tp)

Every importance reduces, without changing the induced ordering, to a
canonical coordinate (a, b) in the unit square with weights
(1-a, 1-b, b, a); `canonical_score` evaluates that normal form directly.

Scores may be undefined when their denominator vanishes.  Undefined is a
first-class result, represented as ``None`` in scalar APIs (and NaN inside
numeric grids), never as an exception.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

OUTCOMES = ("tn", "fp", "fn", "tp")

#: The four singleton events plus the full sample space, as frozensets.
OMEGA = frozenset(OUTCOMES)

# Inputs whose total is within this of 1 are taken verbatim (probabilities);
# anything else is treated as counts and divided by the total.
_AS_IS_TOL = 1e-12


class PerfError(ValueError):
    """Invalid performance, importance, or event construction."""


def event(*outcomes: str) -> frozenset[str]:
    """Build an event (a subset of the four outcomes) with validation."""
    ev = frozenset(outcomes)
    bad = ev - OMEGA
    if bad:
        raise PerfError(f"unknown outcomes: {sorted(bad)}")
    return ev


@dataclass(frozen=True)
class Performance:
    """Probability measure over (tn, fp, fn, tp); components sum to 1.

    Accepts either probabilities (sum within 1e-12 of 1, kept verbatim) or
    non-negative counts (normalized by their total).
    """

    tn: float
    fp: float
    fn: float
    tp: float

    def __post_init__(self):
        comps = (self.tn, self.fp, self.fn, self.tp)
        for name, v in zip(OUTCOMES, comps):
            if not math.isfinite(v) or v < 0:
                raise PerfError(f"component {name} must be finite and >= 0, got {v}")
        total = self.tn + self.fp + self.fn + self.tp
        if total <= 0:
            raise PerfError("empty confusion matrix")
        if abs(total - 1.0) > _AS_IS_TOL:
            object.__setattr__(self, "tn", self.tn / total)
            object.__setattr__(self, "fp", self.fp / total)
            object.__setattr__(self, "fn", self.fn / total)
            object.__setattr__(self, "tp", self.tp / total)

    @classmethod
    def from_counts(cls, tn: float, fp: float, fn: float, tp: float) -> "Performance":
        """Normalize a confusion matrix of non-negative counts."""
        return cls(tn, fp, fn, tp)

    def probability(self, ev: frozenset[str]) -> float:
        """P(E) for an event E."""
        bad = ev - OMEGA
        if bad:
            raise PerfError(f"unknown outcomes: {sorted(bad)}")
        return sum(getattr(self, o) for o in ev)

    @property
    def prior_neg(self) -> float:
        return self.tn + self.fp

    @property
    def prior_pos(self) -> float:
        return self.fn + self.tp

    @property
    def rate_neg(self) -> float:
        return self.tn + self.fn

    @property
    def rate_pos(self) -> float:
        return self.fp + self.tp

    @property
    def priors(self) -> tuple[float, float]:
        """(pi_neg, pi_pos) class priors."""
        return (self.prior_neg, self.prior_pos)

    @property
    def rates(self) -> tuple[float, float]:
        """(tau_neg, tau_pos) prediction rates."""
        return (self.rate_neg, self.rate_pos)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.tn, self.fp, self.fn, self.tp)


@dataclass(frozen=True)
class Importance:
    """Non-negative outcome weights defining a ranking score.

    Requires i_tn + i_tp > 0 and i_fp + i_fn > 0 so that neither the
    satisfying nor the unsatisfying side is weightless.
    """

    i_tn: float
    i_fp: float
    i_fn: float
    i_tp: float

    def __post_init__(self):
        for name, v in zip(("i_tn", "i_fp", "i_fn", "i_tp"), self.as_tuple()):
            if not math.isfinite(v) or v < 0:
                raise PerfError(f"{name} must be finite and >= 0, got {v}")
        if self.i_tn + self.i_tp <= 0:
            raise PerfError("importance needs i_tn + i_tp > 0")
        if self.i_fp + self.i_fn <= 0:
            raise PerfError("importance needs i_fp + i_fn > 0")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.i_tn, self.i_fp, self.i_fn, self.i_tp)


@dataclass(frozen=True)
class TileCoord:
    """Canonical importance coordinate: a trades tp vs tn, b trades fn vs fp."""

    a: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.a <= 1.0 and 0.0 <= self.b <= 1.0):
            raise PerfError(f"tile coordinate outside unit square: ({self.a}, {self.b})")

    def importance(self) -> Importance:
        return Importance(1.0 - self.a, 1.0 - self.b, self.b, self.a)


class Ordering(enum.Enum):
    WORSE = -1
    EQUIVALENT = 0
    BETTER = 1
    INCOMPARABLE = 2


def performance_from_counts(tn: float, fp: float, fn: float, tp: float) -> Performance:
    return Performance.from_counts(tn, fp, fn, tp)


def conditional_probabilistic_score(
    e1: frozenset[str], e2: frozenset[str], p: Performance
) -> float | None:
    """P(E1 | E2) for nested events (E2 = OMEGA gives the unconditional score).

    Requires the strict nesting {} != E1 != E2 <= OMEGA; returns None when
    P(E2) = 0.
    """
    e1, e2 = frozenset(e1), frozenset(e2)
    if not e1 or e1 == e2 or not e1 < e2 or not e2 <= OMEGA:
        raise PerfError("events must satisfy {} < E1 < E2 <= OMEGA")
    denom = p.probability(e2)
    if denom == 0.0:
        return None
    return p.probability(e1) / denom


def ranking_score(imp: Importance, p: Performance) -> float | None:
    """R_I(P); None when the importance-weighted mass is zero."""
    num = imp.i_tn * p.tn + imp.i_tp * p.tp
    den = num + imp.i_fp * p.fp + imp.i_fn * p.fn
    if den == 0.0:
        return None
    return num / den


def canonical_score(a: float, b: float, p: Performance) -> float | None:
    """R_{a,b}(P), the canonical ranking score at tile coordinate (a, b).

    Summation order matches the grid kernels (numerator first, then the
    unsatisfying terms) so scalar and raster paths agree bitwise.
    """
    num = (1.0 - a) * p.tn + a * p.tp
    den = num + (1.0 - b) * p.fp + b * p.fn
    if den == 0.0:
        return None
    return num / den


def canonicalize(imp: Importance) -> TileCoord:
    """Collapse an importance onto its order-equivalent tile coordinate.

    Scaling (i_tn, i_tp) and (i_fp, i_fn) independently leaves the induced
    ordering unchanged, so a = i_tp/(i_tn+i_tp) and b = i_fn/(i_fp+i_fn)
    pin the representative.
    """
    return TileCoord(
        imp.i_tp / (imp.i_tn + imp.i_tp),
        imp.i_fn / (imp.i_fp + imp.i_fn),
    )


def compare(p1: Performance, p2: Performance, imp: Importance) -> Ordering:
    """Order two performances under R_I.

    Outside the score's domain: equal performances are equivalent, anything
    else is incomparable.
    """
    r1 = ranking_score(imp, p1)
    r2 = ranking_score(imp, p2)
    if r1 is None or r2 is None:
        return Ordering.EQUIVALENT if p1 == p2 else Ordering.INCOMPARABLE
    if r1 < r2:
        return Ordering.WORSE
    if r1 > r2:
        return Ordering.BETTER
    return Ordering.EQUIVALENT
