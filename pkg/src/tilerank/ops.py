"""Operations on performances and their induced moves of tile coordinates.

Five operations: changing the predicted class, changing the ground-truth
class, swapping ground truth with prediction, swapping the two classes,
and the prior (target) shift.  Each corresponds to an exact coordinate
map of the tile; the first two also invert the ordering (dual).

A prior shift from priors (s-, s+) to (t-, t+) rescales the negative-side
mass by t-/s- and the positive-side mass by t+/s+.  Its tile counterpart
is the Moebius map

    f(x) = x (t+/s+) / ((1-x)(t-/s-) + x (t+/s+)),

inverted in closed form by swapping the two ratios.  The companion
`no_skill` operation replaces a performance by the product of its priors
and prediction rates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .perf import PerfError, Performance

OP_KINDS = (
    "change_predicted",
    "change_groundtruth",
    "swap_gt_pred",
    "swap_classes",
    "prior_shift",
    "no_skill",
)


@dataclass(frozen=True)
class PerfOp:
    """One of the five operations (plus no_skill); prior_shift carries targets."""

    kind: str
    target_priors: tuple[float, float] | None = None

    def __post_init__(self):
        if self.kind not in OP_KINDS:
            raise PerfError(f"unknown operation kind: {self.kind!r}")
        if self.kind == "prior_shift":
            if self.target_priors is None:
                raise PerfError("prior_shift needs target priors")
            _check_priors(self.target_priors, "target")
        elif self.target_priors is not None:
            raise PerfError(f"{self.kind} takes no target priors")

    @classmethod
    def prior_shift(cls, prior_neg: float, prior_pos: float) -> "PerfOp":
        return cls("prior_shift", (prior_neg, prior_pos))


@dataclass(frozen=True)
class TileEffect:
    """Where an ordering sitting at (a, b) lands, and whether it flips."""

    coord_map: Callable[[float, float], tuple[float, float]]
    dual: bool


def _check_priors(priors: tuple[float, float], label: str) -> None:
    neg, pos = priors
    if abs(neg + pos - 1.0) > 1e-9:
        raise PerfError(f"{label} priors must sum to 1, got {priors}")
    # Degenerate shifts (an empty class) are rejected outright: the shift
    # map is only meaningful for priors strictly inside (0, 1).
    if not (0.0 < neg < 1.0):
        raise PerfError(f"{label} priors must lie in (0, 1), got {priors}")


def change_predicted(p: Performance) -> Performance:
    return Performance(p.fp, p.tn, p.tp, p.fn)


def change_groundtruth(p: Performance) -> Performance:
    return Performance(p.fn, p.tp, p.tn, p.fp)


def swap_gt_pred(p: Performance) -> Performance:
    return Performance(p.tn, p.fn, p.fp, p.tp)


def swap_classes(p: Performance) -> Performance:
    return Performance(p.tp, p.fn, p.fp, p.tn)


def no_skill(p: Performance) -> Performance:
    """Product measure with the same priors and prediction rates."""
    pi_n, pi_p = p.priors
    tau_n, tau_p = p.rates
    return Performance(pi_n * tau_n, pi_n * tau_p, pi_p * tau_n, pi_p * tau_p)


def prior_shift(p: Performance, target_priors: tuple[float, float]) -> Performance:
    """Reweight p to the target class priors."""
    _check_priors(target_priors, "target")
    src_n, src_p = p.priors
    if src_n == 0.0 or src_p == 0.0:
        raise PerfError("prior shift from an empty class is impossible")
    r_neg = target_priors[0] / src_n
    r_pos = target_priors[1] / src_p
    return Performance(p.tn * r_neg, p.fp * r_neg, p.fn * r_pos, p.tp * r_pos)


def prior_shift_map(
    source_priors: tuple[float, float], target_priors: tuple[float, float]
) -> tuple[Callable[[float], float], Callable[[float], float]]:
    """The tile map f of a prior shift and its closed-form inverse.

    The ordering induced on pre-shift performances by R_{a,b} applied
    post-shift equals the ordering of R_{f(a),f(b)}.
    """
    _check_priors(source_priors, "source")
    _check_priors(target_priors, "target")
    r_neg = target_priors[0] / source_priors[0]
    r_pos = target_priors[1] / source_priors[1]

    def fwd(x: float) -> float:
        return x * r_pos / ((1.0 - x) * r_neg + x * r_pos)

    def inv(x: float) -> float:
        return x * r_neg / ((1.0 - x) * r_pos + x * r_neg)

    return fwd, inv


def apply_op(op: PerfOp, p: Performance) -> Performance:
    if op.kind == "change_predicted":
        return change_predicted(p)
    if op.kind == "change_groundtruth":
        return change_groundtruth(p)
    if op.kind == "swap_gt_pred":
        return swap_gt_pred(p)
    if op.kind == "swap_classes":
        return swap_classes(p)
    if op.kind == "no_skill":
        return no_skill(p)
    assert op.kind == "prior_shift" and op.target_priors is not None
    return prior_shift(p, op.target_priors)


def tile_effect(op: PerfOp, source_priors: tuple[float, float] | None = None) -> TileEffect:
    """Coordinate map and duality flag of an operation.

    prior_shift needs the source priors; the other operations ignore them.
    """
    if op.kind == "change_predicted":
        return TileEffect(lambda a, b: (b, a), dual=True)
    if op.kind == "change_groundtruth":
        return TileEffect(lambda a, b: (1.0 - b, 1.0 - a), dual=True)
    if op.kind == "swap_gt_pred":
        return TileEffect(lambda a, b: (a, 1.0 - b), dual=False)
    if op.kind == "swap_classes":
        return TileEffect(lambda a, b: (1.0 - a, 1.0 - b), dual=False)
    if op.kind == "no_skill":
        raise PerfError("no_skill does not act on tile coordinates")
    assert op.kind == "prior_shift" and op.target_priors is not None
    if source_priors is None:
        raise PerfError("prior_shift tile effect needs the source priors")
    _, inv = prior_shift_map(source_priors, op.target_priors)
    return TileEffect(lambda a, b: (inv(a), inv(b)), dual=False)
