"""Named score catalog for two-class crisp classification.

Scalar probabilistic scores (PTN..PTP, priors, rates, accuracy), the
conditional rates (TNR, TPR, NPV, PPV and complements), Jaccard indices,
F-scores, and the usual derived quantities (kappa, balanced/weighted
accuracy, Youden's index, likelihood ratios, ...).

All functions return ``None`` when the performance falls outside the
score's domain (a zero denominator), mirroring `tilerank.perf`.
"""

from __future__ import annotations

import math
from typing import Callable

from .perf import Performance, canonical_score

ScoreFn = Callable[..., "float | None"]


class CatalogError(KeyError):
    """Unknown or reserved score name."""


def _ratio(num: float, den: float) -> float | None:
    return None if den == 0.0 else num / den


def ptn(p: Performance) -> float:
    return p.tn


def pfp(p: Performance) -> float:
    return p.fp


def pfn(p: Performance) -> float:
    return p.fn


def ptp(p: Performance) -> float:
    return p.tp


def accuracy(p: Performance) -> float:
    return p.tn + p.tp


def tnr(p: Performance) -> float | None:
    return _ratio(p.tn, p.prior_neg)


def fpr(p: Performance) -> float | None:
    return _ratio(p.fp, p.prior_neg)


def tpr(p: Performance) -> float | None:
    return _ratio(p.tp, p.prior_pos)


def fnr(p: Performance) -> float | None:
    return _ratio(p.fn, p.prior_pos)


def npv(p: Performance) -> float | None:
    return _ratio(p.tn, p.rate_neg)


def false_omission_rate(p: Performance) -> float | None:
    return _ratio(p.fn, p.rate_neg)


def ppv(p: Performance) -> float | None:
    return _ratio(p.tp, p.rate_pos)


def fdr(p: Performance) -> float | None:
    return _ratio(p.fp, p.rate_pos)


def jaccard_neg(p: Performance) -> float | None:
    return _ratio(p.tn, p.tn + p.fp + p.fn)


def jaccard_pos(p: Performance) -> float | None:
    return _ratio(p.tp, p.fp + p.fn + p.tp)


def fbeta_b(beta: float) -> float:
    """Map beta in [0, inf] to the tile height b = beta^2 / (1 + beta^2)."""
    if not (beta >= 0.0):
        raise ValueError(f"beta must be >= 0, got {beta}")
    if math.isinf(beta):
        return 1.0
    if beta >= 1.0:
        return 1.0 / (1.0 + beta**-2)
    return beta**2 / (1.0 + beta**2)


def fbeta(p: Performance, beta: float = 1.0) -> float | None:
    """F-score; beta=0 is PPV and beta=inf is TPR (right edge of the tile)."""
    return canonical_score(1.0, fbeta_b(beta), p)


def bennett_s(p: Performance) -> float:
    return 2.0 * accuracy(p) - 1.0


def snpv(p: Performance) -> float | None:
    t, f = tnr(p), fnr(p)
    if t is None or f is None or t + f == 0.0:
        return None
    return t / (t + f)


def sppv(p: Performance) -> float | None:
    t, f = tpr(p), fpr(p)
    if t is None or f is None or f + t == 0.0:
        return None
    return t / (f + t)


def nlr(p: Performance) -> float | None:
    t, f = tnr(p), fnr(p)
    if t is None or f is None or t == 0.0:
        return None
    return f / t


def plr(p: Performance) -> float | None:
    t, f = tpr(p), fpr(p)
    if t is None or f is None or f == 0.0:
        return None
    return t / f


def weighted_accuracy(p: Performance, weights: tuple[float, float] = (0.5, 0.5)) -> float | None:
    """Weighted arithmetic mean of TNR and TPR with weights (lam_neg, lam_pos)."""
    lam_neg, lam_pos = weights
    if lam_neg < 0 or lam_pos < 0 or lam_neg + lam_pos <= 0:
        raise ValueError("weights must be non-negative and not both zero")
    t_n, t_p = tnr(p), tpr(p)
    if t_n is None or t_p is None:
        return None
    return (lam_neg * t_n + lam_pos * t_p) / (lam_neg + lam_pos)


def balanced_accuracy(p: Performance) -> float | None:
    return weighted_accuracy(p, (0.5, 0.5))


def youden_j(p: Performance) -> float | None:
    t_n, t_p = tnr(p), tpr(p)
    if t_n is None or t_p is None:
        return None
    return t_n + t_p - 1.0


def det_confusion(p: Performance) -> float:
    """Determinant of the normalized confusion matrix, tn*tp - fp*fn.

    Equals prior_neg * prior_pos * youden_j wherever the latter is defined.
    """
    return p.tn * p.tp - p.fp * p.fn


def cohen_kappa(p: Performance) -> float | None:
    """Chance-corrected accuracy; undefined when expected accuracy is 1."""
    expected = p.prior_neg * p.rate_neg + p.prior_pos * p.rate_pos
    if expected == 1.0:
        return None
    return (accuracy(p) - expected) / (1.0 - expected)


def bias_index(p: Performance) -> float:
    return p.rate_pos - p.prior_pos


def markedness(p: Performance) -> float | None:
    n, q = npv(p), ppv(p)
    if n is None or q is None:
        return None
    return n + q - 1.0


def _four_conditionals(p: Performance) -> tuple[float, ...] | None:
    vals = (tnr(p), tpr(p), npv(p), ppv(p))
    if any(v is None for v in vals):
        return None
    return vals  # type: ignore[return-value]


def acp(p: Performance) -> float | None:
    """Arithmetic mean of TNR, TPR, NPV, PPV (not a ranking score)."""
    vals = _four_conditionals(p)
    return None if vals is None else sum(vals) / 4.0


def p4(p: Performance) -> float | None:
    """Harmonic mean of TNR, TPR, NPV, PPV (not a ranking score); 0 at a zero."""
    vals = _four_conditionals(p)
    if vals is None:
        return None
    if any(v == 0.0 for v in vals):
        return 0.0
    return 4.0 / sum(1.0 / v for v in vals)


def g_mean(p: Performance) -> float | None:
    """Geometric mean of TNR and TPR ("G-measure" in the TNR/TPR sense).

    Flach's G-measure is a different score and is exposed as J+ instead.
    """
    t_n, t_p = tnr(p), tpr(p)
    if t_n is None or t_p is None:
        return None
    return math.sqrt(t_n * t_p)


def acc_wo_fp(p: Performance) -> float | None:
    """P(correct | not a false positive): the ranking score at (1/2, 1)."""
    return _ratio(p.tn + p.tp, p.tn + p.fn + p.tp)


def acc_wo_fn(p: Performance) -> float | None:
    """P(correct | not a false negative): the ranking score at (1/2, 0)."""
    return _ratio(p.tn + p.tp, p.tn + p.fp + p.tp)


_CATALOG: dict[str, ScoreFn] = {
    "PTN": ptn,
    "PFP": pfp,
    "PFN": pfn,
    "PTP": ptp,
    "prior_neg": lambda p: p.prior_neg,
    "prior_pos": lambda p: p.prior_pos,
    "rate_neg": lambda p: p.rate_neg,
    "rate_pos": lambda p: p.rate_pos,
    # single-value aliases: the prevalence and the positive prediction rate
    "priors": lambda p: p.prior_pos,
    "rates": lambda p: p.rate_pos,
    "A": accuracy,
    "TNR": tnr,
    "FPR": fpr,
    "TPR": tpr,
    "FNR": fnr,
    "NPV": npv,
    "FOR": false_omission_rate,
    "PPV": ppv,
    "FDR": fdr,
    "J-": jaccard_neg,
    "J+": jaccard_pos,
    "Fbeta": fbeta,
    "F1": lambda p: fbeta(p, 1.0),
    "S": bennett_s,
    "SNPV": snpv,
    "SPPV": sppv,
    "NLR": nlr,
    "PLR": plr,
    "WA": weighted_accuracy,
    "BA": balanced_accuracy,
    "JY": youden_j,
    "detC": det_confusion,
    "kappa": cohen_kappa,
    "BI": bias_index,
    "markedness": markedness,
    "ACP": acp,
    "P4": p4,
    "Gmean": g_mean,
    "AnoFP": acc_wo_fp,
    "AnoFN": acc_wo_fn,
}

#: Catalogued scores whose orderings are incompatible with ranking.
NON_RANKING = frozenset({"ACP", "P4", "VUT"})

#: Names reserved in the literature but without a formula committed here.
RESERVED = frozenset({"ScottPi", "FleissKappa"})

SCORE_NAMES = tuple(sorted(_CATALOG) + ["VUT"])


def catalog_score(
    name: str,
    p: Performance,
    *,
    beta: float | None = None,
    weights: tuple[float, float] | None = None,
) -> float | None:
    """Evaluate a catalogued score by name.

    ``beta`` applies to Fbeta, ``weights`` to WA; both are rejected
    elsewhere.  Raises CatalogError for unknown or reserved names.
    """
    if name in RESERVED:
        raise CatalogError(f"{name} is reserved: no formula is committed for it")
    if name == "VUT":
        from .stats import vut  # local import: stats builds on this module's layer

        if beta is not None or weights is not None:
            raise ValueError("VUT takes no parameters")
        return vut(p)
    fn = _CATALOG.get(name)
    if fn is None:
        raise CatalogError(f"unknown score name: {name!r}")
    if name == "Fbeta":
        return fn(p, beta if beta is not None else 1.0)
    if beta is not None:
        raise ValueError(f"beta is only valid for Fbeta, not {name}")
    if name == "WA":
        return fn(p, weights if weights is not None else (0.5, 0.5))
    if weights is not None:
        raise ValueError(f"weights are only valid for WA, not {name}")
    return fn(p)
