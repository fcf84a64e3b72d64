"""Exact tile regions where each roster entity attains a given rank.

For balanced priors, "P1 is at least as good as P2 under R_{a,b}" is a
single linear inequality in (a, b):

    la * a + lb * b + l0 >= 0
    la = FPR1*FNR2 - FNR1*FPR2
    lb = TPR1*TNR2 - TNR1*TPR2
    l0 = TNR1 - TNR2

so rank regions are intersections of half-planes with the unit square,
computed by sequential polygon clipping.  For unbalanced priors the roster
is shifted to balanced priors first, polygons are computed there, and the
result is carried back through the closed-form shift map (edges become
curves, discretized for presentation; membership tests pull points back
through the inverse map and stay exact).

Ties are kept closed: boundary coordinates belong to every tied entity,
and an entity occupies rank r wherever r lies between 1 + (#strictly
better) and (#better or tied).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .ops import prior_shift, prior_shift_map
from .perf import PerfError, Performance
from .tile import grid_coords

_BALANCED = (0.5, 0.5)
_DEDUP_TOL = 1e-10


@dataclass(frozen=True)
class Entity:
    """A named classifier performance to be ranked."""

    name: str
    performance: Performance


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane la*a + lb*b + l0 >= 0 in tile coordinates.

    ``trivial_all`` marks an everywhere-true comparison (identical rates).
    """

    la: float
    lb: float
    l0: float
    trivial_all: bool = False

    def residual(self, a, b):
        return self.la * np.asarray(a) + self.lb * np.asarray(b) + self.l0

    def flipped(self) -> "HalfPlane":
        return HalfPlane(-self.la, -self.lb, -self.l0, self.trivial_all)


@dataclass(frozen=True, eq=False)
class TilePolygon:
    """Counter-clockwise vertex loop inside the unit square.

    ``exact`` polygons are convex (balanced priors); deformed ones are
    polyline approximations of curved regions, tagged with the number of
    discretization points used per original edge.
    """

    vertices: np.ndarray  # (m, 2)
    exact: bool = True
    pts_per_edge: int | None = None

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "vertices", v)

    @property
    def is_empty(self) -> bool:
        return self.vertices.shape[0] == 0

    def area(self) -> float:
        v = self.vertices
        if v.shape[0] < 3:
            return 0.0
        x, y = v[:, 0], v[:, 1]
        return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))

    def contains(self, a, b, tol: float = 1e-12):
        """Point-in-convex-polygon test (closed; meaningful for exact polygons)."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if self.vertices.shape[0] < 3:
            return np.zeros(np.broadcast(a, b).shape, dtype=bool)
        inside = np.ones(np.broadcast(a, b).shape, dtype=bool)
        v = self.vertices
        for k in range(v.shape[0]):
            x0, y0 = v[k]
            x1, y1 = v[(k + 1) % v.shape[0]]
            cross = (x1 - x0) * (b - y0) - (y1 - y0) * (a - x0)
            inside &= cross >= -tol
        return inside

    def boundary_distance(self, a, b):
        """Distance from points to the nearest polygon edge segment."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        v = self.vertices
        if v.shape[0] == 0:
            return np.full(np.broadcast(a, b).shape, np.inf)
        if v.shape[0] == 1:
            return np.hypot(a - v[0, 0], b - v[0, 1])
        best = np.full(np.broadcast(a, b).shape, np.inf)
        for k in range(v.shape[0]):
            p0 = v[k]
            p1 = v[(k + 1) % v.shape[0]]
            dx, dy = p1[0] - p0[0], p1[1] - p0[1]
            seg2 = dx * dx + dy * dy
            if seg2 == 0.0:
                d = np.hypot(a - p0[0], b - p0[1])
            else:
                t = np.clip(((a - p0[0]) * dx + (b - p0[1]) * dy) / seg2, 0.0, 1.0)
                d = np.hypot(a - (p0[0] + t * dx), b - (p0[1] + t * dy))
            best = np.minimum(best, d)
        return best


UNIT_SQUARE = np.array([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])


def unit_square_halfplanes() -> list[HalfPlane]:
    return [
        HalfPlane(1.0, 0.0, 0.0),
        HalfPlane(-1.0, 0.0, 1.0),
        HalfPlane(0.0, 1.0, 0.0),
        HalfPlane(0.0, -1.0, 1.0),
    ]


def _rates(p: Performance) -> tuple[float, float, float, float]:
    pn, pp = p.priors
    if pn == 0.0 or pp == 0.0:
        raise PerfError("conditional rates undefined: a class has zero mass")
    return p.tn / pn, p.fp / pn, p.fn / pp, p.tp / pp


def dominance_halfplane(p1: Performance, p2: Performance) -> HalfPlane:
    """Half-plane of canonical coordinates where p1 >= p2 (balanced priors)."""
    for p in (p1, p2):
        if abs(p.prior_neg - 0.5) > 1e-9:
            raise PerfError("dominance half-plane requires balanced priors")
    tnr1, fpr1, fnr1, tpr1 = _rates(p1)
    tnr2, fpr2, fnr2, tpr2 = _rates(p2)
    la = fpr1 * fnr2 - fnr1 * fpr2
    lb = tpr1 * tnr2 - tnr1 * tpr2
    l0 = tnr1 - tnr2
    return HalfPlane(la, lb, l0, trivial_all=(la == 0.0 and lb == 0.0 and l0 == 0.0))


def _clip_once(poly: np.ndarray, hp: HalfPlane) -> np.ndarray:
    if poly.shape[0] == 0:
        return poly
    res = hp.residual(poly[:, 0], poly[:, 1])
    out: list[tuple[float, float]] = []
    m = poly.shape[0]
    for k in range(m):
        s, e = poly[k], poly[(k + 1) % m]
        rs, re = res[k], res[(k + 1) % m]
        if rs >= 0.0:
            out.append((s[0], s[1]))
            if re < 0.0:
                t = rs / (rs - re)
                out.append((s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])))
        elif re >= 0.0:
            t = rs / (rs - re)
            out.append((s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])))
    return np.array(out).reshape(-1, 2)


def _dedup(poly: np.ndarray) -> np.ndarray:
    if poly.shape[0] < 2:
        return poly
    keep = [poly[0]]
    for pt in poly[1:]:
        if max(abs(pt[0] - keep[-1][0]), abs(pt[1] - keep[-1][1])) > _DEDUP_TOL:
            keep.append(pt)
    while len(keep) > 1 and max(abs(keep[0][0] - keep[-1][0]), abs(keep[0][1] - keep[-1][1])) <= _DEDUP_TOL:
        keep.pop()
    return np.array(keep).reshape(-1, 2)


def clip_halfplanes(planes: list[HalfPlane]) -> TilePolygon:
    """Intersection of half-planes with the unit square, by sequential clipping.

    Everywhere-true (trivial) planes are no-ops; an empty result is valid.
    """
    poly = UNIT_SQUARE.copy()
    for hp in planes:
        if hp.trivial_all:
            continue
        poly = _clip_once(poly, hp)
        if poly.shape[0] == 0:
            break
    return TilePolygon(_dedup(poly), exact=True)


def deform_polygon(
    poly: TilePolygon,
    from_priors: tuple[float, float],
    to_priors: tuple[float, float],
    pts_per_edge: int = 64,
) -> TilePolygon:
    """Carry a polygon computed at from_priors to the to_priors tile.

    Each edge is discretized and pushed through the componentwise shift map
    (edges fixed pointwise when the priors match).  The output is flagged
    as an approximation.
    """
    if pts_per_edge < 2:
        raise ValueError("pts_per_edge must be >= 2")
    if from_priors == to_priors:
        return TilePolygon(poly.vertices.copy(), exact=poly.exact, pts_per_edge=poly.pts_per_edge)
    fwd, _ = prior_shift_map(to_priors, from_priors)
    v = poly.vertices
    if v.shape[0] == 0:
        return TilePolygon(v.copy(), exact=False, pts_per_edge=pts_per_edge)
    t = np.linspace(0.0, 1.0, pts_per_edge, endpoint=False)
    pieces = []
    for k in range(v.shape[0]):
        p0, p1 = v[k], v[(k + 1) % v.shape[0]]
        pts = p0[None, :] + t[:, None] * (p1 - p0)[None, :]
        pieces.append(np.column_stack([_map_vals(fwd, pts[:, 0]), _map_vals(fwd, pts[:, 1])]))
    return TilePolygon(_dedup(np.vstack(pieces)), exact=False, pts_per_edge=pts_per_edge)


def _map_vals(fn, xs: np.ndarray) -> np.ndarray:
    return np.array([fn(float(x)) for x in xs])


@dataclass(frozen=True, eq=False)
class RegionSet:
    """Per-entity, per-rank tile polygons plus the exact membership data.

    ``regions[name][rank]`` holds polygons on the priors' tile (deformed and
    approximated when priors are unbalanced).  Membership queries use the
    balanced-frame polygons through the closed-form pullback, so they stay
    exact regardless of the discretization.
    """

    priors: tuple[float, float]
    entity_names: tuple[str, ...]
    regions: dict = field(default_factory=dict)
    balanced_regions: dict = field(default_factory=dict)

    @property
    def balanced(self) -> bool:
        return self.priors == _BALANCED

    def _pullback(self, a, b):
        if self.balanced:
            return np.asarray(a, dtype=float), np.asarray(b, dtype=float)
        _, inv = prior_shift_map(self.priors, _BALANCED)
        return (
            np.array([inv(float(x)) for x in np.atleast_1d(np.asarray(a, dtype=float))]),
            np.array([inv(float(x)) for x in np.atleast_1d(np.asarray(b, dtype=float))]),
        )

    def membership(self, name: str, rank: int, a, b, tol: float = 1e-12):
        """Exact membership of tile points in an entity's rank-r region."""
        scalar = np.isscalar(a) and np.isscalar(b)
        pa, pb = self._pullback(np.atleast_1d(a), np.atleast_1d(b))
        out = np.zeros(pa.shape, dtype=bool)
        for poly in self.balanced_regions[name].get(rank, []):
            out |= poly.contains(pa, pb, tol=tol)
        return bool(out[0]) if scalar else out

    def boundary_distance(self, name: str, rank: int, a, b):
        """Distance (in the balanced frame) to the entity's region boundary."""
        pa, pb = self._pullback(np.atleast_1d(a), np.atleast_1d(b))
        best = np.full(pa.shape, np.inf)
        for poly in self.balanced_regions[name].get(rank, []):
            best = np.minimum(best, poly.boundary_distance(pa, pb))
        return best

    def area(self, name: str, rank: int) -> float:
        """Total balanced-frame area of an entity's rank-r region."""
        return sum(p.area() for p in self.balanced_regions[name].get(rank, []))


def _validate_roster(roster: list[Entity], priors: tuple[float, float]) -> None:
    if not roster:
        raise PerfError("empty roster")
    names = [e.name for e in roster]
    if len(set(names)) != len(names):
        raise PerfError("duplicate entity names in roster")
    for e in roster:
        if abs(e.performance.prior_neg - priors[0]) > 1e-9:
            raise PerfError(
                f"entity {e.name!r} has priors {e.performance.priors}, roster says {priors}"
            )


def rank_regions(
    roster: list[Entity],
    priors: tuple[float, float],
    ranks: tuple[int, ...] = (1,),
    pts_per_edge: int = 64,
) -> RegionSet:
    """Regions where each entity attains each requested rank.

    Balanced rosters give exact convex cells; unbalanced rosters are shifted
    to balanced priors, clipped there, and deformed back.  A rank-r region
    is the union over choices of r-1 dominators of the cell where exactly
    those dominate (closed, so ties overlap).
    """
    _validate_roster(roster, priors)
    for r in ranks:
        if not (1 <= r <= len(roster)):
            raise PerfError(f"rank {r} out of range 1..{len(roster)}")
    balanced = abs(priors[0] - 0.5) <= 1e-12
    if balanced:
        perfs = {e.name: e.performance for e in roster}
    else:
        perfs = {e.name: prior_shift(e.performance, _BALANCED) for e in roster}
    names = [e.name for e in roster]
    square = unit_square_halfplanes()
    hp: dict[tuple[str, str], HalfPlane] = {}
    for e, o in itertools.permutations(names, 2):
        hp[(e, o)] = dominance_halfplane(perfs[e], perfs[o])

    balanced_regions: dict[str, dict[int, list[TilePolygon]]] = {n: {} for n in names}
    regions: dict[str, dict[int, list[TilePolygon]]] = {n: {} for n in names}
    for name in names:
        others = [o for o in names if o != name]
        for r in ranks:
            cells: list[TilePolygon] = []
            for dominators in itertools.combinations(others, r - 1):
                dom = set(dominators)
                planes = list(square)
                planes += [hp[(o, name)] for o in others if o in dom]
                planes += [hp[(name, o)] for o in others if o not in dom]
                cell = clip_halfplanes(planes)
                if not cell.is_empty:
                    cells.append(cell)
            balanced_regions[name][r] = cells
            if balanced:
                regions[name][r] = cells
            else:
                regions[name][r] = [
                    deform_polygon(c, _BALANCED, priors, pts_per_edge) for c in cells
                ]
    return RegionSet(priors, tuple(names), regions, balanced_regions)


def first_rank_regions(
    roster: list[Entity], priors: tuple[float, float], pts_per_edge: int = 64
) -> RegionSet:
    """Winning regions (rank 1) for every entity."""
    return rank_regions(roster, priors, (1,), pts_per_edge)


def rank_r_regions(
    roster: list[Entity], priors: tuple[float, float], r: int, pts_per_edge: int = 64
) -> RegionSet:
    """Regions where each entity is ranked r-th."""
    return rank_regions(roster, priors, (r,), pts_per_edge)


def rank_membership_oracle(
    roster: list[Entity], r: int, resolution: int = 201
) -> dict[str, np.ndarray]:
    """Brute-force rank-r membership on a grid, straight from score argsort.

    Independent of the polygon pipeline: scores are evaluated per cell and
    ranks counted directly (closed-tie convention).  Cells where an entity's
    score is undefined never belong to it; cells where every score is
    undefined are all-False.
    """
    coords = grid_coords(resolution)
    names = [e.name for e in roster]
    scores = np.stack(
        [
            _kernels.value_grid(*e.performance.as_tuple(), coords, coords)
            for e in roster
        ]
    )
    defined = np.isfinite(scores)
    member = {}
    for i, name in enumerate(names):
        strictly_better = np.zeros(scores.shape[1:], dtype=np.int32)
        tied = np.zeros(scores.shape[1:], dtype=np.int32)
        for j in range(len(names)):
            if j == i:
                continue
            comparable = defined[i] & defined[j]
            strictly_better += (comparable & (scores[j] > scores[i])).astype(np.int32)
            tied += (comparable & (scores[j] == scores[i])).astype(np.int32)
        # occupied ranks span [strictly_better + 1, strictly_better + 1 + tied]
        member[name] = defined[i] & (strictly_better + 1 <= r) & (r <= strictly_better + 1 + tied)
    return member
