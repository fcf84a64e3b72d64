"""Rank two-class classifiers across the whole tile of canonical ranking scores.

A performance is a probability measure over (tn, fp, fn, tp).  Every
application preference reduces to a point (a, b) of the unit square; this
package evaluates scores there, draws value / correlation / no-skill
tiles, computes exact ranking regions, and maps the pencil geometry of
iso-performance lines in ROC space.
"""

from .perf import (
    Importance,
    Ordering,
    PerfError,
    Performance,
    TileCoord,
    canonical_score,
    canonicalize,
    compare,
    conditional_probabilistic_score,
    performance_from_counts,
    ranking_score,
)
from .catalog import SCORE_NAMES, CatalogError, catalog_score
from .ops import PerfOp, TileEffect, apply_op, prior_shift_map, tile_effect
from .tile import (
    Curve,
    Placement,
    TileGrid,
    cohen_collapse,
    gamma_curve,
    no_skill_value_tile,
    placement_of,
    prior_grid_overlay,
    value_tile,
)
from .regions import (
    Entity,
    HalfPlane,
    RegionSet,
    TilePolygon,
    clip_halfplanes,
    deform_polygon,
    dominance_halfplane,
    first_rank_regions,
    rank_r_regions,
)
from .rocgeom import HomLine, HomPoint, RocPoint, iso_line, pencil_vertex, score_from_roc
from .stats import SampleSpec, correlation_tile, kendall_tau, sample_performances, vut, vut_numeric

__version__ = "0.1.0"

__all__ = [
    "Importance",
    "Ordering",
    "PerfError",
    "Performance",
    "TileCoord",
    "canonical_score",
    "canonicalize",
    "compare",
    "conditional_probabilistic_score",
    "performance_from_counts",
    "ranking_score",
    "SCORE_NAMES",
    "CatalogError",
    "catalog_score",
    "PerfOp",
    "TileEffect",
    "apply_op",
    "prior_shift_map",
    "tile_effect",
    "Curve",
    "Placement",
    "TileGrid",
    "cohen_collapse",
    "gamma_curve",
    "no_skill_value_tile",
    "placement_of",
    "prior_grid_overlay",
    "value_tile",
    "Entity",
    "HalfPlane",
    "RegionSet",
    "TilePolygon",
    "clip_halfplanes",
    "deform_polygon",
    "dominance_halfplane",
    "first_rank_regions",
    "rank_r_regions",
    "HomLine",
    "HomPoint",
    "RocPoint",
    "iso_line",
    "pencil_vertex",
    "score_from_roc",
    "SampleSpec",
    "correlation_tile",
    "kendall_tau",
    "sample_performances",
    "vut",
    "vut_numeric",
]
