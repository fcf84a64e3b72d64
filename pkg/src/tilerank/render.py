"""Image rendering for tiles, regions, and the ROC pencil.

Rendering reads the same grids and polygons that get serialized; it never
recomputes values.  Value tiles use a sequential palette, correlation
tiles a diverging one centered at zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.patches import Polygon as MplPolygon

from .regions import RegionSet
from .rocgeom import iso_line
from .perf import TileCoord
from .tile import Curve, GridLine, Placement, TileGrid

SEQUENTIAL_PALETTE = "viridis"
DIVERGING_PALETTE = "RdBu_r"

ENTITY_COLORS = matplotlib.colormaps["tab10"].colors

FORMATS = ("png", "svg", "json", "csv")
OVERLAY_NAMES = ("gamma_pi", "prior_grid", "placements")


@dataclass(frozen=True)
class RenderSpec:
    """What to emit and how: format, raster resolution, palette, overlays."""

    fmt: str = "png"
    resolution: int = 101
    palette: str | None = None
    overlays: tuple[str, ...] = ()

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if self.resolution < 2:
            raise ValueError("resolution must be >= 2")
        bad = set(self.overlays) - set(OVERLAY_NAMES)
        if bad:
            raise ValueError(f"unknown overlays: {sorted(bad)}")


def palette_for(grid: TileGrid) -> str:
    return DIVERGING_PALETTE if grid.meta.get("kind") == "kendall_tau" else SEQUENTIAL_PALETTE


def render_tile(
    grid: TileGrid,
    path: str | Path,
    *,
    palette: str | None = None,
    curves: list[Curve] = (),
    gridlines: list[GridLine] = (),
    placements: list[Placement] = (),
    title: str = "",
) -> str:
    """Draw a tile heatmap with optional overlays; returns the palette used."""
    is_tau = grid.meta.get("kind") == "kendall_tau"
    palette = palette or palette_for(grid)
    fig, ax = plt.subplots(figsize=(5.2, 4.6))
    im = ax.imshow(
        grid.values.T,
        origin="lower",
        extent=(0, 1, 0, 1),
        aspect="equal",
        cmap=palette,
        vmin=-1.0 if is_tau else 0.0,
        vmax=1.0,
        interpolation="nearest",
    )
    fig.colorbar(im, ax=ax, shrink=0.85)
    for curve in curves:
        ax.plot(curve.points[:, 0], curve.points[:, 1], color="deeppink", lw=1.4)
    for line in gridlines:
        if line.axis == "a":
            ax.axvline(line.position, color="white", lw=0.5, alpha=0.6)
        else:
            ax.axhline(line.position, color="white", lw=0.5, alpha=0.6)
    for pl in placements:
        if pl.kind == "point":
            ax.plot(*pl.coords, marker="o", ms=4, color="black")
            ax.annotate(pl.name, pl.coords, fontsize=7, xytext=(3, 3), textcoords="offset points")
    ax.set_xlabel("a")
    ax.set_ylabel("b")
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return palette


def render_regions(rs: RegionSet, path: str | Path, rank: int = 1, title: str = "") -> None:
    """Color the rank-r region of every entity."""
    fig, ax = plt.subplots(figsize=(5.2, 4.6))
    for k, name in enumerate(rs.entity_names):
        color = ENTITY_COLORS[k % len(ENTITY_COLORS)]
        for poly in rs.regions[name].get(rank, []):
            if poly.vertices.shape[0] >= 3:
                ax.add_patch(
                    MplPolygon(poly.vertices, closed=True, facecolor=color, alpha=0.55, lw=0)
                )
        ax.plot([], [], color=color, lw=6, label=name)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_aspect("equal")
    ax.set_xlabel("a")
    ax.set_ylabel("b")
    ax.legend(fontsize=8, loc="center left", bbox_to_anchor=(1.01, 0.5))
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def render_roc(
    coord: TileCoord,
    priors: tuple[float, float],
    path: str | Path,
    entities: list[tuple[str, float, float]] = (),
    iso_values: tuple[float, ...] = (0.0, 0.25, 0.5, 0.75, 1.0),
    title: str = "",
) -> None:
    """ROC square with the iso-line pencil of one canonical score."""
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    span = np.linspace(-0.5, 1.5, 2)
    for value in iso_values:
        line = iso_line(value, coord, priors)
        color = {0.0: "green", 1.0: "orange"}.get(value, "steelblue")
        if abs(line.v) > 1e-12:
            ax.plot(span, -(line.u * span + line.w) / line.v, color=color, lw=1.0)
        else:
            x = -line.w / line.u
            ax.axvline(x, color=color, lw=1.0)
    for k, (name, fpr, tpr) in enumerate(entities):
        ax.plot(fpr, tpr, "o", color=ENTITY_COLORS[k % len(ENTITY_COLORS)])
        ax.annotate(name, (fpr, tpr), fontsize=8, xytext=(4, 4), textcoords="offset points")
    ax.add_patch(MplPolygon([(0, 0), (1, 0), (1, 1), (0, 1)], closed=True, fill=False, lw=1.2))
    ax.set_xlim(-0.35, 1.35)
    ax.set_ylim(-0.35, 1.35)
    ax.set_xlabel("FPR")
    ax.set_ylabel("TPR")
    ax.set_aspect("equal")
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
