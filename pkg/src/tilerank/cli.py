"""Command-line surface: score tables, tile/region/correlation artifacts,
ROC pencil exports, VUT reports, and the JSON API server."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io as tio
from .catalog import catalog_score
from .perf import PerfError, TileCoord
from .regions import rank_r_regions
from .rocgeom import RocPoint, iso_line, pencil_vertex, vertex_zone
from .stats import SampleSpec, correlation_tile, vut, vut_numeric
from .tile import gamma_curve, placement_of, prior_grid_overlay, value_tile


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PerfError, tio.RosterError, LookupError, ValueError, OSError) as exc:
        message = exc.args[0] if isinstance(exc, LookupError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tilerank",
        description="Evaluate, compare and rank two-class classifiers on the tile "
        "of canonical ranking scores.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="print a score table for a roster")
    _roster_args(p_score)
    p_score.add_argument("--names", default="TNR,TPR,PPV,NPV,A,F1",
                         help="comma-separated catalog score names")
    p_score.add_argument("--beta", type=float, default=None, help="beta for Fbeta")
    p_score.set_defaults(func=_cmd_score)

    p_tile = sub.add_parser("tile", help="write a value tile for one entity")
    _roster_args(p_tile)
    p_tile.add_argument("--entity", required=True)
    p_tile.add_argument("--res", type=int, default=101)
    p_tile.add_argument("--out", type=Path, default=None, help="output JSON (default stdout)")
    p_tile.add_argument("--csv", type=Path, default=None, help="also write long-form CSV")
    p_tile.add_argument("--image", type=Path, default=None, help="also render PNG/SVG")
    p_tile.add_argument("--palette", default=None)
    p_tile.add_argument("--overlay-curve", action="store_true",
                        help="overlay gamma_pi for the roster priors")
    p_tile.add_argument("--overlay-grid", action="store_true",
                        help="overlay the prior-shift grid")
    p_tile.add_argument("--overlay-placements", action="store_true",
                        help="overlay named score positions")
    p_tile.set_defaults(func=_cmd_tile)

    p_reg = sub.add_parser("regions", help="write ranking regions for a roster")
    _roster_args(p_reg)
    p_reg.add_argument("--rank", type=int, default=1)
    p_reg.add_argument("--pts-per-edge", type=int, default=64)
    p_reg.add_argument("--out", type=Path, default=None)
    p_reg.add_argument("--image", type=Path, default=None)
    p_reg.set_defaults(func=_cmd_regions)

    p_corr = sub.add_parser("correlate", help="correlation tile of a target score")
    p_corr.add_argument("--target", required=True,
                        help="catalog score name or 'a,b' tile coordinate")
    p_corr.add_argument("--n", type=int, default=10_000)
    p_corr.add_argument("--seed", type=int, default=0)
    p_corr.add_argument("--res", type=int, default=51)
    p_corr.add_argument("--prior-neg", type=float, default=None,
                        help="fix the negative prior of the sample distribution")
    p_corr.add_argument("--concentration", type=float, default=1.0)
    p_corr.add_argument("--beta", type=float, default=None, help="beta when target is Fbeta")
    p_corr.add_argument("--out", type=Path, default=None)
    p_corr.add_argument("--image", type=Path, default=None)
    p_corr.add_argument("--palette", default=None)
    p_corr.set_defaults(func=_cmd_correlate)

    p_roc = sub.add_parser("roc", help="pencil of iso-performance lines in ROC")
    p_roc.add_argument("roster", nargs="?", type=Path, default=None)
    p_roc.add_argument("--shift-to", type=float, default=None, dest="shift_to")
    p_roc.add_argument("--coord", required=True, help="'a,b' tile coordinate")
    p_roc.add_argument("--priors", type=float, default=None,
                       help="negative prior (defaults to the roster's)")
    p_roc.add_argument("--out", type=Path, default=None)
    p_roc.add_argument("--image", type=Path, default=None)
    p_roc.set_defaults(func=_cmd_roc)

    p_vut = sub.add_parser("vut", help="volume under the tile, closed form and quadrature")
    _roster_args(p_vut)
    p_vut.add_argument("--nodes", type=int, default=256)
    p_vut.set_defaults(func=_cmd_vut)

    p_serve = sub.add_parser("serve", help="serve the JSON API (and UI if built)")
    p_serve.add_argument("--port", type=int, default=8008)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--static", type=Path, default=None,
                         help="directory of UI static files")
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def _roster_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("roster", type=Path, help="roster CSV or JSON")
    p.add_argument("--shift-to", type=float, default=None, dest="shift_to",
                   help="unify mixed priors by shifting to this positive prior")


def _load(args) -> tio.Roster:
    return tio.load_roster(args.roster, shift_to_prior_pos=args.shift_to)


def _parse_coord(text: str) -> TileCoord:
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise ValueError(f"expected 'a,b', got {text!r}") from exc
    return TileCoord(a, b)


def _emit(doc: dict, out: Path | None) -> None:
    payload = tio.dumps(doc)
    if out is None:
        print(payload)
    else:
        out.write_text(payload + "\n")


def _cmd_score(args) -> int:
    roster = _load(args)
    names = [n.strip() for n in args.names.split(",") if n.strip()]
    width = max(len(e.name) for e in roster.entities)
    print(" " * width + "  " + "  ".join(f"{n:>10}" for n in names))
    for e in roster.entities:
        cells = []
        for n in names:
            v = catalog_score(n, e.performance, beta=args.beta if n == "Fbeta" else None)
            cells.append(f"{'undef':>10}" if v is None else f"{v:>10.6f}")
        print(f"{e.name:<{width}}  " + "  ".join(cells))
    return 0


def _cmd_tile(args) -> int:
    from .render import RenderSpec

    roster = _load(args)
    entity = roster.get(args.entity)
    overlays = tuple(
        name
        for enabled, name in (
            (args.overlay_curve, "gamma_pi"),
            (args.overlay_grid, "prior_grid"),
            (args.overlay_placements, "placements"),
        )
        if enabled
    )
    fmt = args.image.suffix.lstrip(".").lower() if args.image is not None else "json"
    spec = RenderSpec(fmt=fmt, resolution=args.res, palette=args.palette, overlays=overlays)
    grid = value_tile(entity.performance, spec.resolution)
    grid.meta["entity"] = entity.name
    curves, gridlines, placements = [], [], []
    if "gamma_pi" in spec.overlays:
        curves.append(gamma_curve("gamma_pi", roster.priors[0]))
    if "prior_grid" in spec.overlays:
        gridlines.extend(prior_grid_overlay(roster.priors))
    if "placements" in spec.overlays:
        from .tile import standard_placements

        placements.extend(standard_placements(roster.priors[0]))
    if args.image is not None:
        from .render import render_tile

        palette = render_tile(
            grid, args.image, palette=spec.palette, curves=curves,
            gridlines=gridlines, placements=placements,
            title=f"value tile: {entity.name}",
        )
        grid.meta["palette"] = palette
    if args.csv is not None:
        args.csv.write_text(tio.grid_to_csv(grid))
    _emit(tio.grid_to_jsonable(grid), args.out)
    return 0


def _cmd_regions(args) -> int:
    roster = _load(args)
    rs = rank_r_regions(list(roster.entities), roster.priors, args.rank, args.pts_per_edge)
    if args.image is not None:
        from .render import render_regions

        render_regions(rs, args.image, rank=args.rank, title=f"rank {args.rank} regions")
    doc = tio.regionset_to_jsonable(rs)
    doc["rank"] = args.rank
    _emit(doc, args.out)
    return 0


def _resolve_target(args):
    if "," in args.target:
        coord = _parse_coord(args.target)
        return coord, f"R({args.target})"
    name = args.target

    def fn(p):
        return catalog_score(name, p, beta=args.beta)

    fn(_probe_performance())  # fail fast on unknown names
    return fn, name


def _probe_performance():
    from .perf import Performance

    return Performance(0.25, 0.25, 0.25, 0.25)


def _cmd_correlate(args) -> int:
    target, label = _resolve_target(args)
    spec = SampleSpec(args.n, args.seed, prior_neg=args.prior_neg,
                      concentration=args.concentration)
    grid = correlation_tile(target, spec, resolution=args.res, target_name=label)
    if args.image is not None:
        from .render import render_tile

        palette = render_tile(grid, args.image, palette=args.palette,
                              title=f"Kendall tau vs {label}")
        grid.meta["palette"] = palette
    _emit(tio.grid_to_jsonable(grid), args.out)
    return 0


def _cmd_roc(args) -> int:
    coord = _parse_coord(args.coord)
    roster = None
    if args.roster is not None:
        roster = tio.load_roster(args.roster, shift_to_prior_pos=args.shift_to)
    if args.priors is not None:
        priors = (args.priors, 1.0 - args.priors)
    elif roster is not None:
        priors = roster.priors
    else:
        raise ValueError("either a roster or --priors is required")
    doc = {
        "kind": "roc_pencil",
        "coord": [coord.a, coord.b],
        "priors": [priors[0], priors[1]],
        "vertex": tio.point_to_jsonable(pencil_vertex(coord, priors)),
        "zone": vertex_zone(coord, priors),
        "lines": [tio.line_to_jsonable(iso_line(v, coord, priors)) for v in (0.0, 1.0)],
    }
    entities = []
    if roster is not None:
        from .catalog import fpr as _fpr, tpr as _tpr

        for e in roster.entities:
            f, t = _fpr(e.performance), _tpr(e.performance)
            entities.append({"name": e.name, "fpr": f, "tpr": t})
        doc["entities"] = entities
    if args.image is not None:
        from .render import render_roc

        pts = [(d["name"], d["fpr"], d["tpr"]) for d in entities
               if d["fpr"] is not None and d["tpr"] is not None]
        render_roc(coord, priors, args.image, entities=pts,
                   title=f"pencil at (a,b)=({coord.a},{coord.b})")
    _emit(doc, args.out)
    return 0


def _cmd_vut(args) -> int:
    roster = _load(args)
    width = max(len(e.name) for e in roster.entities)
    print(f"{'':<{width}}  {'closed form':>16}  {'quadrature':>16}")
    for e in roster.entities:
        closed = vut(e.performance)
        numeric = vut_numeric(e.performance, args.nodes)
        print(f"{e.name:<{width}}  {closed:>16.12f}  {numeric:>16.12f}")
    return 0


def _cmd_serve(args) -> int:
    from .server import serve

    serve(args.host, args.port, static_dir=args.static)
    return 0


if __name__ == "__main__":
    sys.exit(main())
