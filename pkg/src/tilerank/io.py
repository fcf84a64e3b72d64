"""Rosters, JSON schemas, and deterministic serialization.

Every float is written with 17 significant digits so serialized grids
round-trip exactly and identical inputs produce byte-identical files.
Undefined values (NaN cells, None scores) serialize as null.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .ops import prior_shift
from .perf import PerfError, Performance
from .regions import Entity, RegionSet, TilePolygon
from .rocgeom import HomLine, HomPoint
from .tile import Curve, GridLine, Placement, TileGrid


class RosterError(ValueError):
    """Malformed roster input."""


@dataclass(frozen=True)
class Roster:
    """Named entities sharing common class priors."""

    entities: tuple[Entity, ...]
    priors: tuple[float, float]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.entities:
            raise RosterError("roster is empty")
        names = [e.name for e in self.entities]
        if len(set(names)) != len(names):
            raise RosterError("duplicate entity names")

    def names(self) -> list[str]:
        return [e.name for e in self.entities]

    def get(self, name: str) -> Entity:
        for e in self.entities:
            if e.name == name:
                return e
        raise KeyError(f"unknown entity {name!r}")


def build_roster(
    entities: list[Entity], shift_to_prior_pos: float | None = None, meta: dict | None = None
) -> Roster:
    """Check prior agreement (or unify via a prior shift) and build a roster."""
    meta = dict(meta or {})
    if shift_to_prior_pos is not None:
        target = (1.0 - shift_to_prior_pos, shift_to_prior_pos)
        entities = [Entity(e.name, prior_shift(e.performance, target)) for e in entities]
        meta["shifted_to_prior_pos"] = shift_to_prior_pos
    if not entities:
        raise RosterError("roster is empty")
    names = [e.name for e in entities]
    if len(set(names)) != len(names):
        raise RosterError("duplicate entity names")
    priors = entities[0].performance.priors
    for e in entities[1:]:
        if abs(e.performance.prior_neg - priors[0]) > 1e-9:
            raise RosterError(
                f"mixed priors: {e.name!r} has prior_neg={e.performance.prior_neg!r}, "
                f"expected {priors[0]!r} (use shift_to to unify)"
            )
    return Roster(tuple(entities), priors, meta)


_CSV_HEADER = ["name", "tn", "fp", "fn", "tp"]


def load_roster(
    path: str | Path,
    fmt: str | None = None,
    shift_to_prior_pos: float | None = None,
) -> Roster:
    """Read a roster from CSV (name,tn,fp,fn,tp; counts or probabilities) or JSON."""
    path = Path(path)
    if not path.exists():
        raise RosterError(f"no such file: {path}")
    if fmt is None:
        fmt = "json" if path.suffix.lower() == ".json" else "csv"
    if fmt == "csv":
        entities = _parse_csv(path)
    elif fmt == "json":
        entities = _parse_json(path)
    else:
        raise RosterError(f"unknown roster format: {fmt!r}")
    return build_roster(entities, shift_to_prior_pos, meta={"source": str(path)})


def _parse_csv(path: Path) -> list[Entity]:
    entities = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows = [(k + 1, row) for k, row in enumerate(reader) if row and any(c.strip() for c in row)]
    if not rows:
        raise RosterError(f"{path}: empty roster file")
    start = 0
    if [c.strip().lower() for c in rows[0][1]] == _CSV_HEADER:
        start = 1
    if not rows[start:]:
        raise RosterError(f"{path}: no data rows")
    for lineno, row in rows[start:]:
        if len(row) != 5:
            raise RosterError(f"{path}:{lineno}: expected 5 columns name,tn,fp,fn,tp")
        name = row[0].strip()
        if not name:
            raise RosterError(f"{path}:{lineno}: empty entity name")
        try:
            counts = [float(c) for c in row[1:]]
        except ValueError as exc:
            raise RosterError(f"{path}:{lineno}: {exc}") from exc
        try:
            entities.append(Entity(name, Performance(*counts)))
        except PerfError as exc:
            raise RosterError(f"{path}:{lineno}: {exc}") from exc
    return entities


def _parse_json(path: Path) -> list[Entity]:
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise RosterError(f"{path}: invalid JSON: {exc}") from exc
    return entities_from_jsonable(doc, where=str(path))


def entities_from_jsonable(doc, where: str = "roster") -> list[Entity]:
    if not isinstance(doc, dict) or "entities" not in doc:
        raise RosterError(f"{where}: expected an object with an 'entities' array")
    entities = []
    for k, item in enumerate(doc["entities"]):
        if not isinstance(item, dict):
            raise RosterError(f"{where}: entity #{k} is not an object")
        missing = [key for key in _CSV_HEADER if key not in item]
        if missing:
            raise RosterError(f"{where}: entity #{k} missing fields {missing}")
        try:
            entities.append(
                Entity(
                    str(item["name"]),
                    Performance(
                        float(item["tn"]), float(item["fp"]), float(item["fn"]), float(item["tp"])
                    ),
                )
            )
        except (PerfError, TypeError, ValueError) as exc:
            raise RosterError(f"{where}: entity #{k}: {exc}") from exc
    return entities


# deterministic JSON with 17-significant-digit floats


def _format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite float cannot be serialized; map it to None first")
    return format(x, ".17g")


def dumps(obj) -> str:
    """Serialize to JSON with deterministic float formatting."""
    parts: list[str] = []
    _write(obj, parts)
    return "".join(parts)


def _write(obj, parts: list[str]) -> None:
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        parts.append(_format_float(float(obj)))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for k, key in enumerate(obj):
            if not isinstance(key, str):
                raise TypeError(f"JSON keys must be strings, got {type(key)}")
            if k:
                parts.append(",")
            parts.append(json.dumps(key))
            parts.append(":")
            _write(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        parts.append("[")
        for k, item in enumerate(obj):
            if k:
                parts.append(",")
            _write(item, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj)}")


def _cell(v: float) -> float | None:
    return None if math.isnan(v) else float(v)


def grid_to_jsonable(grid: TileGrid) -> dict:
    meta = {k: v for k, v in grid.meta.items() if k != "kind"}
    return {
        "kind": grid.meta.get("kind", "value"),
        "n_a": grid.n_a,
        "n_b": grid.n_b,
        "a": [float(x) for x in grid.a],
        "b": [float(x) for x in grid.b],
        "values": [[_cell(v) for v in row] for row in grid.values],
        "meta": meta,
    }


def grid_from_jsonable(doc: dict) -> TileGrid:
    values = np.array(
        [[np.nan if v is None else v for v in row] for row in doc["values"]], dtype=float
    )
    meta = dict(doc.get("meta", {}))
    meta["kind"] = doc.get("kind", "value")
    return TileGrid(np.asarray(doc["a"], float), np.asarray(doc["b"], float), values, meta)


def grid_to_csv(grid: TileGrid) -> str:
    """Long-form a,b,value rows; undefined cells have an empty value field."""
    lines = ["a,b,value"]
    for i, a in enumerate(grid.a):
        for j, b in enumerate(grid.b):
            v = grid.values[i, j]
            cell = "" if math.isnan(v) else _format_float(float(v))
            lines.append(f"{_format_float(float(a))},{_format_float(float(b))},{cell}")
    return "\n".join(lines) + "\n"


def roster_to_jsonable(roster: Roster) -> dict:
    return {
        "entities": [
            {
                "name": e.name,
                "tn": e.performance.tn,
                "fp": e.performance.fp,
                "fn": e.performance.fn,
                "tp": e.performance.tp,
            }
            for e in roster.entities
        ],
        "priors": [roster.priors[0], roster.priors[1]],
        "meta": roster.meta,
    }


def roster_from_jsonable(doc: dict) -> Roster:
    return build_roster(entities_from_jsonable(doc))


def polygon_to_jsonable(poly: TilePolygon) -> dict:
    return {
        "vertices": [[float(x), float(y)] for x, y in poly.vertices],
        "exact": poly.exact,
        "pts_per_edge": poly.pts_per_edge,
    }


def regionset_to_jsonable(rs: RegionSet) -> dict:
    return {
        "kind": "regions",
        "priors": [rs.priors[0], rs.priors[1]],
        "entities": list(rs.entity_names),
        "regions": {
            name: {
                str(rank): [polygon_to_jsonable(p) for p in polys]
                for rank, polys in rs.regions[name].items()
            }
            for name in rs.entity_names
        },
    }


def line_to_jsonable(line: HomLine) -> dict:
    return {"u": line.u, "v": line.v, "w": line.w, "value": line.value}


def point_to_jsonable(pt: HomPoint) -> dict:
    return {"x": pt.x, "y": pt.y, "h": pt.h}


def placement_to_jsonable(p: Placement) -> dict:
    return {
        "name": p.name,
        "kind": p.kind,
        "coords": list(p.coords),
        "dual": p.dual,
        "prior_dependent": p.prior_dependent,
    }


def curve_to_jsonable(c: Curve) -> dict:
    return {
        "kind": c.kind,
        "param": c.param,
        "points": [[float(x), float(y)] for x, y in c.points],
    }


def gridline_to_jsonable(g: GridLine) -> dict:
    return {"axis": g.axis, "source": g.source, "position": g.position}
