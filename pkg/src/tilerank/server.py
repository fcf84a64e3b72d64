"""JSON-over-HTTP service exposing the toolkit to UIs.

Stateless except for uploaded rosters, kept in a token-keyed in-memory
store (immutable values behind a lock).  All computation delegates to the
pure modules; responses reuse the serialization schemas of `tilerank.io`.
"""

from __future__ import annotations

import secrets
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import io as tio
from .catalog import CatalogError, catalog_score
from .perf import PerfError, TileCoord
from .regions import rank_r_regions
from .rocgeom import iso_line, pencil_vertex, vertex_zone
from .stats import SampleSpec, correlation_tile
from .tile import gamma_curve, prior_grid_overlay, standard_placements, value_tile


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


class RosterStore:
    """Token-keyed immutable roster store; safe for concurrent handlers."""

    def __init__(self):
        self._lock = threading.Lock()
        self._rosters: dict[str, tio.Roster] = {}

    def put(self, roster: tio.Roster) -> str:
        token = secrets.token_hex(16)
        with self._lock:
            self._rosters[token] = roster
        return token

    def get(self, token: str) -> tio.Roster:
        with self._lock:
            roster = self._rosters.get(token)
        if roster is None:
            raise ApiError(404, f"unknown roster token {token!r}")
        return roster


def _q(params: dict, name: str, default=None):
    vals = params.get(name)
    if not vals:
        if default is not None:
            return default
        raise ApiError(400, f"missing query parameter {name!r}")
    return vals[0]


def _q_float(params, name, default=None) -> float:
    raw = _q(params, name, default)
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ApiError(400, f"parameter {name!r} must be a number, got {raw!r}") from None


def _q_int(params, name, default=None) -> int:
    raw = _q(params, name, default)
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise ApiError(400, f"parameter {name!r} must be an integer, got {raw!r}") from None


class Api:
    """Route handlers, separated from HTTP plumbing for direct testing."""

    def __init__(self):
        self.store = RosterStore()

    def post_roster(self, body: bytes, content_type: str) -> dict:
        import json

        try:
            if "csv" in content_type:
                import csv as _csv
                import io as _io

                entities_doc = []
                for lineno, row in enumerate(_csv.reader(_io.StringIO(body.decode())), start=1):
                    if not row or not any(c.strip() for c in row):
                        continue
                    if row[0].strip().lower() == "name":
                        continue
                    if len(row) != 5:
                        raise ApiError(
                            400, f"line {lineno}: expected 5 columns name,tn,fp,fn,tp"
                        )
                    entities_doc.append(
                        {"name": row[0], "tn": row[1], "fp": row[2], "fn": row[3], "tp": row[4]}
                    )
                doc = {"entities": entities_doc}
            else:
                doc = json.loads(body.decode())
            shift_raw = doc.get("shift_to") if isinstance(doc, dict) else None
            entities = tio.entities_from_jsonable(doc, where="upload")
            roster = tio.build_roster(
                entities, None if shift_raw is None else float(shift_raw)
            )
        except (tio.RosterError, PerfError, ValueError, IndexError) as exc:
            raise ApiError(400, str(exc)) from exc
        token = self.store.put(roster)
        return {"token": token, "roster": tio.roster_to_jsonable(roster)}

    def _roster_for(self, params: dict) -> tio.Roster:
        """Uploaded roster, optionally re-derived at slider priors."""
        roster = self.store.get(_q(params, "token"))
        if "shift_to" not in params:
            return roster
        try:
            return tio.build_roster(list(roster.entities), _q_float(params, "shift_to"))
        except (tio.RosterError, PerfError) as exc:
            raise ApiError(400, str(exc)) from exc

    def get_tile(self, params: dict) -> dict:
        roster = self._roster_for(params)
        name = _q(params, "entity")
        try:
            entity = roster.get(name)
        except KeyError:
            raise ApiError(404, f"unknown entity {name!r}") from None
        res = _q_int(params, "res", 101)
        try:
            grid = value_tile(entity.performance, res)
        except ValueError as exc:
            raise ApiError(400, str(exc)) from exc
        grid.meta["entity"] = name
        grid.meta["priors"] = [roster.priors[0], roster.priors[1]]
        return tio.grid_to_jsonable(grid)

    def get_regions(self, params: dict) -> dict:
        roster = self._roster_for(params)
        rank = _q_int(params, "rank", 1)
        pts = _q_int(params, "pts", 64)
        try:
            rs = rank_r_regions(list(roster.entities), roster.priors, rank, pts)
        except (PerfError, ValueError) as exc:
            raise ApiError(400, str(exc)) from exc
        doc = tio.regionset_to_jsonable(rs)
        doc["rank"] = rank
        return doc

    def get_correlate(self, params: dict) -> dict:
        raw_target = _q(params, "target")
        try:
            if "," in raw_target:
                a, b = (float(v) for v in raw_target.split(","))
                target, label = TileCoord(a, b), f"R({raw_target})"
            else:
                catalog_score(raw_target, _probe())
                target = lambda p: catalog_score(raw_target, p)  # noqa: E731
                label = raw_target
            spec = SampleSpec(
                _q_int(params, "n", 10_000),
                _q_int(params, "seed", 0),
                prior_neg=(
                    None if "prior_neg" not in params else _q_float(params, "prior_neg")
                ),
            )
            grid = correlation_tile(target, spec, resolution=_q_int(params, "res", 51),
                                    target_name=label)
        except (CatalogError, PerfError, ValueError) as exc:
            raise ApiError(400, str(exc)) from exc
        return tio.grid_to_jsonable(grid)

    def get_roc(self, params: dict) -> dict:
        try:
            coord = TileCoord(_q_float(params, "a"), _q_float(params, "b"))
            pn = _q_float(params, "prior_neg")
            priors = (pn, 1.0 - pn)
            doc = {
                "kind": "roc_pencil",
                "coord": [coord.a, coord.b],
                "priors": [priors[0], priors[1]],
                "vertex": tio.point_to_jsonable(pencil_vertex(coord, priors)),
                "zone": vertex_zone(coord, priors),
                "lines": [
                    tio.line_to_jsonable(iso_line(v, coord, priors)) for v in (0.0, 1.0)
                ],
            }
        except (PerfError, ValueError) as exc:
            raise ApiError(400, str(exc)) from exc
        token = params.get("token")
        if token:
            roster = self.store.get(token[0])
            from .catalog import fpr, tpr

            doc["entities"] = [
                {"name": e.name, "fpr": fpr(e.performance), "tpr": tpr(e.performance)}
                for e in roster.entities
            ]
        return doc

    def get_placements(self, params: dict) -> dict:
        prior_neg = None
        if "priors" in params:
            prior_neg = _q_float(params, "priors")
        elif "prior_neg" in params:
            prior_neg = _q_float(params, "prior_neg")
        try:
            placements = standard_placements(prior_neg)
        except PerfError as exc:
            raise ApiError(400, str(exc)) from exc
        return {
            "kind": "placements",
            "prior_neg": prior_neg,
            "placements": [tio.placement_to_jsonable(p) for p in placements],
        }

    def get_curves(self, params: dict) -> dict:
        kind = _q(params, "kind", "gamma_pi")
        param = _q_float(params, "param")
        n = _q_int(params, "n", 257)
        try:
            curve = gamma_curve(kind, param, n)
        except (PerfError, ValueError) as exc:
            raise ApiError(400, str(exc)) from exc
        return tio.curve_to_jsonable(curve)

    def get_grid_overlay(self, params: dict) -> dict:
        pn = _q_float(params, "prior_neg")
        step = _q_float(params, "step", 0.1)
        try:
            lines = prior_grid_overlay((pn, 1.0 - pn), step)
        except (PerfError, ValueError) as exc:
            raise ApiError(400, str(exc)) from exc
        return {"kind": "prior_grid", "prior_neg": pn,
                "lines": [tio.gridline_to_jsonable(g) for g in lines]}


def _probe():
    from .perf import Performance

    return Performance(0.25, 0.25, 0.25, 0.25)


_ROUTES = {
    "/tile": Api.get_tile,
    "/regions": Api.get_regions,
    "/correlate": Api.get_correlate,
    "/roc": Api.get_roc,
    "/placements": Api.get_placements,
    "/curves": Api.get_curves,
    "/grid": Api.get_grid_overlay,
}

_STATIC_TYPES = {
    ".html": "text/html",
    ".js": "text/javascript",
    ".css": "text/css",
    ".map": "application/json",
    ".svg": "image/svg+xml",
}


def make_handler(api: Api, static_dir: Path | None):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):  # quiet by default
            pass

        def _send(self, status: int, payload: str, content_type="application/json"):
            body = payload.encode()
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _send_error(self, exc: ApiError):
            self._send(exc.status, tio.dumps({"error": str(exc)}))

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.end_headers()

        def do_POST(self):
            url = urlparse(self.path)
            if url.path != "/roster":
                self._send(404, tio.dumps({"error": f"no such endpoint {url.path}"}))
                return
            length = int(self.headers.get("Content-Length", "0"))
            body = self.rfile.read(length)
            try:
                doc = api.post_roster(body, self.headers.get("Content-Type", ""))
            except ApiError as exc:
                self._send_error(exc)
                return
            self._send(200, tio.dumps(doc))

        def do_GET(self):
            url = urlparse(self.path)
            handler = _ROUTES.get(url.path)
            if handler is not None:
                try:
                    doc = handler(api, parse_qs(url.query))
                except ApiError as exc:
                    self._send_error(exc)
                    return
                self._send(200, tio.dumps(doc))
                return
            self._serve_static(url.path)

        def _serve_static(self, path: str):
            if static_dir is None:
                self._send(404, tio.dumps({"error": f"no such endpoint {path}"}))
                return
            rel = "index.html" if path in ("/", "") else path.lstrip("/")
            target = (static_dir / rel).resolve()
            if not str(target).startswith(str(static_dir.resolve())) or not target.is_file():
                self._send(404, tio.dumps({"error": f"not found: {path}"}))
                return
            ctype = _STATIC_TYPES.get(target.suffix, "application/octet-stream")
            self._send(200, target.read_text(), content_type=ctype)

    return Handler


def make_server(host: str, port: int, static_dir: Path | None = None) -> ThreadingHTTPServer:
    api = Api()
    if static_dir is None:
        default = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        static_dir = default if default.is_dir() else None
    return ThreadingHTTPServer((host, port), make_handler(api, static_dir))


def serve(host: str, port: int, static_dir: Path | None = None) -> None:
    server = make_server(host, port, static_dir)
    where = f"http://{host}:{port}"
    print(f"tilerank API listening on {where}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
