"""Read-only JSON API over one immutable artifact snapshot.

The service is a thin adapter: every response body is the corresponding
library call on the snapshot (plus pagination), so clients can reproduce
any number offline. Recomputation happens in the CLI; to pick up new
artifacts, restart the process with the new files.

Error protocol: {"error": {"code": <int>, "message": <str>}} with 404 for
unknown metrics/nodes, 400 for invalid query parameters (including type
errors), and 413 for subgraphs too large for a browser renderer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from .analytics import AnalyticsError, CorrelationMatrix, correlations, histogram, rank
from .centrality import COUNTERS, METRICS, CentralityTable, VARIABLES
from .graph import FlowGraph
from .projection import SubgraphProjection, percentile_subgraph, to_json_document

MAX_LIMIT = 5000
DEFAULT_LIMIT = 100
MAX_SUBGRAPH_NODES = 5000
DEFAULT_SATURATION = 95.0
DEFAULT_PROJECTION_PERCENTILE = 97.0


@dataclass
class Snapshot:
    """Everything the service serves, loaded once and never mutated."""

    graph: FlowGraph
    table: CentralityTable
    matrix: CorrelationMatrix
    saturation_percentile: float = DEFAULT_SATURATION
    projection_percentile: float = DEFAULT_PROJECTION_PERCENTILE
    default_projections: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def load(cls, artifacts: str | Path, graph_name: str = "filtered.fg",
             table_name: str = "centrality.csv",
             saturation_percentile: float = DEFAULT_SATURATION,
             projection_percentile: float = DEFAULT_PROJECTION_PERCENTILE,
             ) -> "Snapshot":
        root = Path(artifacts)
        graph = FlowGraph.load(root / graph_name)
        table = CentralityTable.from_csv(root / table_name)
        snap = cls(
            graph=graph,
            table=table,
            matrix=correlations(table),
            saturation_percentile=saturation_percentile,
            projection_percentile=projection_percentile,
        )
        for metric in METRICS:
            snap.default_projections[metric] = percentile_subgraph(
                graph, table, metric, projection_percentile)
        return snap

    def projection(self, metric: str, percentile: float) -> SubgraphProjection:
        if percentile == self.projection_percentile \
                and metric in self.default_projections:
            return self.default_projections[metric]
        key = (metric, percentile)
        found = self._cache.get(key)
        if found is None:
            found = percentile_subgraph(self.graph, self.table,
                                        metric, percentile)
            if len(self._cache) >= 32:  # bounded; oldest entry out
                self._cache.pop(next(iter(self._cache)))
            self._cache[key] = found
        return found


def _error(code: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=code,
                        content={"error": {"code": code, "message": message}})


def create_app(snapshot: Snapshot, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="flowrank", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    # registered on the starlette base class so the router's own 404s
    # (unknown paths) use the same error envelope as ours
    @app.exception_handler(StarletteHTTPException)
    async def on_http_error(request: Request, exc: StarletteHTTPException):
        return _error(exc.status_code, str(exc.detail))

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request,
                                  exc: RequestValidationError):
        return _error(400, "invalid query parameter")

    def require_metric(name: str) -> str:
        if name not in VARIABLES:
            raise HTTPException(404, f"unknown metric {name!r}")
        return name

    @app.get("/api/meta")
    def meta():
        return {
            "metrics": list(VARIABLES),
            "node_count": snapshot.graph.node_count,
            "edge_count": snapshot.graph.undirected_edge_count,
            "config": {
                "saturation_percentile": snapshot.saturation_percentile,
                "projection_percentile": snapshot.projection_percentile,
            },
        }

    @app.get("/api/ranking")
    def ranking(metric: str, limit: int = DEFAULT_LIMIT, offset: int = 0,
                saturate: float | None = None):
        require_metric(metric)
        if not 1 <= limit <= MAX_LIMIT:
            raise HTTPException(400, f"limit must be in [1, {MAX_LIMIT}]")
        if offset < 0:
            raise HTTPException(400, "offset must be >= 0")
        p = snapshot.saturation_percentile if saturate is None else saturate
        if p == 0:
            p = None
        elif not 0 < p <= 100:
            raise HTTPException(400, "saturate must be in (0, 100] or 0")
        ranked = rank(snapshot.table, metric, p)
        page = ranked.entries[offset:offset + limit]
        return {
            "metric": metric,
            "saturation_percentile": p,
            "total": len(ranked.entries),
            "offset": offset,
            "limit": limit,
            "entries": [
                {
                    "rank": e.rank,
                    "user_key": e.user_key,
                    "screen_name": e.screen_name,
                    "values": e.values,
                    "saturated": e.saturated,
                }
                for e in page
            ],
        }

    @app.get("/api/node/{user_key}")
    def node(user_key: str):
        if user_key not in snapshot.table:
            raise HTTPException(404, f"unknown node {user_key!r}")
        row = snapshot.table.row(user_key)
        g = snapshot.graph
        edges = [
            {"neighbor": nbr,
             "screen_name": g.node(nbr).screen_name,
             "flow": g.undirected_weight(user_key, nbr)}
            for nbr in g.neighbors(user_key)
        ]
        return {
            "user_key": user_key,
            "screen_name": row["screen_name"],
            "metrics": {name: row[name] for name in METRICS},
            "strength": row["strength"],
            "popularity": {name: row[name] for name in COUNTERS},
            "edges": edges,
        }

    @app.get("/api/subgraph")
    def subgraph(metric: str, percentile: float | None = None):
        require_metric(metric)
        p = snapshot.projection_percentile if percentile is None else percentile
        if not 0 <= p < 100:
            raise HTTPException(400, "percentile must be in [0, 100)")
        projection = snapshot.projection(metric, p)
        if projection.node_count > MAX_SUBGRAPH_NODES:
            raise HTTPException(
                413,
                f"subgraph has {projection.node_count} nodes "
                f"(limit {MAX_SUBGRAPH_NODES}); raise the percentile",
            )
        return json.loads(to_json_document(projection))

    @app.get("/api/correlations")
    def correlation_matrix():
        return snapshot.matrix.as_dict()

    @app.get("/api/histogram")
    def histogram_endpoint(variable: str, bins: int = 30, log: bool = False):
        if variable not in VARIABLES:
            raise HTTPException(404, f"unknown variable {variable!r}")
        try:
            spec = histogram(snapshot.table, variable, bins, log)
        except AnalyticsError as exc:
            raise HTTPException(400, str(exc)) from exc
        return spec.as_dict()

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="dashboard")

    return app
