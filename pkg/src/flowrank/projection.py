"""Percentile-threshold leader subgraphs and their export formats.

A projection keeps every node whose reference-metric value reaches the
nearest-rank percentile threshold, the induced edges between them (with
their undirected flows), and the component decomposition. Node display
size is the saturated metric value min-max scaled to [1, 10] render
units, so one enormous leader cannot swamp the drawing. Exports: GraphML
(all metrics as node attributes), DOT (size as width), and the dashboard
JSON wire format, which round-trips losslessly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from . import graph as graph_mod
from .analytics import nearest_rank_threshold, saturate
from .centrality import CentralityTable, VARIABLES
from .graph import FlowGraph

SIZE_MIN = 1.0
SIZE_MAX = 10.0

FORMATS = ("graphml", "dot", "json")


class ProjectionError(ValueError):
    pass


@dataclass(frozen=True)
class SubgraphProjection:
    reference_metric: str
    percentile: float | None
    threshold_value: float
    nodes: tuple[str, ...]                   # sorted
    labels: dict
    metrics: dict                            # key -> {variable: value}
    sizes: dict                              # key -> render units in [1, 10]
    edges: tuple[tuple[str, str, int], ...]  # u < v, undirected flow
    components: tuple[tuple[str, ...], ...]

    @property
    def empty(self) -> bool:
        return not self.nodes

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def _display_sizes(keys, saturated: dict) -> dict:
    values = [saturated[k] for k in keys]
    if not values:
        return {}
    lo, hi = min(values), max(values)
    if hi == lo:
        mid = (SIZE_MIN + SIZE_MAX) / 2.0
        return {k: mid for k in keys}
    span = hi - lo
    return {
        k: SIZE_MIN + (SIZE_MAX - SIZE_MIN) * (saturated[k] - lo) / span
        for k in keys
    }


def _assemble(g: FlowGraph, table: CentralityTable, metric: str,
              retained: list[str], percentile: float | None,
              threshold: float) -> SubgraphProjection:
    retained = sorted(retained)
    kept = set(retained)
    edges = tuple(
        (u, v, w) for u, v, w in g.undirected_edges()
        if u in kept and v in kept
    )
    # component ordering is delegated to the graph module so projections
    # and pipeline reports agree
    induced = graph_mod.from_weighted_edges(edges, nodes=retained)
    components = tuple(tuple(c) for c in induced.connected_components())
    sat_column = dict(zip(table.keys, saturate(table.column(metric), 95.0)))
    metrics = {
        k: {name: table.value(k, name) for name in VARIABLES}
        for k in retained
    }
    labels = {k: (g.node(k).screen_name if g.has_node(k) else "")
              for k in retained}
    return SubgraphProjection(
        reference_metric=metric,
        percentile=percentile,
        threshold_value=threshold,
        nodes=tuple(retained),
        labels=labels,
        metrics=metrics,
        sizes=_display_sizes(retained, {k: sat_column[k] for k in retained}),
        edges=edges,
        components=components,
    )


def percentile_subgraph(g: FlowGraph, table: CentralityTable, metric: str,
                        p: float) -> SubgraphProjection:
    """Induced subgraph on nodes with metric >= the p-percentile threshold."""
    if metric not in VARIABLES:
        raise ProjectionError(f"unknown metric {metric!r}")
    if not 0 <= p < 100:
        raise ProjectionError(f"percentile {p} outside [0, 100)")
    if len(table) == 0:
        return SubgraphProjection(metric, p, math.nan, (), {}, {}, {}, (), ())
    column = table.column(metric)
    threshold = nearest_rank_threshold(column, p)
    retained = [k for k in table.keys if table.value(k, metric) >= threshold]
    return _assemble(g, table, metric, retained, p, threshold)


def top_n_subgraph(g: FlowGraph, table: CentralityTable, metric: str,
                   n: int) -> SubgraphProjection:
    """Fixed node budget: the n best by (metric desc, user_key asc)."""
    if metric not in VARIABLES:
        raise ProjectionError(f"unknown metric {metric!r}")
    if n < 1:
        raise ProjectionError("top-N budget must be >= 1")
    if len(table) == 0:
        return SubgraphProjection(metric, None, math.nan, (), {}, {}, {}, (), ())
    column = table.column(metric)
    order = sorted(range(len(table)),
                   key=lambda i: (-column[i], table.keys[i]))[:n]
    retained = [table.keys[i] for i in order]
    threshold = min(float(column[i]) for i in order)
    return _assemble(g, table, metric, retained, None, threshold)


# --- exports ---


def to_json_document(projection: SubgraphProjection) -> str:
    payload = {
        "nodes": [
            {
                "id": k,
                "label": projection.labels.get(k, ""),
                "metrics": projection.metrics[k],
                "size": projection.sizes[k],
            }
            for k in projection.nodes
        ],
        "links": [
            {"source": u, "target": v, "flow": w}
            for u, v, w in projection.edges
        ],
        "components": [list(c) for c in projection.components],
        "meta": {
            "metric": projection.reference_metric,
            "percentile": projection.percentile,
            "threshold": None if math.isnan(projection.threshold_value)
                         else projection.threshold_value,
            "empty": projection.empty,
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def from_json_document(document: str) -> SubgraphProjection:
    obj = json.loads(document)
    meta = obj["meta"]
    nodes = tuple(node["id"] for node in obj["nodes"])
    threshold = meta["threshold"]
    return SubgraphProjection(
        reference_metric=meta["metric"],
        percentile=meta["percentile"],
        threshold_value=math.nan if threshold is None else float(threshold),
        nodes=nodes,
        labels={node["id"]: node["label"] for node in obj["nodes"]},
        metrics={node["id"]: dict(node["metrics"]) for node in obj["nodes"]},
        sizes={node["id"]: float(node["size"]) for node in obj["nodes"]},
        edges=tuple((l["source"], l["target"], int(l["flow"]))
                    for l in obj["links"]),
        components=tuple(tuple(c) for c in obj["components"]),
    )


def to_graphml(projection: SubgraphProjection) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
    ]
    attrs = ["label", "size", *VARIABLES]
    for name in attrs:
        kind = "string" if name == "label" else "double"
        lines.append(
            f'  <key id="{name}" for="node" attr.name="{name}" '
            f'attr.type="{kind}"/>'
        )
    lines.append(
        '  <key id="flow" for="edge" attr.name="flow" attr.type="int"/>'
    )
    lines.append('  <graph edgedefault="undirected">')
    for k in projection.nodes:
        lines.append(f"    <node id={quoteattr(k)}>")
        lines.append(
            f'      <data key="label">{escape(projection.labels.get(k, ""))}</data>'
        )
        lines.append(f'      <data key="size">{projection.sizes[k]!r}</data>')
        for name in VARIABLES:
            lines.append(
                f'      <data key="{name}">{projection.metrics[k][name]!r}</data>'
            )
        lines.append("    </node>")
    for u, v, w in projection.edges:
        lines.append(f"    <edge source={quoteattr(u)} target={quoteattr(v)}>")
        lines.append(f'      <data key="flow">{w}</data>')
        lines.append("    </edge>")
    lines.append("  </graph>")
    lines.append("</graphml>")
    return "\n".join(lines) + "\n"


def _dot_quote(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(projection: SubgraphProjection) -> str:
    lines = ["graph leaders {", "  node [shape=circle fixedsize=true];"]
    for k in projection.nodes:
        label = projection.labels.get(k) or k
        width = projection.sizes[k] / 10.0  # inches; keeps glyphs sane
        lines.append(
            f"  {_dot_quote(k)} [label={_dot_quote(label)} width={width:.3f}];"
        )
    for u, v, w in projection.edges:
        lines.append(f"  {_dot_quote(u)} -- {_dot_quote(v)} [weight={w}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(projection: SubgraphProjection, format: str) -> str:
    if format == "json":
        return to_json_document(projection)
    if format == "graphml":
        return to_graphml(projection)
    if format == "dot":
        return to_dot(projection)
    raise ProjectionError(f"unknown export format {format!r}")
