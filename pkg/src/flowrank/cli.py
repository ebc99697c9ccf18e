"""Pipeline command line.

Each subcommand is one pipeline stage reading and writing plain files, so
a full run is a sequence of small, resumable, diffable steps:

    flowrank corpus   --out work
    flowrank ingest   work/corpus.jsonl --out work
    flowrank build    --out work
    flowrank filter   --min-degree 3 --out work
    flowrank centrality --out work
    flowrank rank     --metric eigenvector --out work
    flowrank stats    --out work
    flowrank project  --metric cfbetweenness --percentile 97 --out work
    flowrank serve    --artifacts work --port 8040

All outputs are written atomically (temp file + rename) and every stage
is a pure function of its inputs and flags, so reruns are byte-identical.
A config file (flat key=value lines) supplies defaults; flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import analytics, centrality, corpus, graph, ingest, projection

DEFAULT_PORT = 8040


@dataclass
class PipelineConfig:
    keywords: str = ""              # path to a keyword file; empty = defaults
    min_degree: int = 3
    view: str = "undirected"
    eigenvector_tol: float = 1e-8
    # real interaction graphs can have a thin spectral gap; the pipeline
    # budget is deliberately above the library-call default
    eigenvector_max_iter: int = 20000
    saturation_percentile: float = 95.0
    projection_percentile: float = 97.0
    workers: int = 1
    dense_threshold: int = 2000

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        values = {}
        types = {f.name: f.type for f in fields(cls)}
        casts = {"keywords": str, "min_degree": int, "view": str,
                 "eigenvector_tol": float, "eigenvector_max_iter": int,
                 "saturation_percentile": float,
                 "projection_percentile": float,
                 "workers": int, "dense_threshold": int}
        for line_no, raw in enumerate(
                Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in types:
                raise ValueError(f"{path}:{line_no}: unknown key {key!r}")
            values[key] = casts[key](value.strip())
        return cls(**values)


def atomic_write_via(path: Path, write_fn) -> None:
    """Run write_fn(tmp_path) and rename the result into place."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    os.close(fd)
    try:
        write_fn(tmp)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path: Path, text: str) -> None:
    atomic_write_via(path, lambda tmp: Path(tmp).write_text(
        text, encoding="utf-8"))


def _emit(args, payload: dict) -> None:
    if not args.quiet:
        print(json.dumps(payload, sort_keys=True))


def _outpath(args, default_name: str, override: str | None = None) -> Path:
    if override:
        return Path(override)
    return Path(args.out) / default_name


def _load_config(args) -> PipelineConfig:
    cfg = PipelineConfig.from_file(args.config) if args.config \
        else PipelineConfig()
    overrides = {}
    for field in fields(PipelineConfig):
        value = getattr(args, field.name, None)
        if value is not None:
            overrides[field.name] = value
    return replace(cfg, **overrides) if overrides else cfg


# --- subcommand bodies ---


def cmd_corpus(args) -> int:
    out = _outpath(args, "corpus.jsonl", args.out_file)
    out.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    for line in corpus.generate_records(args.seed, args.records, args.users):
        lines.append(line)
    atomic_write_text(out, "\n".join(lines) + "\n")
    _emit(args, {"stage": "corpus", "records": len(lines),
                 "seed": args.seed, "path": str(out)})
    return 0


def cmd_ingest(args) -> int:
    cfg = _load_config(args)
    keywords = ingest.KeywordSet.from_file(cfg.keywords) if cfg.keywords \
        else ingest.KeywordSet()
    report = ingest.IngestReport()
    out = _outpath(args, "interactions.jsonl", args.out_file)

    def stream():
        for path in args.inputs:
            yield from ingest.ingest_file(path, keywords, report=report)

    out.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=out.parent, prefix=f".{out.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            for record in stream():
                handle.write(ingest.record_to_json(record))
                handle.write("\n")
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    _emit(args, {"stage": "ingest", "path": str(out), **report.as_dict()})
    return 0


def cmd_build(args) -> int:
    source = args.interactions or str(Path(args.out) / "interactions.jsonl")
    g = graph.build_graph(ingest.read_interactions(source))
    out = _outpath(args, "graph.fg", args.out_file)
    atomic_write_via(out, g.save)
    _emit(args, {"stage": "build", "path": str(out), **g.stats().as_dict()})
    return 0


def cmd_filter(args) -> int:
    cfg = _load_config(args)
    source = args.graph or str(Path(args.out) / "graph.fg")
    g = graph.FlowGraph.load(source)
    before = g.stats().as_dict()
    filtered = g.filter_min_degree(cfg.min_degree)
    if args.largest_component:
        filtered = filtered.largest_component()
    out = _outpath(args, "filtered.fg", args.out_file)
    atomic_write_via(out, filtered.save)
    _emit(args, {"stage": "filter", "path": str(out),
                 "min_degree": cfg.min_degree,
                 "largest_component": bool(args.largest_component),
                 "before": before, "after": filtered.stats().as_dict()})
    return 0


def cmd_centrality(args) -> int:
    cfg = _load_config(args)
    source = args.graph or str(Path(args.out) / "filtered.fg")
    g = graph.FlowGraph.load(source)
    table = centrality.compute_all(g, centrality.CentralityConfig(
        view=cfg.view,
        eigenvector_tol=cfg.eigenvector_tol,
        eigenvector_max_iter=cfg.eigenvector_max_iter,
        dense_threshold=cfg.dense_threshold,
        workers=cfg.workers,
    ))
    out = _outpath(args, "centrality.csv", args.out_file)
    atomic_write_via(out, table.to_csv)
    _emit(args, {"stage": "centrality", "path": str(out),
                 "nodes": len(table), "view": cfg.view})
    return 0


def cmd_rank(args) -> int:
    cfg = _load_config(args)
    source = args.table or str(Path(args.out) / "centrality.csv")
    table = centrality.CentralityTable.from_csv(source)
    saturate_p = None if args.no_saturate else cfg.saturation_percentile
    ranking = analytics.rank(table, args.metric, saturate_p)
    if args.top and args.top > 0:
        ranking = analytics.RankedList(
            ranking.reference_metric, ranking.saturation_percentile,
            ranking.top(args.top))
    out = _outpath(args, "ranking.csv", args.out_file)
    atomic_write_via(out, lambda tmp: analytics.ranking_to_csv(ranking, tmp))
    _emit(args, {"stage": "rank", "path": str(out), "metric": args.metric,
                 "entries": len(ranking.entries),
                 "saturation_percentile": saturate_p})
    return 0


def cmd_stats(args) -> int:
    source = args.table or str(Path(args.out) / "centrality.csv")
    table = centrality.CentralityTable.from_csv(source)
    matrix = analytics.correlations(table)
    atomic_write_via(_outpath(args, "correlations.csv"),
                     lambda tmp: analytics.correlations_to_csv(matrix, tmp))
    specs = [analytics.histogram(table, name, args.bins, args.log_bins)
             for name in centrality.VARIABLES]
    payload = {"histograms": [spec.as_dict() for spec in specs]}
    atomic_write_text(_outpath(args, "histograms.json"),
                      json.dumps(payload, indent=2, sort_keys=True) + "\n")
    rows = [
        {"variable_x": vx, "variable_y": vy, "user_key": key, "x": x, "y": y}
        for vx, vy, key, x, y in analytics.scatter_matrix_export(table)
    ]
    atomic_write_text(_outpath(args, "scatter.json"),
                      json.dumps({"rows": rows},
                                 separators=(",", ":")) + "\n")
    _emit(args, {"stage": "stats", "variables": list(matrix.variables),
                 "out": str(Path(args.out))})
    return 0


def cmd_project(args) -> int:
    cfg = _load_config(args)
    graph_path = args.graph or str(Path(args.out) / "filtered.fg")
    table_path = args.table or str(Path(args.out) / "centrality.csv")
    g = graph.FlowGraph.load(graph_path)
    table = centrality.CentralityTable.from_csv(table_path)
    if args.top_n:
        proj = projection.top_n_subgraph(g, table, args.metric, args.top_n)
    else:
        proj = projection.percentile_subgraph(
            g, table, args.metric, cfg.projection_percentile)
    document = projection.export(proj, args.format)
    out = _outpath(args, f"projection.{args.format}", args.out_file)
    atomic_write_text(out, document)
    _emit(args, {"stage": "project", "path": str(out),
                 "metric": args.metric,
                 "percentile": proj.percentile,
                 "threshold": proj.threshold_value,
                 "nodes": proj.node_count, "edges": proj.edge_count})
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import Snapshot, create_app

    snapshot = Snapshot.load(args.artifacts,
                             graph_name=args.graph_name,
                             table_name=args.table_name)
    app = create_app(snapshot, static_dir=args.static or None)
    if not args.quiet:
        print(json.dumps({"stage": "serve", "port": args.port,
                          "nodes": snapshot.graph.node_count}, sort_keys=True))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


# --- parser wiring ---


def _add_common(sub):
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("--out", default=".", help="artifact directory")
    sub.add_argument("--quiet", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowrank",
        description="Flow-weighted interaction graphs and influence metrics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corpus", help="generate the synthetic demo corpus")
    _add_common(p)
    p.add_argument("--seed", type=int, default=corpus.DEFAULT_SEED)
    p.add_argument("--records", type=int, default=corpus.DEFAULT_RECORDS)
    p.add_argument("--users", type=int, default=2600)
    p.add_argument("--out-file")
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("ingest", help="tweet JSONL -> interaction events")
    _add_common(p)
    p.add_argument("inputs", nargs="+", help="tweet JSONL files")
    p.add_argument("--keywords", help="keyword file (one per line)")
    p.add_argument("--out-file")
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("build", help="interaction events -> flow graph")
    _add_common(p)
    p.add_argument("--interactions")
    p.add_argument("--out-file")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("filter", help="degree filter + largest component")
    _add_common(p)
    p.add_argument("--graph")
    p.add_argument("--min-degree", type=int, dest="min_degree")
    p.add_argument("--no-largest-component", dest="largest_component",
                   action="store_false")
    p.add_argument("--out-file")
    p.set_defaults(fn=cmd_filter, largest_component=True)

    p = sub.add_parser("centrality", help="compute the seven-metric table")
    _add_common(p)
    p.add_argument("--graph")
    p.add_argument("--view", choices=("undirected", "directed"))
    p.add_argument("--workers", type=int)
    p.add_argument("--out-file")
    p.set_defaults(fn=cmd_centrality)

    p = sub.add_parser("rank", help="order users by a reference metric")
    _add_common(p)
    p.add_argument("--table")
    p.add_argument("--metric", required=True, choices=centrality.VARIABLES)
    p.add_argument("--top", type=int, default=0, help="0 keeps all rows")
    p.add_argument("--saturate", type=float, dest="saturation_percentile")
    p.add_argument("--no-saturate", action="store_true")
    p.add_argument("--out-file")
    p.set_defaults(fn=cmd_rank)

    p = sub.add_parser("stats", help="correlations, histograms, scatter data")
    _add_common(p)
    p.add_argument("--table")
    p.add_argument("--bins", type=int, default=30)
    p.add_argument("--log-bins", action="store_true")
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("project", help="percentile leader subgraph export")
    _add_common(p)
    p.add_argument("--graph")
    p.add_argument("--table")
    p.add_argument("--metric", required=True, choices=centrality.VARIABLES)
    p.add_argument("--percentile", type=float, dest="projection_percentile")
    p.add_argument("--top-n", type=int, dest="top_n")
    p.add_argument("--format", choices=projection.FORMATS, default="json")
    p.add_argument("--out-file")
    p.set_defaults(fn=cmd_project)

    p = sub.add_parser("serve", help="read-only HTTP API over artifacts")
    _add_common(p)
    p.add_argument("--artifacts", default=".")
    p.add_argument("--graph-name", default="filtered.fg")
    p.add_argument("--table-name", default="centrality.csv")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=DEFAULT_PORT)
    p.add_argument("--static", help="directory of dashboard assets to mount")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (OSError, ValueError) as exc:
        print(f"flowrank {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
