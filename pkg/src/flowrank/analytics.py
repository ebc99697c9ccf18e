"""Ranking, percentile saturation, correlations, and distributions.

The eleven analysis variables are the seven centrality metrics plus the
four popularity counters (see centrality.VARIABLES). Percentiles are
nearest-rank on the ascending sort throughout: threshold = the value at
1-based index ceil(p/100 * n), clamped to at least 1 — exact on integer
data and free of interpolation choices.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .centrality import COUNTERS, CentralityTable, VARIABLES


class AnalyticsError(ValueError):
    pass


def nearest_rank_threshold(values, p: float) -> float:
    """Nearest-rank percentile of a non-empty collection."""
    if not 0 <= p <= 100:
        raise AnalyticsError(f"percentile {p} outside [0, 100]")
    ordered = sorted(float(v) for v in values)
    if not ordered:
        raise AnalyticsError("percentile of an empty collection")
    idx = max(1, math.ceil(p / 100.0 * len(ordered)))
    return ordered[idx - 1]


def saturate(values, p: float = 95.0) -> list[float]:
    """Clip every value above the nearest-rank p-percentile to it."""
    if not 0 < p <= 100:
        raise AnalyticsError(f"saturation percentile {p} outside (0, 100]")
    values = [float(v) for v in values]
    if not values:
        return []
    threshold = nearest_rank_threshold(values, p)
    return [v if v <= threshold else threshold for v in values]


@dataclass(frozen=True)
class RankEntry:
    rank: int
    user_key: str
    screen_name: str
    values: dict
    saturated: dict


@dataclass(frozen=True)
class RankedList:
    reference_metric: str
    saturation_percentile: float | None
    entries: tuple[RankEntry, ...]

    def top(self, n: int) -> tuple[RankEntry, ...]:
        return self.entries[:n]


def rank(table: CentralityTable, metric: str,
         saturate_p: float | None = None) -> RankedList:
    """All nodes ordered by the reference metric, descending; ties break
    by ascending user_key; ranks contiguous from 1.

    With saturate_p set, every entry also carries each variable clipped
    at that variable's table-wide percentile (the display convention).
    """
    if metric not in VARIABLES:
        raise AnalyticsError(f"unknown metric {metric!r}")
    column = table.column(metric)
    order = sorted(range(len(table)),
                   key=lambda i: (-column[i], table.keys[i]))
    saturated_cols = {}
    if saturate_p is not None:
        saturated_cols = {
            name: saturate(table.column(name), saturate_p)
            for name in VARIABLES
        }
    entries = []
    for position, i in enumerate(order, start=1):
        values = {name: _cell(name, table.column(name)[i])
                  for name in VARIABLES}
        sat = {name: _cell(name, saturated_cols[name][i])
               for name in VARIABLES} if saturated_cols else {}
        entries.append(RankEntry(
            rank=position,
            user_key=table.keys[i],
            screen_name=table.screen_names[i],
            values=values,
            saturated=sat,
        ))
    return RankedList(metric, saturate_p, tuple(entries))


def _cell(name: str, value) -> float | int:
    return int(value) if name in COUNTERS else float(value)


def ranking_to_csv(ranking: RankedList, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        header = ["rank", "user_key", "screen_name", *VARIABLES]
        if ranking.saturation_percentile is not None:
            header += [f"saturated_{name}" for name in VARIABLES]
        writer.writerow(header)
        for entry in ranking.entries:
            row = [str(entry.rank), entry.user_key, entry.screen_name]
            row += [_format_value(entry.values[name]) for name in VARIABLES]
            if ranking.saturation_percentile is not None:
                row += [_format_value(entry.saturated[name])
                        for name in VARIABLES]
            writer.writerow(row)


def _format_value(value) -> str:
    return str(value) if isinstance(value, int) else repr(value)


@dataclass(frozen=True)
class CorrelationMatrix:
    """Pearson and Spearman over the eleven variables; zero-variance
    variables get None rows/columns instead of NaN."""

    variables: tuple[str, ...]
    pearson: tuple[tuple[float | None, ...], ...]
    spearman: tuple[tuple[float | None, ...], ...]

    def as_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "pearson": [list(row) for row in self.pearson],
            "spearman": [list(row) for row in self.spearman],
        }


def _average_ranks(values: np.ndarray) -> np.ndarray:
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), np.float64)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def _pearson_matrix(columns: list[np.ndarray]) -> list[list[float | None]]:
    k = len(columns)
    centered, norms = [], []
    for col in columns:
        c = col - col.mean()
        centered.append(c)
        norms.append(float(np.sqrt((c * c).sum())))
    out: list[list[float | None]] = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            if norms[i] == 0.0 or norms[j] == 0.0:
                value = None
            elif i == j:
                value = 1.0
            else:
                r = float((centered[i] * centered[j]).sum()
                          / (norms[i] * norms[j]))
                value = min(1.0, max(-1.0, r))
            out[i][j] = out[j][i] = value
    return out


def correlations(table: CentralityTable) -> CorrelationMatrix:
    """Pearson on raw values; Spearman = Pearson on average ranks."""
    if len(table) < 3:
        raise AnalyticsError("correlations need at least 3 nodes")
    raw = [np.asarray(table.column(name), np.float64) for name in VARIABLES]
    ranked = [_average_ranks(col) for col in raw]
    return CorrelationMatrix(
        variables=VARIABLES,
        pearson=tuple(tuple(row) for row in _pearson_matrix(raw)),
        spearman=tuple(tuple(row) for row in _pearson_matrix(ranked)),
    )


def correlations_to_csv(matrix: CorrelationMatrix, path: str | Path) -> None:
    """Both matrices stacked long-form: matrix,variable,<var columns...>."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["matrix", "variable", *matrix.variables])
        for name, rows in (("pearson", matrix.pearson),
                           ("spearman", matrix.spearman)):
            for variable, row in zip(matrix.variables, rows):
                writer.writerow(
                    [name, variable]
                    + ["" if v is None else repr(v) for v in row]
                )


@dataclass(frozen=True)
class HistogramSpec:
    variable: str
    edges: tuple[float, ...]
    counts: tuple[int, ...]
    underflow: int
    log: bool

    def as_dict(self) -> dict:
        return {
            "variable": self.variable,
            "edges": list(self.edges),
            "counts": list(self.counts),
            "underflow": self.underflow,
            "log": self.log,
        }


def histogram(table: CentralityTable, variable: str, bins: int = 30,
              log_bins: bool = False) -> HistogramSpec:
    """Binned distribution of one variable.

    Logarithmic bins span [smallest positive value, max] geometrically;
    non-positive values go to the explicit underflow bin (the long-tail
    variables here are zero-heavy, and zero has no logarithm).
    """
    if bins < 1:
        raise AnalyticsError("bins must be >= 1")
    if variable not in VARIABLES:
        raise AnalyticsError(f"unknown variable {variable!r}")
    values = np.asarray(table.column(variable), np.float64)
    values = values[np.isfinite(values)]
    if log_bins:
        positive = values[values > 0]
        underflow = int(len(values) - len(positive))
        if len(positive) == 0:
            return HistogramSpec(variable, (), (), underflow, True)
        lo, hi = float(positive.min()), float(positive.max())
        if lo == hi:
            edges = np.array([lo, hi])
        else:
            edges = np.geomspace(lo, hi, bins + 1)
        counts, edges = np.histogram(positive, bins=edges)
        return HistogramSpec(variable, tuple(float(e) for e in edges),
                             tuple(int(c) for c in counts), underflow, True)
    if len(values) == 0:
        return HistogramSpec(variable, (), (), 0, False)
    counts, edges = np.histogram(values, bins=bins)
    return HistogramSpec(variable, tuple(float(e) for e in edges),
                         tuple(int(c) for c in counts), 0, False)


def histograms_to_json(specs, path: str | Path) -> None:
    payload = {"histograms": [spec.as_dict() for spec in specs]}
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def scatter_matrix_export(table: CentralityTable):
    """Long-format (variable_x, variable_y, user_key, x, y) rows for every
    unordered variable pair; mirror pairs are derivable and omitted."""
    for i, vx in enumerate(VARIABLES):
        col_x = table.column(vx)
        for vy in VARIABLES[i + 1:]:
            col_y = table.column(vy)
            for k, key in enumerate(table.keys):
                yield vx, vy, key, float(col_x[k]), float(col_y[k])


def scatter_to_json(table: CentralityTable, path: str | Path) -> None:
    rows = [
        {"variable_x": vx, "variable_y": vy, "user_key": key, "x": x, "y": y}
        for vx, vy, key, x, y in scatter_matrix_export(table)
    ]
    Path(path).write_text(
        json.dumps({"rows": rows}, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )
