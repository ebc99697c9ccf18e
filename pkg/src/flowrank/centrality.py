"""The seven-metric centrality suite over a flow-weighted graph.

Distance convention: shortest-path metrics (closeness, betweenness, load)
use edge length = inverse_flow, so strong ties are short. Current-flow
metrics (cfcloseness, cfbetweenness) use conductance = flow, so strong
ties conduct well. length x conductance = 1 on every edge.

Shortest-path metrics run through compiled kernels (see _sp_kernels);
current-flow metrics reduce to a node-potential matrix P with
P = pinv(L) for small graphs and a grounded-Laplacian inverse above
``dense_threshold`` nodes, where the dense pseudo-inverse is infeasible.
Both satisfy R_eff(u,v) = P_uu + P_vv - 2 P_uv, which is all the formulas
below consume.

Normalizations:
  degree        unweighted degree / (n - 1)
  betweenness   / (n-1)(n-2)   [ordered-pair accumulation, undirected view
                                equals the usual /((n-1)(n-2)/2) on
                                unordered pairs]
  load          / (n-1)(n-2)   [ordered pairs by definition]
  cfbetweenness / (n-1)(n-2)/2 [unordered pairs]
  closeness     (n-1) / sum of distances
  cfcloseness   (n-1) / sum of effective resistances
Endpoints are always excluded from the medial metrics.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg
import scipy.sparse
from scipy.sparse.linalg import splu

from . import _sp_kernels
from .graph import FlowGraph

METRICS = (
    "degree",
    "eigenvector",
    "closeness",
    "betweenness",
    "load",
    "cfcloseness",
    "cfbetweenness",
)

COUNTERS = ("followers", "following", "favorites", "statuses")

# The eleven analysis variables, in the order the correlation/scatter
# figures present them.
VARIABLES = (
    "cfbetweenness",
    "betweenness",
    "closeness",
    "cfcloseness",
    "eigenvector",
    "degree",
    "load",
) + COUNTERS

CSV_HEADER = (
    "user_key", "screen_name",
    "degree", "strength", "eigenvector", "closeness", "betweenness",
    "load", "cfcloseness", "cfbetweenness",
    "followers", "following", "favorites", "statuses",
)

VIEW_UNDIRECTED = "undirected"
VIEW_DIRECTED = "directed"

DENSE_THRESHOLD = 2000


class CentralityError(ValueError):
    pass


class DisconnectedError(CentralityError):
    pass


class ConvergenceError(CentralityError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


def _keys_index(g: FlowGraph) -> tuple[list[str], dict[str, int]]:
    keys = g.node_keys()
    return keys, {k: i for i, k in enumerate(keys)}


def _require_connected(g: FlowGraph, metric: str) -> None:
    if g.node_count > 0 and not g.is_connected():
        raise DisconnectedError(
            f"{metric} requires a connected graph; "
            "extract the largest component first"
        )


def _undirected_csr(g: FlowGraph):
    """CSR over the undirected view; lengths are inverse undirected flows."""
    keys, index = _keys_index(g)
    n = len(keys)
    indptr = np.zeros(n + 1, np.int64)
    heads: list[list[int]] = [[] for _ in range(n)]
    weights: list[list[float]] = [[] for _ in range(n)]
    for u, v, w in g.undirected_edges():
        ui, vi = index[u], index[v]
        heads[ui].append(vi)
        weights[ui].append(w)
        heads[vi].append(ui)
        weights[vi].append(w)
    for i in range(n):
        indptr[i + 1] = indptr[i] + len(heads[i])
    indices = np.empty(indptr[-1], np.int64)
    lengths = np.empty(indptr[-1], np.float64)
    for i in range(n):
        lo, hi = indptr[i], indptr[i + 1]
        indices[lo:hi] = heads[i]
        lengths[lo:hi] = [1.0 / w for w in weights[i]]
    return keys, indptr, indices, lengths


def _directed_csr(g: FlowGraph):
    """CSR over directed arcs; lengths are per-arc inverse flows."""
    keys, index = _keys_index(g)
    n = len(keys)
    heads: list[list[int]] = [[] for _ in range(n)]
    lens: list[list[float]] = [[] for _ in range(n)]
    for src, dst, flow in g.directed_edges():
        heads[index[src]].append(index[dst])
        lens[index[src]].append(1.0 / flow)
    indptr = np.zeros(n + 1, np.int64)
    for i in range(n):
        indptr[i + 1] = indptr[i] + len(heads[i])
    indices = np.empty(indptr[-1], np.int64)
    lengths = np.empty(indptr[-1], np.float64)
    for i in range(n):
        lo, hi = indptr[i], indptr[i + 1]
        indices[lo:hi] = heads[i]
        lengths[lo:hi] = lens[i]
    return keys, indptr, indices, lengths


# Sources per work unit. The chunk layout is a function of n alone --
# never of the worker count -- so the reduction order, and with it every
# bit of the result, is identical whether the pool has 1 thread or 16.
_PASS_CHUNK = 256


def _source_chunks(n: int) -> list[np.ndarray]:
    sources = np.arange(n, dtype=np.int64)
    if n <= _PASS_CHUNK:
        return [sources]
    return np.array_split(sources, -(-n // _PASS_CHUNK))


def _run_pass(kernel, indptr, indices, lengths, n: int, workers: int):
    """Accumulating kernels: per-chunk partial sums, reduced in chunk order."""
    chunks = _source_chunks(n)
    if workers <= 1 or len(chunks) == 1:
        total = kernel(indptr, indices, lengths, chunks[0], n)
        for chunk in chunks[1:]:
            total += kernel(indptr, indices, lengths, chunk, n)
        return total
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(kernel, indptr, indices, lengths, chunk, n)
            for chunk in chunks
        ]
        total = futures[0].result()
        for fut in futures[1:]:
            total += fut.result()
    return total


# --- radial metrics ---

def degree_centrality(g: FlowGraph) -> dict[str, float]:
    """Unweighted degree over (n - 1)."""
    n = g.node_count
    if n < 2:
        raise CentralityError("degree centrality needs at least 2 nodes")
    return {k: g.degree(k) / (n - 1) for k in g.node_keys()}


def strength(g: FlowGraph) -> dict[str, float]:
    """Sum of incident undirected flows, unnormalized."""
    totals = {k: 0 for k in g.node_keys()}
    for u, v, w in g.undirected_edges():
        totals[u] += w
        totals[v] += w
    return {k: float(w) for k, w in totals.items()}


def eigenvector_centrality(g: FlowGraph, tol: float = 1e-8,
                           max_iter: int = 1000) -> dict[str, float]:
    """Dominant eigenvector of the flow-weighted adjacency, L2-normalized.

    Power iteration on A + I: the shift keeps the same eigenvectors but
    makes the leading eigenvalue strictly dominant, so bipartite graphs
    (where plain iteration oscillates between the +/- lambda pair)
    converge too. Stops when the successive-iterate L2 change drops
    below tol.
    """
    _require_connected(g, "eigenvector")
    keys, index = _keys_index(g)
    n = len(keys)
    if n == 0:
        return {}
    rows, cols, vals = [], [], []
    for u, v, w in g.undirected_edges():
        ui, vi = index[u], index[v]
        rows.extend((ui, vi))
        cols.extend((vi, ui))
        vals.extend((float(w), float(w)))
    a = scipy.sparse.csr_matrix(
        (vals, (rows, cols)), shape=(n, n), dtype=np.float64
    )
    x = np.full(n, 1.0 / np.sqrt(n))
    change = np.inf
    for _ in range(max_iter):
        nxt = a.dot(x) + x
        nxt /= np.linalg.norm(nxt)
        change = np.linalg.norm(nxt - x)
        x = nxt
        if change < tol:
            return {k: float(x[i]) for i, k in enumerate(keys)}
    raise ConvergenceError(
        f"eigenvector power iteration did not converge in {max_iter} "
        f"iterations (last change {change:.3e})",
        residual=float(change),
    )


def closeness_centrality(g: FlowGraph, workers: int = 1) -> dict[str, float]:
    """(n - 1) / sum of inverse-flow Dijkstra distances to all others."""
    _require_connected(g, "closeness")
    keys, indptr, indices, lengths = _undirected_csr(g)
    n = len(keys)
    if n == 0:
        return {}
    if n == 1:
        return {keys[0]: 0.0}
    chunks = _source_chunks(n)
    if workers <= 1 or len(chunks) == 1:
        parts = [
            _sp_kernels.closeness_pass(indptr, indices, lengths, chunk, n)
            for chunk in chunks
        ]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_sp_kernels.closeness_pass,
                            indptr, indices, lengths, chunk, n)
                for chunk in chunks
            ]
            parts = [fut.result() for fut in futures]
    # chunks write disjoint slots, so concatenation is exact
    dist_sum = np.concatenate([p[0] for p in parts])
    reached = np.concatenate([p[1] for p in parts])
    if int(reached.min()) < n:
        raise DisconnectedError("closeness requires a connected graph")
    return {k: float((n - 1) / dist_sum[i]) for i, k in enumerate(keys)}


# --- medial metrics ---

def betweenness_centrality(g: FlowGraph, view: str = VIEW_UNDIRECTED,
                           workers: int = 1) -> dict[str, float]:
    """Brandes betweenness with inverse-flow lengths, endpoints excluded.

    The kernel accumulates over ordered (s, t) pairs, so dividing by
    (n-1)(n-2) yields the undirected convention (unordered pairs over
    (n-1)(n-2)/2) without a separate halving step; the directed view uses
    the same constant on its ordered pairs.
    """
    if view not in (VIEW_UNDIRECTED, VIEW_DIRECTED):
        raise CentralityError(f"unknown view {view!r}")
    if view == VIEW_UNDIRECTED:
        keys, indptr, indices, lengths = _undirected_csr(g)
    else:
        keys, indptr, indices, lengths = _directed_csr(g)
    n = len(keys)
    if n < 3:
        return {k: 0.0 for k in keys}
    raw = _run_pass(_sp_kernels.betweenness_pass,
                    indptr, indices, lengths, n, workers)
    scale = 1.0 / ((n - 1) * (n - 2))
    return {k: float(raw[i] * scale) for i, k in enumerate(keys)}


def load_centrality(g: FlowGraph, workers: int = 1) -> dict[str, float]:
    """Packet-splitting load, endpoints excluded, over (n-1)(n-2).

    Each ordered (s, t) pair sends one unit from s; at every hop the unit
    divides equally among the shortest-path successors toward t. The
    kernel computes this per source by backward accumulation over the
    Dijkstra predecessor DAG, which sums to the same totals.
    """
    keys, indptr, indices, lengths = _undirected_csr(g)
    n = len(keys)
    if n < 3:
        return {k: 0.0 for k in keys}
    raw = _run_pass(_sp_kernels.load_pass,
                    indptr, indices, lengths, n, workers)
    scale = 1.0 / ((n - 1) * (n - 2))
    return {k: float(raw[i] * scale) for i, k in enumerate(keys)}


# --- current-flow metrics ---

def _laplacian_csc(g: FlowGraph, keys: list[str], index: dict[str, int]):
    n = len(keys)
    rows, cols, vals = [], [], []
    deg = np.zeros(n, np.float64)
    for u, v, w in g.undirected_edges():
        ui, vi = index[u], index[v]
        c = float(w)
        rows.extend((ui, vi))
        cols.extend((vi, ui))
        vals.extend((-c, -c))
        deg[ui] += c
        deg[vi] += c
    rows.extend(range(n))
    cols.extend(range(n))
    vals.extend(deg)
    return scipy.sparse.csc_matrix((vals, (rows, cols)), shape=(n, n))


def potential_matrix(g: FlowGraph,
                     dense_threshold: int = DENSE_THRESHOLD) -> np.ndarray:
    """Node-potential matrix P with R_eff(u,v) = P_uu + P_vv - 2 P_uv.

    Dense route: pseudo-inverse of the conductance Laplacian. Sparse
    route (n > dense_threshold): invert the Laplacian grounded at the
    first node via a symmetric-mode LU factorization and zero-pad the
    grounded row/column — a generalized inverse with the same resistance
    differences at a fraction of the cost.
    """
    keys, index = _keys_index(g)
    n = len(keys)
    if n == 0:
        return np.zeros((0, 0))
    lap = _laplacian_csc(g, keys, index)
    if n <= dense_threshold:
        return scipy.linalg.pinvh(lap.toarray())
    grounded = lap[1:, 1:].tocsc()
    lu = splu(
        grounded,
        permc_spec="MMD_AT_PLUS_A",
        diag_pivot_thresh=0.0,
        options=dict(SymmetricMode=True),
    )
    pot = np.zeros((n, n))
    block = 1024
    for lo in range(0, n - 1, block):
        hi = min(lo + block, n - 1)
        rhs = np.zeros((n - 1, hi - lo))
        rhs[np.arange(lo, hi), np.arange(hi - lo)] = 1.0
        pot[1:, 1 + lo:1 + hi] = lu.solve(rhs)
    return pot


def _resistance_sums(pot: np.ndarray) -> np.ndarray:
    """sum_u R_eff(u, v) for every v, from any symmetric potential matrix:
    trace(P) + n*P_vv - 2*(P 1)_v."""
    n = pot.shape[0]
    diag = np.diag(pot)
    return np.trace(pot) + n * diag - 2.0 * pot.sum(axis=1)


def current_flow_closeness(g: FlowGraph,
                           dense_threshold: int = DENSE_THRESHOLD,
                           _pot: np.ndarray | None = None) -> dict[str, float]:
    """(n - 1) / sum of effective resistances to all other nodes."""
    _require_connected(g, "cfcloseness")
    keys = g.node_keys()
    n = len(keys)
    if n < 2:
        raise CentralityError("cfcloseness needs at least 2 nodes")
    pot = potential_matrix(g, dense_threshold) if _pot is None else _pot
    sums = _resistance_sums(pot)
    return {k: float((n - 1) / sums[i]) for i, k in enumerate(keys)}


def current_flow_betweenness(g: FlowGraph,
                             dense_threshold: int = DENSE_THRESHOLD,
                             _pot: np.ndarray | None = None,
                             chunk: int = 256) -> dict[str, float]:
    """Random-walk (current-flow) betweenness, endpoints excluded.

    For source/sink pair (s, t) with one unit of current, the current on
    edge e = (i, j) is y_s - y_t where y = c_e (P_:,i - P_:,j). A node's
    throughput is half the absolute current over its incident edges.
    Summing |y_s - y_t| over all pairs reduces, per edge, to a sorted
    prefix-sum (all pairs) minus the pair terms touching each endpoint,
    so the whole metric costs one vector sort per edge instead of a
    quadratic pair loop.
    """
    _require_connected(g, "cfbetweenness")
    keys, index = _keys_index(g)
    n = len(keys)
    if n < 3:
        return {k: 0.0 for k in keys}
    edges = list(g.undirected_edges())
    pot = potential_matrix(g, dense_threshold) if _pot is None else _pot
    ei = np.array([index[u] for u, _, _ in edges], np.int64)
    ej = np.array([index[v] for _, v, _ in edges], np.int64)
    cond = np.array([float(w) for _, _, w in edges])
    cb = np.zeros(n)
    # F = sum_{s<t} |y_s - y_t| = sum_k (2k - n + 1) * sorted(y)_k
    fw = (2.0 * np.arange(n) - (n - 1)).astype(np.float64)
    for lo in range(0, len(edges), chunk):
        hi = min(lo + chunk, len(edges))
        rows_i = pot[ei[lo:hi]]
        rows_j = pot[ej[lo:hi]]
        y = cond[lo:hi, None] * (rows_i - rows_j)
        ys = np.sort(y, axis=1)
        pair_sum = ys @ fw
        prefix = np.cumsum(ys, axis=1)
        total = prefix[:, -1]
        rng = np.arange(hi - lo)
        for endpoints in (ei[lo:hi], ej[lo:hi]):
            yv = y[rng, endpoints]
            pos = (ys < yv[:, None]).sum(axis=1)
            below = np.where(pos > 0, np.take_along_axis(
                prefix, np.maximum(pos - 1, 0)[:, None], axis=1)[:, 0], 0.0)
            touch = yv * pos - below + (total - below) - yv * (n - pos)
            np.add.at(cb, endpoints, 0.5 * (pair_sum - touch))
    scale = 2.0 / ((n - 1) * (n - 2))
    return {k: float(cb[i] * scale) for i, k in enumerate(keys)}


# --- the assembled table ---

@dataclass
class CentralityConfig:
    view: str = VIEW_UNDIRECTED
    eigenvector_tol: float = 1e-8
    eigenvector_max_iter: int = 1000
    dense_threshold: int = DENSE_THRESHOLD
    workers: int = 1


class CentralityTable:
    """All seven metrics plus strength and popularity counters, one row
    per node, in sorted-key order."""

    def __init__(self, keys: list[str], screen_names: list[str],
                 columns: dict[str, np.ndarray]):
        self.keys = list(keys)
        self.screen_names = list(screen_names)
        self.columns = {name: np.asarray(col, np.float64)
                        for name, col in columns.items()}
        self._index = {k: i for i, k in enumerate(self.keys)}
        for name, col in self.columns.items():
            if col.shape[0] != len(self.keys):
                raise CentralityError(f"column {name} length mismatch")

    def __len__(self) -> int:
        return len(self.keys)

    def __contains__(self, key: str) -> bool:
        return key in self._index

    def index_of(self, key: str) -> int:
        return self._index[key]

    def value(self, key: str, column: str) -> float:
        return float(self.columns[column][self._index[key]])

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise CentralityError(f"unknown metric {name!r}")
        return self.columns[name]

    def row(self, key: str) -> dict:
        i = self._index[key]
        out = {"user_key": self.keys[i], "screen_name": self.screen_names[i]}
        for name in CSV_HEADER[2:]:
            value = self.columns[name][i]
            out[name] = int(value) if name in COUNTERS else float(value)
        return out

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for i, key in enumerate(self.keys):
                row = [key, self.screen_names[i]]
                for name in CSV_HEADER[2:]:
                    value = self.columns[name][i]
                    if name in COUNTERS:
                        row.append(str(int(value)))
                    else:
                        row.append(repr(float(value)))
                writer.writerow(row)

    @classmethod
    def from_csv(cls, path: str | Path) -> "CentralityTable":
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = tuple(next(reader))
            if header != CSV_HEADER:
                raise CentralityError(f"{path}: unexpected header {header}")
            keys, screens = [], []
            cols: dict[str, list[float]] = {n: [] for n in CSV_HEADER[2:]}
            for row in reader:
                if not row:
                    continue
                keys.append(row[0])
                screens.append(row[1])
                for name, cell in zip(CSV_HEADER[2:], row[2:]):
                    cols[name].append(float(cell))
        return cls(keys, screens, {n: np.array(v) for n, v in cols.items()})


def compute_all(g: FlowGraph,
                config: CentralityConfig | None = None) -> CentralityTable:
    """The full suite on a connected, finalized graph."""
    cfg = config or CentralityConfig()
    _require_connected(g, "centrality suite")
    keys = g.node_keys()

    def tagged(name, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CentralityError as exc:
            raise CentralityError(f"{name}: {exc}") from exc

    columns: dict[str, np.ndarray] = {}
    deg = tagged("degree", degree_centrality, g)
    columns["degree"] = np.array([deg[k] for k in keys])
    stren = strength(g)
    columns["strength"] = np.array([stren[k] for k in keys])
    eig = tagged("eigenvector", eigenvector_centrality, g,
                 cfg.eigenvector_tol, cfg.eigenvector_max_iter)
    columns["eigenvector"] = np.array([eig[k] for k in keys])
    clo = tagged("closeness", closeness_centrality, g, cfg.workers)
    columns["closeness"] = np.array([clo[k] for k in keys])
    bet = tagged("betweenness", betweenness_centrality, g,
                 cfg.view, cfg.workers)
    columns["betweenness"] = np.array([bet[k] for k in keys])
    load = tagged("load", load_centrality, g, cfg.workers)
    columns["load"] = np.array([load[k] for k in keys])
    pot = potential_matrix(g, cfg.dense_threshold)
    cfc = tagged("cfcloseness", current_flow_closeness, g,
                 cfg.dense_threshold, pot)
    columns["cfcloseness"] = np.array([cfc[k] for k in keys])
    cfb = tagged("cfbetweenness", current_flow_betweenness, g,
                 cfg.dense_threshold, pot)
    columns["cfbetweenness"] = np.array([cfb[k] for k in keys])
    del pot

    screens = []
    counters = {name: [] for name in COUNTERS}
    for k in keys:
        ref = g.node(k)
        screens.append(ref.screen_name)
        counters["followers"].append(ref.followers_count)
        counters["following"].append(ref.friends_count)
        counters["favorites"].append(ref.favourites_count)
        counters["statuses"].append(ref.statuses_count)
    for name in COUNTERS:
        columns[name] = np.array(counters[name], np.float64)
    return CentralityTable(keys, screens, columns)
