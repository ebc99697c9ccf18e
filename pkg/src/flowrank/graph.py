"""Flow-weighted user graph: construction, filtering, components, persistence.

The store is directed: each (source, target) pair carries an integer
``flow`` counting interactions, with ``inverse_flow = 1/flow`` derived at
finalize time. The undirected view, which the analysis pipeline uses by
default, merges opposite arcs by summing their flows.

Persistence format (UTF-8, LF):

    flowgraph v1 <node_count> <directed_edge_count>
    N <user_key> <screen_name> <followers> <friends> <favourites> <statuses>
    E <source> <target> <flow>

Node and edge lines are sorted by key so identical graphs serialize to
identical bytes. inverse_flow is derived, never stored. An empty
screen_name is written as '-' (not a legal handle, so unambiguous).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .ingest import Interaction, InteractionRecord, UserRef

VIEW_DIRECTED = "directed"
VIEW_UNDIRECTED = "undirected"


class GraphError(ValueError):
    pass


class SelfEdgeError(GraphError):
    pass


@dataclass(frozen=True)
class GraphStats:
    """Counts for reporting; edge_count is on the undirected view."""

    node_count: int
    edge_count: int
    component_count: int

    def as_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "component_count": self.component_count,
        }


class FlowGraph:
    """Mutable while building; immutable after finalize().

    Interactions increment directed flows. Profile counters follow the most
    recent profile-bearing sighting of each user (latest created_at wins);
    bare mentions or reply targets never overwrite counters.
    """

    def __init__(self):
        self._nodes: dict[str, UserRef] = {}
        self._profile_ts: dict[str, int] = {}
        self._out: dict[str, dict[str, int]] = {}
        self._finalized = False
        # built by finalize()
        self._node_order: list[str] = []
        self._und_adj: dict[str, dict[str, int]] = {}
        self._inverse_flow: dict[tuple[str, str], float] = {}

    # --- build phase ---

    def observe_user(self, ref: UserRef, created_at: int = 0) -> None:
        """Register a user sighting, applying the counter recency rule."""
        key = ref.user_key
        current = self._nodes.get(key)
        if current is None:
            self._nodes[key] = ref
            self._profile_ts[key] = created_at if ref.has_profile else -1
            return
        if ref.has_profile and created_at >= self._profile_ts[key]:
            self._nodes[key] = ref
            self._profile_ts[key] = created_at
        elif not current.screen_name and ref.screen_name and not current.has_profile:
            self._nodes[key] = ref

    def add_interaction(self, author: UserRef, interaction: Interaction,
                        created_at: int = 0) -> None:
        """Add both endpoints and increment the directed flow author -> target."""
        if self._finalized:
            raise GraphError("graph is finalized")
        target = interaction.target
        if author.user_key == target.user_key:
            raise SelfEdgeError(f"self-edge rejected for {author.user_key}")
        self.observe_user(author, created_at)
        self.observe_user(target, created_at)
        row = self._out.setdefault(author.user_key, {})
        row[target.user_key] = row.get(target.user_key, 0) + 1

    def add_record(self, record: InteractionRecord) -> int:
        """Apply every interaction of a record; returns how many were added."""
        if not record.interactions:
            # author still observed so profile recency holds for lurkers
            self.observe_user(record.author, record.created_at)
            return 0
        for interaction in record.interactions:
            self.add_interaction(record.author, interaction, record.created_at)
        return len(record.interactions)

    def finalize(self) -> "FlowGraph":
        """Derive inverse flows and the undirected view; freeze the graph."""
        if self._finalized:
            return self
        self._node_order = sorted(self._nodes)
        self._und_adj = {key: {} for key in self._nodes}
        for src, row in self._out.items():
            for dst, flow in row.items():
                self._inverse_flow[(src, dst)] = 1.0 / flow
                self._und_adj[src][dst] = self._und_adj[src].get(dst, 0) + flow
                self._und_adj[dst][src] = self._und_adj[dst].get(src, 0) + flow
        self._finalized = True
        return self

    # --- finalized accessors ---

    def _require_finalized(self):
        if not self._finalized:
            raise GraphError("graph must be finalized first")

    @property
    def finalized(self) -> bool:
        return self._finalized

    def node_keys(self) -> list[str]:
        self._require_finalized()
        return list(self._node_order)

    def node(self, key: str) -> UserRef:
        return self._nodes[key]

    def has_node(self, key: str) -> bool:
        return key in self._nodes

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def directed_edge_count(self) -> int:
        return sum(len(row) for row in self._out.values())

    @property
    def undirected_edge_count(self) -> int:
        self._require_finalized()
        return sum(len(nbrs) for nbrs in self._und_adj.values()) // 2

    def directed_edges(self):
        """Yield (source, target, flow) sorted by (source, target)."""
        self._require_finalized()
        for src in sorted(self._out):
            row = self._out[src]
            for dst in sorted(row):
                yield src, dst, row[dst]

    def undirected_edges(self):
        """Yield (u, v, weight) with u < v, sorted; weight sums both arcs."""
        self._require_finalized()
        for u in self._node_order:
            for v, weight in sorted(self._und_adj[u].items()):
                if u < v:
                    yield u, v, weight

    def flow(self, src: str, dst: str) -> int:
        return self._out.get(src, {}).get(dst, 0)

    def inverse_flow(self, src: str, dst: str) -> float:
        self._require_finalized()
        return self._inverse_flow[(src, dst)]

    def undirected_weight(self, u: str, v: str) -> int:
        self._require_finalized()
        return self._und_adj.get(u, {}).get(v, 0)

    def neighbors(self, key: str) -> list[str]:
        self._require_finalized()
        return sorted(self._und_adj.get(key, {}))

    def degree(self, key: str) -> int:
        """Unweighted incident-edge count on the undirected view."""
        self._require_finalized()
        return len(self._und_adj.get(key, {}))

    # --- filters and components ---

    def _induced(self, keep: set[str]) -> "FlowGraph":
        sub = FlowGraph()
        for key in keep:
            sub._nodes[key] = self._nodes[key]
            sub._profile_ts[key] = self._profile_ts.get(key, -1)
        for src, row in self._out.items():
            if src not in keep:
                continue
            kept = {dst: flow for dst, flow in row.items() if dst in keep}
            if kept:
                sub._out[src] = kept
        return sub.finalize()

    def filter_min_degree(self, k: int) -> "FlowGraph":
        """Single pass: drop all nodes with undirected degree < k at once.

        Not iterated to a k-core; survivors may end up with lower degree
        than k in the result. k=0 is the identity.
        """
        self._require_finalized()
        if k < 0:
            raise GraphError("min degree must be >= 0")
        if k == 0:
            return self._induced(set(self._nodes))
        keep = {key for key in self._nodes if len(self._und_adj[key]) >= k}
        return self._induced(keep)

    def connected_components(self) -> list[list[str]]:
        """Undirected components, each sorted; ordered by descending size,
        then descending internal undirected edge count, then smallest key."""
        self._require_finalized()
        seen: set[str] = set()
        components: list[list[str]] = []
        for start in self._node_order:
            if start in seen:
                continue
            stack = [start]
            seen.add(start)
            members = []
            while stack:
                u = stack.pop()
                members.append(u)
                for v in self._und_adj[u]:
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            components.append(sorted(members))

        def edge_count(members: list[str]) -> int:
            inside = set(members)
            return sum(1 for u in members for v in self._und_adj[u] if v in inside) // 2

        components.sort(key=lambda ms: (-len(ms), -edge_count(ms), ms[0]))
        return components

    def largest_component(self) -> "FlowGraph":
        self._require_finalized()
        components = self.connected_components()
        if not components:
            return FlowGraph().finalize()
        return self._induced(set(components[0]))

    def is_connected(self) -> bool:
        self._require_finalized()
        return len(self.connected_components()) <= 1 and self.node_count >= 0

    def stats(self) -> GraphStats:
        self._require_finalized()
        return GraphStats(
            node_count=self.node_count,
            edge_count=self.undirected_edge_count,
            component_count=len(self.connected_components()),
        )

    # --- persistence ---

    def save(self, path: str | Path) -> None:
        self._require_finalized()
        lines = [f"flowgraph v1 {self.node_count} {self.directed_edge_count}"]
        for key in self._node_order:
            ref = self._nodes[key]
            for value in (key, ref.screen_name):
                if any(ch.isspace() for ch in value):
                    raise GraphError(f"whitespace in identifier {value!r}")
            lines.append(
                f"N {key} {ref.screen_name or '-'} {ref.followers_count} "
                f"{ref.friends_count} {ref.favourites_count} {ref.statuses_count}"
            )
        for src, dst, flow in self.directed_edges():
            lines.append(f"E {src} {dst} {flow}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "FlowGraph":
        text = Path(path).read_text(encoding="utf-8")
        lines = text.splitlines()
        if not lines:
            raise GraphError(f"{path}: empty graph file")
        header = lines[0].split()
        if len(header) != 4 or header[0] != "flowgraph" or header[1] != "v1":
            raise GraphError(f"{path}: bad header {lines[0]!r}")
        node_count, edge_count = int(header[2]), int(header[3])
        graph = cls()
        nodes_seen = edges_seen = 0
        for raw in lines[1:]:
            if not raw:
                continue
            parts = raw.split()
            if parts[0] == "N":
                if len(parts) != 7:
                    raise GraphError(f"{path}: bad node line {raw!r}")
                key, screen = parts[1], parts[2]
                graph._nodes[key] = UserRef(
                    user_key=key,
                    screen_name="" if screen == "-" else screen,
                    followers_count=int(parts[3]),
                    friends_count=int(parts[4]),
                    favourites_count=int(parts[5]),
                    statuses_count=int(parts[6]),
                    has_profile=True,
                )
                graph._profile_ts[key] = 0
                nodes_seen += 1
            elif parts[0] == "E":
                if len(parts) != 4:
                    raise GraphError(f"{path}: bad edge line {raw!r}")
                src, dst, flow = parts[1], parts[2], int(parts[3])
                if src == dst:
                    raise GraphError(f"{path}: self-edge {src}")
                if flow < 1:
                    raise GraphError(f"{path}: flow must be >= 1 on {src}->{dst}")
                if src not in graph._nodes or dst not in graph._nodes:
                    raise GraphError(f"{path}: edge references unknown node")
                graph._out.setdefault(src, {})[dst] = flow
                edges_seen += 1
            else:
                raise GraphError(f"{path}: unknown line type {parts[0]!r}")
        if nodes_seen != node_count or edges_seen != edge_count:
            raise GraphError(
                f"{path}: header promises {node_count} nodes/{edge_count} edges, "
                f"found {nodes_seen}/{edges_seen}"
            )
        return graph.finalize()


def build_graph(records) -> FlowGraph:
    """Accumulate interaction records into a finalized FlowGraph."""
    graph = FlowGraph()
    for record in records:
        graph.add_record(record)
    return graph.finalize()


def from_weighted_edges(edges, nodes=()) -> FlowGraph:
    """Finalized graph from (source, target, flow) triples.

    Construction utility for tests and synthetic benchmarks. Nodes get
    placeholder profiles; repeated arcs accumulate flow.
    """
    graph = FlowGraph()

    def ensure(key: str):
        if key not in graph._nodes:
            graph._nodes[key] = UserRef(user_key=key, screen_name=key)
            graph._profile_ts[key] = -1

    for key in nodes:
        ensure(key)
    for src, dst, flow in edges:
        if src == dst:
            raise SelfEdgeError(f"self-edge rejected for {src}")
        if flow < 1:
            raise GraphError(f"flow must be >= 1 on {src}->{dst}")
        ensure(src)
        ensure(dst)
        row = graph._out.setdefault(src, {})
        row[dst] = row.get(dst, 0) + int(flow)
    return graph.finalize()
