import pytest

from flowrank.graph import (
    FlowGraph,
    GraphError,
    SelfEdgeError,
    build_graph,
    from_weighted_edges,
)
from flowrank.ingest import Interaction, InteractionRecord, UserRef


def ref(key, screen="", profile=False, followers=0):
    return UserRef(user_key=key, screen_name=screen,
                   followers_count=followers, has_profile=profile)


def record(author, targets, created_at=0, kind="mention"):
    return InteractionRecord(
        post_id="p",
        created_at=created_at,
        author=author,
        text="",
        interactions=tuple(Interaction(kind, t) for t in targets),
    )


def test_flows_accumulate_across_records_and_kinds():
    a, b = ref("a", profile=True), ref("b", profile=True)
    g = FlowGraph()
    g.add_record(record(a, [b], kind="mention"))
    g.add_record(record(a, [b], kind="retweet"))
    g.add_record(record(b, [a], kind="reply"))
    g.finalize()
    assert g.flow("a", "b") == 2
    assert g.flow("b", "a") == 1
    assert g.flow("a", "zzz") == 0
    # undirected default view sums both directions
    assert g.undirected_weight("a", "b") == 3
    assert g.undirected_weight("b", "a") == 3


def test_inverse_flow_is_reciprocal():
    g = from_weighted_edges([("a", "b", 4)])
    assert g.inverse_flow("a", "b") == 0.25


def test_self_interaction_rejected():
    g = FlowGraph()
    with pytest.raises(SelfEdgeError):
        g.add_interaction(ref("a"), Interaction("mention", ref("a")))


def test_mutation_after_finalize_rejected():
    g = from_weighted_edges([("a", "b", 1)])
    with pytest.raises(GraphError):
        g.add_interaction(ref("a"), Interaction("mention", ref("c")))


def test_accessors_require_finalize():
    g = FlowGraph()
    g.add_interaction(ref("a"), Interaction("mention", ref("b")))
    with pytest.raises(GraphError):
        g.node_keys()


def test_finalize_is_idempotent():
    g = from_weighted_edges([("a", "b", 1)])
    assert g.finalize() is g


# --- profile recency ---


def test_latest_profile_sighting_wins():
    g = FlowGraph()
    g.observe_user(ref("a", "old", profile=True, followers=10), created_at=100)
    g.observe_user(ref("a", "new", profile=True, followers=99), created_at=200)
    g.finalize()
    assert g.node("a").followers_count == 99
    assert g.node("a").screen_name == "new"


def test_stale_profile_sighting_ignored():
    g = FlowGraph()
    g.observe_user(ref("a", "new", profile=True, followers=99), created_at=200)
    g.observe_user(ref("a", "old", profile=True, followers=10), created_at=100)
    g.finalize()
    assert g.node("a").followers_count == 99


def test_bare_mention_never_overwrites_profile():
    g = FlowGraph()
    g.observe_user(ref("a", "real", profile=True, followers=50), created_at=100)
    g.observe_user(ref("a", "Alias"), created_at=999)
    g.finalize()
    assert g.node("a").followers_count == 50
    assert g.node("a").screen_name == "real"


def test_bare_mention_fills_missing_screen_name():
    g = FlowGraph()
    g.observe_user(ref("a"))          # reply target with no handle
    g.observe_user(ref("a", "found"))  # later mention carries the handle
    g.finalize()
    assert g.node("a").screen_name == "found"
    assert not g.node("a").has_profile


def test_author_without_interactions_still_observed():
    g = FlowGraph()
    g.add_record(record(ref("solo", "s", profile=True), []))
    g.finalize()
    assert g.has_node("solo")
    assert g.node_count == 1
    assert g.degree("solo") == 0


# --- structure accessors ---


def test_neighbors_and_degree_on_undirected_view():
    g = from_weighted_edges([("a", "b", 1), ("c", "a", 2)])
    assert g.neighbors("a") == ["b", "c"]
    assert g.degree("a") == 2
    assert g.degree("b") == 1


def test_undirected_edges_sorted_u_less_v():
    g = from_weighted_edges([("b", "a", 2), ("c", "b", 1)])
    assert list(g.undirected_edges()) == [("a", "b", 2), ("b", "c", 1)]


def test_directed_edge_count_vs_undirected():
    g = FlowGraph()
    g.add_record(record(ref("a"), [ref("b")]))
    g.add_record(record(ref("b"), [ref("a")]))
    g.finalize()
    assert g.directed_edge_count == 2
    assert g.undirected_edge_count == 1


def test_from_weighted_edges_accumulates_repeats():
    g = from_weighted_edges([("a", "b", 1), ("a", "b", 2)])
    assert g.flow("a", "b") == 3


def test_from_weighted_edges_isolated_nodes():
    g = from_weighted_edges([("a", "b", 1)], nodes=["a", "b", "z"])
    assert g.node_keys() == ["a", "b", "z"]
    assert g.degree("z") == 0


# --- filtering and components ---


def test_filter_min_degree_single_pass():
    # star: hub h with 3 leaves, plus pendant chain c1-c2
    g = from_weighted_edges(
        [("h", "l1", 1), ("h", "l2", 1), ("h", "l3", 1), ("c1", "c2", 1)]
    )
    f = g.filter_min_degree(2)
    # only the hub has degree >= 2; survivors may drop below k afterwards
    assert f.node_keys() == ["h"]
    assert f.undirected_edge_count == 0


def test_filter_min_degree_zero_is_identity():
    g = from_weighted_edges([("a", "b", 2)])
    f = g.filter_min_degree(0)
    assert f.node_keys() == g.node_keys()
    assert list(f.undirected_edges()) == list(g.undirected_edges())


def test_filter_negative_degree_rejected():
    g = from_weighted_edges([("a", "b", 1)])
    with pytest.raises(GraphError):
        g.filter_min_degree(-1)


def test_components_ordered_by_size_then_edges_then_key():
    g = from_weighted_edges(
        [
            ("a", "b", 1), ("b", "c", 1),              # 3 nodes, 2 edges
            ("x", "y", 1), ("y", "z", 1), ("x", "z", 1),  # 3 nodes, 3 edges
            ("m", "n", 1),                               # 2 nodes
        ]
    )
    comps = g.connected_components()
    assert comps == [["x", "y", "z"], ["a", "b", "c"], ["m", "n"]]


def test_largest_component_extraction():
    g = from_weighted_edges([("a", "b", 2), ("b", "c", 1), ("x", "y", 5)])
    lcc = g.largest_component()
    assert lcc.node_keys() == ["a", "b", "c"]
    assert lcc.flow("a", "b") == 2
    assert lcc.is_connected()
    assert not g.is_connected()


def test_stats_counts():
    g = from_weighted_edges([("a", "b", 1), ("x", "y", 1)])
    s = g.stats()
    assert (s.node_count, s.edge_count, s.component_count) == (4, 2, 2)
    assert s.as_dict() == {"node_count": 4, "edge_count": 2, "component_count": 2}


# --- persistence ---


def sample_graph():
    g = FlowGraph()
    a = ref("42", "alice", profile=True, followers=7)
    b = ref("77", "bob", profile=True)
    g.add_record(record(a, [b], created_at=10))
    g.add_record(record(b, [a], created_at=11))
    g.add_record(record(a, [ref("88")], created_at=12))  # bare target, no handle
    return g.finalize()


def test_save_load_round_trip(tmp_path):
    g = sample_graph()
    path = tmp_path / "g.fg"
    g.save(path)
    back = FlowGraph.load(path)
    assert back.node_keys() == g.node_keys()
    assert list(back.directed_edges()) == list(g.directed_edges())
    assert back.node("42").followers_count == 7
    assert back.node("42").screen_name == "alice"
    assert back.node("88").screen_name == ""
    # a second save is byte-identical
    path2 = tmp_path / "g2.fg"
    back.save(path2)
    assert path.read_bytes() == path2.read_bytes()


def test_save_header_format(tmp_path):
    g = sample_graph()
    path = tmp_path / "g.fg"
    g.save(path)
    first = path.read_text().splitlines()[0]
    assert first == f"flowgraph v1 {g.node_count} {g.directed_edge_count}"


@pytest.mark.parametrize(
    "content,fragment",
    [
        ("", "empty graph file"),
        ("flowgraph v9 0 0\n", "bad header"),
        ("flowgraph v1 1 0\nN a alice 0 0 0 0\nN b bob 0 0 0 0\n", "header promises"),
        ("flowgraph v1 2 1\nN a - 0 0 0 0\nN b - 0 0 0 0\nE a a 1\n", "self-edge"),
        ("flowgraph v1 2 1\nN a - 0 0 0 0\nN b - 0 0 0 0\nE a b 0\n", "flow must be >= 1"),
        ("flowgraph v1 2 1\nN a - 0 0 0 0\nN b - 0 0 0 0\nE a zz 3\n", "unknown node"),
        ("flowgraph v1 1 0\nN a - 0 0 0 0\nX what\n", "unknown line type"),
    ],
)
def test_load_rejects_malformed_files(tmp_path, content, fragment):
    path = tmp_path / "bad.fg"
    path.write_text(content)
    with pytest.raises(GraphError, match=fragment):
        FlowGraph.load(path)


def test_build_graph_from_records():
    recs = [
        record(ref("a", profile=True), [ref("b")], created_at=1),
        record(ref("b", profile=True), [ref("a"), ref("c")], created_at=2),
    ]
    g = build_graph(recs)
    assert g.finalized
    assert g.node_count == 3
    assert g.undirected_weight("a", "b") == 2
