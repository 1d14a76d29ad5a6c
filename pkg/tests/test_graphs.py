import os

os.environ.setdefault("QUATBRANDT_ENABLE_DISK_CACHE", "0")

import json  # noqa: E402
from fractions import Fraction  # noqa: E402

import pytest  # noqa: E402

from quatbrandt.errors import GraphError, InvalidInputError  # noqa: E402
from quatbrandt.graphs.isogeny import big_graph, enhanced_graph, little_graph  # noqa: E402
from quatbrandt.graphs.weighted import (  # noqa: E402
    Edge,
    GraphRecord,
    Vertex,
    WeightedGraph,
    is_bipartite,
    is_connected,
)
from quatbrandt.runtime.workbench import get_workbench  # noqa: E402
from tests.matrix_helpers import slow_tests_enabled  # noqa: E402


def _as_ints(M) -> list[list[int]]:
    return [[int(v) for v in row] for row in M]


def test_big_graph_is_the_brandt_matrix() -> None:
    G = big_graph(1, 2, 11)
    B = get_workbench(1, 11).brandt(2)
    assert G.order == 2
    assert [list(r) for r in B.entries] == G.adjacency()
    assert all(sum(row) == 3 for row in G.adjacency())
    assert is_connected(G)
    assert not is_bipartite(G)


def test_little_graph_weighted_adjacency_matches_brandt() -> None:
    for g, ell, p in [(1, 2, 11), (1, 3, 11), (2, 2, 7)]:
        G = little_graph(g, ell, p)
        B = get_workbench(g, p).brandt(ell)
        assert G.weighted_adjacency() == [[Fraction(v) for v in row] for row in B.entries]
        assert [v.weight for v in G.vertices] == list(B.weights)
        G.check_opposites()
        G.check_weights()
        assert is_connected(G)


def test_little_graph_opposites_reverse_edges() -> None:
    G = little_graph(1, 2, 11)
    for e in G.edges:
        o = G.edges[e.opposite]
        assert (o.source, o.target) == (e.target, e.source)
        assert G.edges[o.opposite] is e
    for e in G.half_edges():
        assert e.source == e.target


def test_enhanced_graph_is_a_bipartite_double_cover() -> None:
    little = little_graph(1, 2, 11)
    G = enhanced_graph(1, 2, 11)
    h = little.order
    assert G.order == 2 * h
    assert len(G.edges) == 2 * len(little.edges)
    assert is_bipartite(G)
    for e in G.edges:
        assert (e.source < h) != (e.target < h)
    # weighted adjacency is [[0, B], [B, 0]]
    B = _as_ints(little.weighted_adjacency())
    W = _as_ints(G.weighted_adjacency())
    for i in range(h):
        for j in range(h):
            assert W[i][h + j] == B[i][j]
            assert W[h + i][j] == B[i][j]
            assert W[i][j] == 0 and W[h + i][h + j] == 0
    assert is_connected(G)


def test_enhanced_graph_of_a_single_class() -> None:
    G = enhanced_graph(1, 2, 7)
    assert G.order == 2
    assert is_bipartite(G)


def test_level_equal_to_p_is_rejected() -> None:
    with pytest.raises(InvalidInputError):
        big_graph(2, 7, 7)
    with pytest.raises(InvalidInputError):
        little_graph(1, 4, 7)


def test_broken_opposites_are_detected() -> None:
    vertices = (Vertex(0, 2), Vertex(1, 2))
    edges = (
        Edge(0, 0, 1, 1, opposite=1),
        Edge(1, 1, 0, 1, opposite=1, half_edge=True),
    )
    G = WeightedGraph(kind="little", name="broken", vertices=vertices, edges=edges)
    with pytest.raises(GraphError):
        G.check_opposites()
    bad_weight = WeightedGraph(kind="little", name="w", vertices=vertices, edges=(Edge(0, 0, 1, 3),))
    with pytest.raises(GraphError):
        bad_weight.check_weights()


def test_dot_and_json_output_are_stable() -> None:
    G = little_graph(1, 2, 11)
    assert G.to_dot() == little_graph(1, 2, 11).to_dot()
    assert G.to_dot().startswith('digraph "little_g1_l2_p11" {')
    payload = json.loads(G.to_json())
    assert payload["kind"] == "little"
    assert {"from", "to", "weight", "opposite", "half"} <= set(payload["edges"][0])
    assert len(payload["vertices"]) == 2


FAST_GRID = [(1, ell, p) for ell in (2, 3) for p in (2, 3, 5, 7, 11, 13) if ell != p] + [
    (2, ell, p) for ell in (2, 3) for p in (3, 5, 7) if ell != p
]
SLOW_GRID = [(2, ell, p) for ell in (2, 3) for p in (2, 11, 13) if ell != p] + [(3, 2, 7)]


def _check_graph_structure(g: int, ell: int, p: int) -> None:
    wb = get_workbench(g, p)
    B = wb.brandt(ell)
    big = big_graph(g, ell, p, workbench=wb)
    little = little_graph(g, ell, p, workbench=wb)
    enhanced = enhanced_graph(g, ell, p, workbench=wb)

    assert big.adjacency() == [list(r) for r in B.entries]
    assert little.weighted_adjacency() == [[Fraction(v) for v in row] for row in B.entries]
    little.check_opposites()
    enhanced.check_opposites()

    assert is_connected(big) and not is_bipartite(big), f"big graph ({g},{ell},{p})"
    assert is_connected(little) and not is_bipartite(little), f"little graph ({g},{ell},{p})"
    assert is_connected(enhanced) and is_bipartite(enhanced), f"enhanced graph ({g},{ell},{p})"
    assert enhanced.half_edges() == []


@pytest.mark.parametrize("g,ell,p", FAST_GRID)
def test_graph_structure(g: int, ell: int, p: int) -> None:
    _check_graph_structure(g, ell, p)


@pytest.mark.skipif(not slow_tests_enabled(), reason="large automorphism groups and g=3 are slow (set QUATBRANDT_RUN_SLOW_TESTS=1).")
@pytest.mark.parametrize("g,ell,p", SLOW_GRID)
def test_graph_structure_slow(g: int, ell: int, p: int) -> None:
    _check_graph_structure(g, ell, p)


@pytest.mark.parametrize("kind", ["big", "little", "enhanced"])
def test_graph_json_reloads_to_the_same_graph(kind: str) -> None:
    G = get_workbench(1, 11).graph(kind, 2)
    again = WeightedGraph.from_json(G.to_json())
    assert again == G
    assert again.half_edges() == G.half_edges()
    assert [e.opposite for e in again.edges] == [e.opposite for e in G.edges]


def test_half_edges_survive_a_reload() -> None:
    G = WeightedGraph(
        kind="little",
        name="loop",
        vertices=(Vertex(0, 4, "0"),),
        edges=(Edge(0, 0, 0, 2, opposite=0, half_edge=True), Edge(1, 0, 0, 1, opposite=2), Edge(2, 0, 0, 1, opposite=1)),
    )
    G.check_opposites()
    again = WeightedGraph.from_record(GraphRecord.model_validate_json(G.to_json()))
    assert again == G
    assert [e.index for e in again.half_edges()] == [0]


def test_reload_rejects_a_broken_record() -> None:
    payload = json.loads(little_graph(1, 2, 11).to_json())
    payload["edges"][0]["opposite"] = len(payload["edges"])
    with pytest.raises(GraphError):
        WeightedGraph.from_json(json.dumps(payload))
    payload = json.loads(little_graph(1, 2, 11).to_json())
    payload["format_version"] = 99
    with pytest.raises(GraphError):
        WeightedGraph.from_json(json.dumps(payload))
