import random

import pytest
from hypothesis import given

from conftest import C4, K3, P4, TWO_K2, graphs
from starpcg.graph import (
    ContractError,
    Graph,
    GraphFormatError,
    OddCycle,
    bipartition,
    components,
    format_graph,
    induced_subgraph,
    mirror_pairs,
    parse_graph,
    relabel,
    triangle_vertices,
)


def test_parse_path():
    g = parse_graph("3 2\n0 1\n1 2\n")
    assert g.edges() == [(0, 1), (1, 2)]


def test_parse_single_vertex():
    g = parse_graph(b"1 0\n")
    assert g.n == 1 and g.m == 0


def test_parse_comments_and_edge_order():
    g = parse_graph("# path\n3 2\n2 1\n# mid\n1 0\n")
    assert g.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text, fragment, line",
    [
        ("2 1\n0 0\n", "self-loop", 2),
        ("3 2\n0 1\n1 0\n", "duplicate", 3),
        ("2 1\n0 5\n", "out of range", 2),
        ("2 1\n0 x\n", "malformed", 2),
        ("3 2\n0 1\n", "unexpected end", 2),
        ("2 0\n0 1\n", "trailing", 2),
    ],
)
def test_parse_errors_name_line(text, fragment, line):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert fragment in str(info.value)
    assert info.value.line == line


def test_format_round_trip():
    assert parse_graph(format_graph(P4)) == P4


def test_components():
    assert components(Graph.from_edges(3, [(0, 1), (1, 2)])) == [frozenset({0, 1, 2})]
    assert sorted(map(sorted, components(TWO_K2))) == [[0, 1], [2, 3]]
    assert len(components(Graph.empty(3))) == 3


def test_bipartition_examples():
    assert set(bipartition(C4)) == {frozenset({0, 2}), frozenset({1, 3})}
    odd = bipartition(K3)
    assert isinstance(odd, OddCycle) and sorted(odd.vertices) == [0, 1, 2]
    assert set(bipartition(Graph.from_edges(2, [(0, 1)]))) == {frozenset({0}), frozenset({1})}


def test_bipartition_rejects_disconnected():
    with pytest.raises(ContractError):
        bipartition(TWO_K2)


def test_mirror_examples():
    assert mirror_pairs(Graph.from_edges(2, [(0, 1)])) == {(0, 1)}
    assert mirror_pairs(Graph.from_edges(3, [(0, 1), (1, 2)])) == {(0, 2)}
    assert mirror_pairs(P4) == frozenset()


def test_triangle_vertices_examples():
    vt, et = triangle_vertices(K3)
    assert vt == {0, 1, 2} and len(et) == 3
    assert triangle_vertices(C4) == (frozenset(), frozenset())
    k4_minus = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    vt, et = triangle_vertices(k4_minus)
    assert vt == {0, 1, 2, 3} and len(et) == 5


def test_induced_subgraph_examples():
    sub, back = induced_subgraph(K3, [0, 2])
    assert sub == Graph.complete(2) and back == (0, 2)
    sub, back = induced_subgraph(P4, range(4))
    assert sub == P4 and back == (0, 1, 2, 3)
    assert induced_subgraph(P4, [1, 2])[0] == Graph.complete(2)


@given(graphs(min_n=1, max_n=8))
def test_even_cycles_bipartite_triangles_not(g):
    for comp in components(g):
        sub, _ = induced_subgraph(g, comp)
        result = bipartition(sub)
        if triangle_vertices(sub)[0]:
            assert isinstance(result, OddCycle)
        if not isinstance(result, OddCycle):
            a, b = result
            assert all(not (sub.adj[v] & a) for v in a) and all(not (sub.adj[v] & b) for v in b)
        else:
            cyc = result.vertices
            assert len(cyc) % 2 == 1
            assert all(sub.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


@given(graphs(max_n=8))
def test_mirror_pairs_match_definition_and_relabeling(g):
    pairs = mirror_pairs(g)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            assert ((u, v) in pairs) == (g.adj[u] - {v} == g.adj[v] - {u})
    perm = list(range(g.n))
    random.Random(g.m).shuffle(perm)
    moved = mirror_pairs(relabel(g, perm))
    assert moved == {tuple(sorted((perm[u], perm[v]))) for u, v in pairs}


@given(graphs(max_n=8))
def test_triangle_edges_have_common_neighbor(g):
    vt, et = triangle_vertices(g)
    for u, v in et:
        assert g.has_edge(u, v) and g.adj[u] & g.adj[v]
    assert vt == {x for e in et for x in e}
