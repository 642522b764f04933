import random

from hypothesis import given, settings

from conftest import C4, C5, K3, K13, P4, TWO_K2, TWO_TRIANGLES, graphs
from starpcg.gaps import find_gap, is_gap_free
from starpcg.graph import Graph, components, induced_subgraph
from starpcg.oracle import brute_force_gap_free, random_graph
from starpcg.pcr import StarPCR, verify_witness
from starpcg.recognize import (
    COMPONENT_REFUSED,
    EXHAUSTED,
    TWO_NONBIPARTITE,
    Refusal,
    assemble_disconnected,
    candidate_cores,
    recognize,
    recognize_connected_bipartite,
    recognize_connected_nonbipartite,
)


def _accepts(g):
    out = recognize(g)
    assert out.verified == out.is_star_pcg
    assert out.diagnostics == ()
    if out.is_star_pcg:
        assert verify_witness(g, out.witness, out.ordering)
        assert verify_witness(g, out.raw_witness, out.ordering)
    else:
        assert out.refusal is not None and out.refusal.kind
    return out


def test_p4_yes():
    out = _accepts(P4)
    assert out.verdict == "yes"
    assert all(w > 0 and w.denominator == 1 for w in out.witness.weights)


def test_two_triangles_no():
    out = _accepts(TWO_TRIANGLES)
    assert out.verdict == "no" and out.refusal.kind == TWO_NONBIPARTITE
    assert out.refusal.to_dict()["star_pcg"] is False
    assert len(out.refusal.details["odd_cycles"]) == 2


def test_claw_yes_and_hand_witness():
    assert _accepts(K13).is_star_pcg
    assert verify_witness(K13, StarPCR((1, 1, 1, 3), 4, 4), (1, 2, 3, 0))


def test_bipartite_examples():
    order, k = recognize_connected_bipartite(C4)
    assert k == 2 and find_gap(C4, order) is None
    order, k = recognize_connected_bipartite(P4)
    assert k == 2 and find_gap(P4, order) is None
    order, k = recognize_connected_bipartite(K13)
    assert find_gap(K13, order) is None
    sides = {frozenset(order[:k]), frozenset(order[k:])}
    assert sides == {frozenset({0}), frozenset({1, 2, 3})}


def test_bipartite_refusal():
    # Subdivided claw: no gap-free ordering exists.
    spider = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert brute_force_gap_free(spider) is None
    result = recognize_connected_bipartite(spider)
    assert isinstance(result, Refusal) and result.kind == COMPONENT_REFUSED


def test_nonbipartite_examples():
    assert find_gap(K3, recognize_connected_nonbipartite(K3)) is None
    k4 = Graph.complete(4)
    assert find_gap(k4, recognize_connected_nonbipartite(k4)) is None
    c5 = recognize_connected_nonbipartite(C5)
    assert isinstance(c5, Refusal) == (brute_force_gap_free(C5) is None)
    assert candidate_cores(C5) == C5.edges()


def test_exhaustion_trail():
    out = recognize(C5)
    if not out.is_star_pcg:
        assert out.refusal.kind == EXHAUSTED
        assert [c["pair"] for c in out.refusal.details["candidates"]] == [list(e) for e in C5.edges()]
        assert out.refusal.details["component"] == [0, 1, 2, 3, 4]


def test_assembly_examples():
    order = assemble_disconnected(None, [((0, 1), 1), ((2, 3), 1)], [])
    assert find_gap(TWO_K2, order) is None
    assert verify_witness(TWO_K2, StarPCR((1, 2, 5, 6), 7, 7), (0, 2, 3, 1))
    assert _accepts(TWO_K2).is_star_pcg
    k3_iso = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
    out = _accepts(k3_iso)
    assert out.ordering[0] == 3
    assert assemble_disconnected((2, 0, 1), [], []) == (2, 0, 1)


def test_edgeless_and_tiny_graphs():
    for n in range(4):
        out = _accepts(Graph.empty(n))
        assert out.is_star_pcg
    assert _accepts(Graph.complete(2)).is_star_pcg


def test_complete_graphs():
    for n in range(1, 9):
        assert _accepts(Graph.complete(n)).is_star_pcg


# Each of these was once missed because the family left one wing's internal order free.
REGRESSIONS = [
    Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (2, 3), (2, 4)]),
    Graph.from_edges(6, [(0, 2), (0, 4), (0, 5), (1, 2), (1, 5), (2, 3), (2, 5), (3, 5)]),
    Graph.from_edges(7, [(0, 4), (1, 3), (1, 4), (2, 5), (3, 4), (4, 5)]),
]


def test_regressions_match_oracle():
    for g in REGRESSIONS:
        assert brute_force_gap_free(g) is not None
        assert _accepts(g).is_star_pcg


@settings(max_examples=300)
@given(graphs(max_n=6))
def test_matches_oracle(g):
    out = _accepts(g)
    assert out.is_star_pcg == (brute_force_gap_free(g) is not None)


def _crossing(order, g):
    pos = {v: p for p, v in enumerate(order)}
    edges = [tuple(sorted((pos[u], pos[v]))) for u, v in g.edges()]
    for i, j in edges:
        for k, l in edges:
            if i < k < j < l:
                yield (order[i], order[j]), (order[k], order[l])


@settings(max_examples=150)
@given(graphs(max_n=8))
def test_accepted_orderings_structure(g):
    out = _accepts(g)
    if not out.is_star_pcg:
        return
    assert is_gap_free(g, out.ordering[::-1])
    comp_of = {v: i for i, c in enumerate(components(g)) for v in c}
    for e1, e2 in _crossing(out.ordering, g):
        assert comp_of[e1[0]] == comp_of[e2[0]]


@settings(max_examples=60)
@given(graphs(min_n=1, max_n=9))
def test_heredity(g):
    if not recognize(g).is_star_pcg:
        return
    for v in range(g.n):
        sub, _ = induced_subgraph(g, [u for u in range(g.n) if u != v])
        assert recognize(sub).is_star_pcg


def test_lookahead_off_is_still_sound():
    rng = random.Random(3)
    for _ in range(60):
        g = random_graph(rng.randint(2, 8), rng.choice((0.3, 0.5, 0.7)), rng)
        a = recognize(g, lookahead=False)
        b = recognize(g)
        assert a.is_star_pcg == b.is_star_pcg
        if a.is_star_pcg:
            assert verify_witness(g, a.witness, a.ordering)
