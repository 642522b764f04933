"""Pairwise compatibility representations: trees, forward evaluation, witnesses."""

from __future__ import annotations

import dataclasses
import json
from collections import deque
from fractions import Fraction
from typing import Sequence

from .graph import ContractError, Graph, GraphFormatError


@dataclasses.dataclass(frozen=True)
class StarPCR:
    """Leaf-edge weights of a star, listed by position along an ordering."""

    weights: tuple[Fraction, ...]
    dmin: Fraction
    dmax: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        object.__setattr__(self, "dmin", Fraction(self.dmin))
        object.__setattr__(self, "dmax", Fraction(self.dmax))

    def is_sorted(self) -> bool:
        w = self.weights
        return all(w[i] <= w[i + 1] for i in range(len(w) - 1))


@dataclasses.dataclass(frozen=True)
class WeightedTree:
    """Tree on nodes ``0..nodes-1``; ``leaves[v]`` is the node carrying graph vertex ``v``."""

    nodes: int
    edges: tuple[tuple[int, int, Fraction], ...]
    leaves: tuple[int, ...]

    def __post_init__(self):
        if len(self.edges) != self.nodes - 1:
            raise ValueError("a tree on k nodes has k-1 edges")
        adj: list[list[int]] = [[] for _ in range(self.nodes)]
        for u, v, _ in self.edges:
            if not (0 <= u < self.nodes and 0 <= v < self.nodes) or u == v:
                raise ValueError(f"bad tree edge ({u}, {v})")
            adj[u].append(v)
            adj[v].append(u)
        if self.nodes and _reach(adj, 0) != self.nodes:
            raise ValueError("tree is not connected")
        if len(set(self.leaves)) != len(self.leaves):
            raise ValueError("leaf labels must be distinct")
        for node in self.leaves:
            if not 0 <= node < self.nodes or len(adj[node]) > 1:
                raise ValueError(f"labelled node {node} is not a leaf")

    def adjacency(self) -> list[list[tuple[int, Fraction]]]:
        adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.nodes)]
        for u, v, w in self.edges:
            adj[u].append((v, Fraction(w)))
            adj[v].append((u, Fraction(w)))
        return adj


def _reach(adj: list[list[int]], s: int) -> int:
    seen = {s}
    queue = deque([s])
    while queue:
        for u in adj[queue.popleft()]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen)


def leaf_distances(t: WeightedTree) -> list[list[Fraction]]:
    """Path-weight sums between labelled leaves, indexed by graph vertex."""
    adj = t.adjacency()
    n = len(t.leaves)
    out = [[Fraction(0)] * n for _ in range(n)]
    node_label = {node: v for v, node in enumerate(t.leaves)}
    for v, root in enumerate(t.leaves):
        dist = {root: Fraction(0)}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, w in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + w
                    queue.append(y)
        for node, d in dist.items():
            if node in node_label:
                out[v][node_label[node]] = d
    return out


def evaluate_pcr(t: WeightedTree, dmin: Fraction, dmax: Fraction) -> Graph:
    """The graph on leaf labels joining pairs at distance within ``[dmin, dmax]``."""
    if dmin > dmax:
        raise ContractError("dmin must not exceed dmax")
    d = leaf_distances(t)
    n = len(t.leaves)
    return Graph.from_edges(
        n, ((u, v) for u in range(n) for v in range(u + 1, n) if dmin <= d[u][v] <= dmax)
    )


def star_of(pcr: StarPCR, order: Sequence[int]) -> WeightedTree:
    """Star with center node 0; graph vertex ``v`` hangs off node ``v + 1``."""
    if len(order) != len(pcr.weights):
        raise ContractError("ordering and weight vector differ in length")
    edges = tuple((0, v + 1, pcr.weights[p]) for p, v in enumerate(order))
    return WeightedTree(len(order) + 1, edges, tuple(v + 1 for v in range(len(order))))


def star_graph(pcr: StarPCR, order: Sequence[int]) -> Graph:
    """Forward evaluation for stars, where leaf distance is a plain weight sum."""
    w = pcr.weights
    n = len(order)
    return Graph.from_edges(
        n,
        (
            (order[p], order[q])
            for p in range(n)
            for q in range(p + 1, n)
            if pcr.dmin <= w[p] + w[q] <= pcr.dmax
        ),
    )


def verify_witness(g: Graph, pcr: StarPCR, order: Sequence[int]) -> bool:
    """True iff the star realizes ``g`` exactly and weights are sorted along ``order``."""
    if sorted(order) != list(range(g.n)) or len(pcr.weights) != g.n:
        return False
    if pcr.dmin > pcr.dmax or not pcr.is_sorted():
        return False
    return evaluate_pcr(star_of(pcr, order), pcr.dmin, pcr.dmax) == g


# -- serialization -----------------------------------------------------------


def _frac_pair(x: Fraction) -> list[str]:
    return [str(x.numerator), str(x.denominator)]


def _parse_frac_pair(item) -> Fraction:
    if not (isinstance(item, list) and len(item) == 2 and all(isinstance(s, str) for s in item)):
        raise ValueError(f"expected [num, den] decimal strings, got {item!r}")
    num, den = int(item[0]), int(item[1])
    if den <= 0:
        raise ValueError("denominator must be positive")
    return Fraction(num, den)


def witness_to_dict(pcr: StarPCR, order: Sequence[int]) -> dict:
    return {
        "star_pcg": True,
        "ordering": list(order),
        "weights": [_frac_pair(w) for w in pcr.weights],
        "dmin": _frac_pair(pcr.dmin),
        "dmax": _frac_pair(pcr.dmax),
    }


def witness_from_dict(doc: dict) -> tuple[StarPCR, tuple[int, ...]]:
    if doc.get("star_pcg") is not True:
        raise ValueError("document is not a positive witness")
    order = tuple(int(v) for v in doc["ordering"])
    weights = tuple(_parse_frac_pair(w) for w in doc["weights"])
    pcr = StarPCR(weights, _parse_frac_pair(doc["dmin"]), _parse_frac_pair(doc["dmax"]))
    return pcr, order


def witness_to_json(pcr: StarPCR, order: Sequence[int]) -> str:
    return json.dumps(witness_to_dict(pcr, order))


def parse_fraction(text: str) -> Fraction:
    """Parse ``num/den`` or an integer into an exact fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text!r}") from None


def parse_tree(text: str | bytes) -> WeightedTree:
    """Parse a tree file.

    Line 1 holds the node count ``k``; the next ``k-1`` lines are edges
    ``u v num/den``; the last line lists, for graph vertices ``0, 1, ...``
    in order, the tree node carrying that vertex.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [
        (no, line.split())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphFormatError("empty tree file", 1)
    no, head = lines[0]
    if len(head) != 1 or not head[0].isdigit():
        raise GraphFormatError("expected node count", no)
    k = int(head[0])
    if len(lines) != k + 1:
        raise GraphFormatError(f"expected {k - 1} edge lines and one leaf line", no)
    edges = []
    for no, toks in lines[1:k]:
        if len(toks) != 3:
            raise GraphFormatError("edge line must be 'u v num/den'", no)
        try:
            edges.append((int(toks[0]), int(toks[1]), parse_fraction(toks[2])))
        except ValueError as exc:
            raise GraphFormatError(str(exc), no) from None
    no, toks = lines[k]
    try:
        leaves = tuple(int(t) for t in toks)
    except ValueError:
        raise GraphFormatError("leaf line must list node ids", no) from None
    try:
        return WeightedTree(k, tuple(edges), leaves)
    except ValueError as exc:
        raise GraphFormatError(str(exc), no) from None
