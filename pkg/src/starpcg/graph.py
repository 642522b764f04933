"""Simple undirected graphs and the structural queries used by the recognizer."""

from __future__ import annotations

import dataclasses
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Raised when a graph file cannot be parsed; carries the offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractError(ValueError):
    """An operation was called outside its documented precondition."""


@dataclasses.dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbor set of ``v``. Instances are immutable; build
    them with :meth:`from_edges` which validates the edge list.
    """

    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ValueError(f"vertex {u} out of range")
                if v not in self.adj[u]:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in sets[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            sets[u].add(v)
            sets[v].add(u)
        return cls(n, tuple(frozenset(s) for s in sets))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self.adj[v]))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighborhoods as integer bitmasks (bit ``u`` set iff ``u`` is a neighbor)."""
        out = []
        for nbrs in self.adj:
            m = 0
            for u in nbrs:
                m |= 1 << u
            out.append(m)
        return tuple(out)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclasses.dataclass(frozen=True)
class OddCycle:
    """Certificate of non-bipartiteness: an odd cycle listed in traversal order."""

    vertices: tuple[int, ...]


def parse_graph(text: str | bytes) -> Graph:
    """Parse the whitespace-separated ``n m`` + ``m`` edge-pair format.

    Lines whose first non-blank character is ``#`` are comments.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    tokens: list[tuple[str, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        tokens.extend((tok, lineno) for tok in line.split())

    def integer(idx: int, what: str) -> int:
        if idx >= len(tokens):
            last = tokens[-1][1] if tokens else 1
            raise GraphFormatError(f"unexpected end of input, expected {what}", last)
        tok, lineno = tokens[idx]
        try:
            return int(tok)
        except ValueError:
            raise GraphFormatError(f"malformed token {tok!r} ({what})", lineno) from None

    n = integer(0, "vertex count")
    m = integer(1, "edge count")
    if n < 0 or m < 0:
        raise GraphFormatError("negative count", tokens[0][1])
    sets: list[set[int]] = [set() for _ in range(n)]
    for k in range(m):
        u = integer(2 + 2 * k, "edge endpoint")
        v = integer(3 + 2 * k, "edge endpoint")
        lineno = tokens[2 + 2 * k][1]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range in edge {u} {v}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if v in sets[u]:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        sets[u].add(v)
        sets[v].add(u)
    if len(tokens) > 2 + 2 * m:
        raise GraphFormatError("trailing tokens after edge list", tokens[2 + 2 * m][1])
    return Graph(n, tuple(frozenset(s) for s in sets))


def format_graph(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, ordered by smallest vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        out.append(frozenset(comp))
    return out


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | OddCycle:
    """2-color a connected graph.

    Returns ``(side_a, side_b)`` with vertex 0 in ``side_a``, or an
    :class:`OddCycle` when the graph is not bipartite.
    """
    if g.n == 0:
        return frozenset(), frozenset()
    if len(components(g)) != 1:
        raise ContractError("bipartition expects a connected graph")
    color = [-1] * g.n
    parent = [-1] * g.n
    color[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in sorted(g.adj[v]):
            if color[u] < 0:
                color[u] = 1 - color[v]
                parent[u] = v
                queue.append(u)
            elif color[u] == color[v]:
                return OddCycle(_odd_cycle(parent, v, u))
    side_a = frozenset(v for v in range(g.n) if color[v] == 0)
    return side_a, frozenset(range(g.n)) - side_a


def _odd_cycle(parent: list[int], u: int, v: int) -> tuple[int, ...]:
    def to_root(x: int) -> list[int]:
        path = [x]
        while parent[x] >= 0:
            x = parent[x]
            path.append(x)
        return path

    pu, pv = to_root(u), to_root(v)
    on_pv = set(pv)
    lca = next(x for x in pu if x in on_pv)
    cycle = pu[: pu.index(lca) + 1] + pv[: pv.index(lca)][::-1]
    k = cycle.index(min(cycle))
    cycle = cycle[k:] + cycle[:k]
    if len(cycle) > 2 and cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + cycle[1:][::-1]
    return tuple(cycle)


def two_color(g: Graph, vertices: Iterable[int], seeds: dict[int, int]) -> dict[int, int] | None:
    """Propagate a 2-coloring of ``g[vertices]`` from ``seeds``.

    Every component of the induced subgraph must contain a seed; returns
    ``None`` on a conflict or an unseeded component.
    """
    keep = set(vertices)
    color: dict[int, int] = {}
    for s in sorted(seeds):
        if s not in keep:
            raise ContractError(f"seed {s} outside the vertex subset")
        if s in color:
            if color[s] != seeds[s]:
                return None
            continue
        color[s] = seeds[s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if u not in keep:
                    continue
                want = 1 - color[v]
                if u in color:
                    if color[u] != want:
                        return None
                    continue
                if u in seeds and seeds[u] != want:
                    return None
                color[u] = want
                queue.append(u)
    if len(color) != len(keep):
        return None
    return color


def mirror_pairs(g: Graph) -> frozenset[tuple[int, int]]:
    """All pairs ``(u, v)``, ``u < v``, with ``N(u) - {v} == N(v) - {u}``."""
    masks = g.masks
    out = []
    for u in range(g.n):
        mu = masks[u]
        for v in range(u + 1, g.n):
            if mu & ~(1 << v) == masks[v] & ~(1 << u):
                out.append((u, v))
    return frozenset(out)


def is_mirror(g: Graph, u: int, v: int) -> bool:
    masks = g.masks
    return masks[u] & ~(1 << v) == masks[v] & ~(1 << u)


def triangle_vertices(g: Graph) -> tuple[frozenset[int], frozenset[tuple[int, int]]]:
    """Vertices and edges lying on at least one triangle."""
    masks = g.masks
    et = frozenset((u, v) for u, v in g.edges() if masks[u] & masks[v])
    vt = frozenset(x for e in et for x in e)
    return vt, et


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """``g[keep]`` relabelled densely in ascending id order, plus the back-map."""
    back = tuple(sorted(set(keep)))
    index = {v: i for i, v in enumerate(back)}
    adj = tuple(frozenset(index[u] for u in g.adj[v] if u in index) for v in back)
    return Graph(len(back), adj), back


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    adj: list[frozenset[int]] = [frozenset()] * g.n
    for v in range(g.n):
        adj[perm[v]] = frozenset(perm[u] for u in g.adj[v])
    return Graph(g.n, tuple(adj))
