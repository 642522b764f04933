"""Gaps of ordered graphs and the red/green/blue pair coloring.

Positions are 1-based throughout this module, matching the indices
``a(i)``, ``b(i)``, ``i_red`` and ``i_blue`` (with sentinels 0 and n+1).
"""

from __future__ import annotations

import dataclasses
from typing import Literal, Sequence

from .graph import ContractError, Graph

Color = Literal["red", "green", "blue"]


class GapPresent(ValueError):
    def __init__(self, certificate: "GapCertificate"):
        self.certificate = certificate
        super().__init__(f"ordering has a gap: {certificate}")


class IsolatedVertex(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class GapCertificate:
    """A non-adjacent pair at positions ``i < j`` and the two edges exposing it.

    ``tag`` is one of ``g1a`` (both edges at ``v_i`` straddle ``j``), ``g1b``
    (both edges at ``v_j`` straddle ``i``), ``g2`` or ``g3``. Edges are given
    as position pairs.
    """

    i: int
    j: int
    tag: str
    e1: tuple[int, int]
    e2: tuple[int, int]

    def check(self, g: Graph, order: Sequence[int]) -> bool:
        """Re-derive the certificate from scratch against ``g``."""
        v = lambda p: order[p - 1]  # noqa: E731
        i, j = self.i, self.j
        if not i < j or g.has_edge(v(i), v(j)):
            return False
        if not all(g.has_edge(v(x), v(y)) for x, y in (self.e1, self.e2)):
            return False
        (a1, b1), (a2, b2) = self.e1, self.e2
        if self.tag == "g1a":
            return a1 == i and a2 == i and b1 < j < b2
        if self.tag == "g1b":
            return b1 == j and b2 == j and a1 < i < a2
        if self.tag == "g2":
            return a1 == i and a2 == j and b2 < i and j < b1
        if self.tag == "g3":
            return a1 == i and a2 == j and b1 < j and i < b2
        return False

    def to_dict(self, order: Sequence[int]) -> dict:
        return {
            "pair": [self.i, self.j],
            "vertices": [order[self.i - 1], order[self.j - 1]],
            "condition": self.tag,
            "e1": [order[p - 1] for p in self.e1],
            "e2": [order[p - 1] for p in self.e2],
        }


def _check_order(g: Graph, order: Sequence[int]) -> None:
    if sorted(order) != list(range(g.n)):
        raise ContractError("ordering is not a permutation of the vertices")


def neighbor_spans(g: Graph, order: Sequence[int]) -> tuple[list[int], list[int]]:
    """Smallest and largest neighbor position for each position (0 when isolated)."""
    n = g.n
    pos = [0] * n
    for p, v in enumerate(order, start=1):
        pos[v] = p
    lo = [0] * (n + 1)
    hi = [0] * (n + 1)
    for p, v in enumerate(order, start=1):
        ps = [pos[u] for u in g.adj[v]]
        if ps:
            lo[p], hi[p] = min(ps), max(ps)
    return lo, hi


def find_gap(g: Graph, order: Sequence[int]) -> GapCertificate | None:
    """Lexicographically smallest gapped pair, or None when ``order`` is gap-free."""
    _check_order(g, order)
    n = g.n
    lo, hi = neighbor_spans(g, order)
    masks = g.masks
    for i in range(1, n + 1):
        vi = order[i - 1]
        mi = masks[vi]
        for j in range(i + 1, n + 1):
            if mi >> order[j - 1] & 1:
                continue
            if lo[i] and lo[i] < j < hi[i]:
                return GapCertificate(i, j, "g1a", (i, lo[i]), (i, hi[i]))
            if lo[j] and lo[j] < i < hi[j]:
                return GapCertificate(i, j, "g1b", (lo[j], j), (hi[j], j))
            if lo[i] and lo[j] and hi[i] > j and lo[j] < i:
                return GapCertificate(i, j, "g2", (i, hi[i]), (j, lo[j]))
            if lo[i] and lo[j] and lo[i] < j and hi[j] > i:
                return GapCertificate(i, j, "g3", (i, lo[i]), (j, hi[j]))
    return None


def is_gap_free(g: Graph, order: Sequence[int]) -> bool:
    """Boolean form of :func:`find_gap`, without certificate construction."""
    n = g.n
    pos = [0] * n
    for p, v in enumerate(order, start=1):
        pos[v] = p
    lo = [0] * (n + 1)
    hi = [0] * (n + 1)
    adj = g.adj
    for p, v in enumerate(order, start=1):
        if adj[v]:
            ps = [pos[u] for u in adj[v]]
            lo[p] = min(ps)
            hi[p] = max(ps)
    masks = g.masks
    for i in range(1, n + 1):
        li, hi_i = lo[i], hi[i]
        mi = masks[order[i - 1]]
        for j in range(i + 1, n + 1):
            if mi >> order[j - 1] & 1:
                continue
            lj = lo[j]
            if li and (li < j < hi_i):
                return False
            if not lj:
                continue
            hj = hi[j]
            if lj < i < hj:
                return False
            if li and ((hi_i > j and lj < i) or (li < j and hj > i)):
                return False
    return True


@dataclasses.dataclass(frozen=True)
class ProperColoring:
    """Pair coloring of an ordered graph with prefix-red / suffix-blue structure.

    ``a[i-1]`` and ``b[i-1]`` hold ``a(i)`` and ``b(i)``: the red partners of
    position ``i`` are the positions before ``a(i)``, the blue partners the
    positions after ``b(i)``.
    """

    order: tuple[int, ...]
    a: tuple[int, ...]
    b: tuple[int, ...]
    i_red: int
    i_blue: int
    red: frozenset[tuple[int, int]]
    blue: frozenset[tuple[int, int]]

    @property
    def n(self) -> int:
        return len(self.order)

    def color(self, i: int, j: int) -> Color:
        if i > j:
            i, j = j, i
        if (i, j) in self.red:
            return "red"
        if (i, j) in self.blue:
            return "blue"
        return "green"

    def a_of(self, i: int) -> int:
        return self.a[i - 1]

    def b_of(self, i: int) -> int:
        return self.b[i - 1]


def proper_coloring(g: Graph, order: Sequence[int]) -> ProperColoring:
    """Color every non-edge red or blue for a gap-free ordering.

    A non-edge ``(x, y)``, ``x < y``, is red when ``x`` lies before the
    neighborhood of ``v_y`` and blue when ``y`` lies after the neighborhood of
    ``v_x``; gap-freeness guarantees exactly one applies.
    """
    _check_order(g, order)
    cert = find_gap(g, order)
    if cert is not None:
        raise GapPresent(cert)
    if any(not g.adj[v] for v in order):
        raise IsolatedVertex("proper_coloring needs every vertex to have a neighbor")
    n = g.n
    order = tuple(order)
    lo, hi = neighbor_spans(g, order)
    masks = g.masks
    red, blue = set(), set()
    for x in range(1, n + 1):
        mx = masks[order[x - 1]]
        for y in range(x + 1, n + 1):
            if mx >> order[y - 1] & 1:
                continue
            is_red = x < lo[y]
            is_blue = y > hi[x]
            assert is_red != is_blue, f"pair ({x}, {y}) colored {is_red=} {is_blue=}"
            (red if is_red else blue).add((x, y))

    a = [1] * n
    b = [n] * n
    for x, y in red:
        a[x - 1] = max(a[x - 1], y + 1)
        a[y - 1] = max(a[y - 1], x + 1)
    for x, y in blue:
        b[x - 1] = min(b[x - 1], y - 1)
        b[y - 1] = min(b[y - 1], x - 1)
    i_red = max((i for i in range(1, n + 1) if i < a[i - 1]), default=0)
    i_blue = min((i for i in range(1, n + 1) if b[i - 1] < i), default=n + 1)
    c = ProperColoring(order, tuple(a), tuple(b), i_red, i_blue, frozenset(red), frozenset(blue))
    _assert_structure(c)
    return c


def _assert_structure(c: ProperColoring) -> None:
    n = c.n
    for i in range(1, n + 1):
        reds = {j for j in range(1, n + 1) if j != i and c.color(i, j) == "red"}
        blues = {j for j in range(1, n + 1) if j != i and c.color(i, j) == "blue"}
        assert reds == set(range(1, c.a_of(i))) - {i}, f"red partners of {i} not a prefix"
        assert blues == set(range(c.b_of(i) + 1, n + 1)) - {i}, f"blue partners of {i} not a suffix"
    for i in range(1, n):
        assert c.a_of(i + 1) <= c.a_of(i) and c.b_of(i + 1) <= c.b_of(i)
    assert c.i_red + 1 <= c.i_blue - 1
    alt_red = max((i for i in range(1, n) if (i, i + 1) in c.red), default=0)
    alt_blue = min((i for i in range(2, n + 1) if (i - 1, i) in c.blue), default=n + 1)
    assert (alt_red, alt_blue) == (c.i_red, c.i_blue)
