"""Deciding star-PCG membership and producing a checked witness.

A graph is a star-PCG exactly when some vertex ordering is gap-free. The
search for such an ordering goes component by component: bipartite
components reduce to two contiguous-ordering problems, one per side; a
non-bipartite component is anchored on a candidate core edge whose closed
common neighborhood must be the middle clique of the ordering. Components
are then nested inside each other, isolated vertices go first, and weights
are synthesized, normalized and checked by forward evaluation.
"""

from __future__ import annotations

import dataclasses
import logging
from fractions import Fraction
from typing import Sequence

from .families import SetFamily, contiguous_ordering
from .gaps import find_gap
from .graph import ContractError, Graph, OddCycle, bipartition, components, induced_subgraph, triangle_vertices, two_color
from .pcr import StarPCR, verify_witness
from .weights import SynthesisFailure, SynthesisReport, isolated_weight, normalize, run_synthesis

log = logging.getLogger(__name__)

TWO_NONBIPARTITE = "two_nonbipartite_components"
COMPONENT_REFUSED = "component_refused"
EXHAUSTED = "exhausted_candidates"


@dataclasses.dataclass(frozen=True)
class Refusal:
    """Why a graph (or one of its components) has no gap-free ordering."""

    kind: str
    details: dict

    def to_dict(self) -> dict:
        return {"star_pcg": False, "kind": self.kind, "details": self.details}


@dataclasses.dataclass(frozen=True)
class RecognitionOutcome:
    """Verdict plus evidence.

    On ``yes`` the ordering lists vertices by position and ``witness`` is a
    normalized star representation whose weights follow that ordering.
    ``raw_witness`` is the synthesized (pre-normalization) one and
    ``synthesis`` its step log. ``diagnostics`` is non-empty only when an
    internal consistency check failed.
    """

    is_star_pcg: bool
    ordering: tuple[int, ...] | None = None
    witness: StarPCR | None = None
    raw_witness: StarPCR | None = None
    verified: bool = False
    refusal: Refusal | None = None
    synthesis: SynthesisReport | None = None
    diagnostics: tuple[str, ...] = ()

    @property
    def verdict(self) -> str:
        return "yes" if self.is_star_pcg else "no"


# -- connected components ----------------------------------------------------


def _side_families(g: Graph, side_a: Sequence[int], side_b: Sequence[int]) -> list[frozenset[int]]:
    """Distinct neighborhoods of ``side_b`` vertices (each a subset of ``side_a`` when bipartite)."""
    seen: dict[frozenset[int], None] = {}
    for v in side_b:
        seen.setdefault(g.adj[v], None)
    return list(seen)


def _local_family(ground: Sequence[int], sets: Sequence[frozenset[int]]) -> SetFamily:
    index = {v: i for i, v in enumerate(ground)}
    return SetFamily(len(ground), tuple(frozenset(index[v] for v in s) for s in sets))


def recognize_connected_bipartite(g: Graph) -> tuple[tuple[int, ...], int] | Refusal:
    """Gap-free ordering of a connected bipartite graph as ``(order, k)``.

    The first ``k`` positions hold one side and the rest the other.
    """
    if g.m == 0 or len(components(g)) != 1:
        raise ContractError("expects a connected bipartite graph with at least one edge")
    sides = bipartition(g)
    if isinstance(sides, OddCycle):
        raise ContractError("graph is not bipartite")
    side1, side2 = (sorted(s) for s in sides)
    order1 = contiguous_ordering(_local_family(side1, _side_families(g, side1, side2)))
    order2 = contiguous_ordering(_local_family(side2, _side_families(g, side2, side1)))
    if order1 is None or order2 is None:
        failed = "first" if order1 is None else "second"
        return Refusal(COMPONENT_REFUSED, {"reason": f"no contiguous ordering for the {failed} side"})
    sigma1 = [side1[i] for i in order1]
    sigma2 = [side2[i] for i in order2]
    for candidate in (sigma1 + sigma2, sigma1 + sigma2[::-1]):
        if find_gap(g, candidate) is None:
            return tuple(candidate), len(sigma1)
    return Refusal(COMPONENT_REFUSED, {"reason": "both side concatenations have a gap"})


def candidate_cores(g: Graph) -> list[tuple[int, int]]:
    """Edges tried as the outer ends of the middle clique, in sorted order."""
    vt, _ = triangle_vertices(g)
    if not vt:
        return g.edges()
    return [(u, v) for u, v in g.edges() if u in vt and v in vt]


def _frame(n: int, low: Sequence[int], v1: int, core: Sequence[int], v2: int) -> list[frozenset[int]]:
    """Prefixes of ``low | v1 | core interior | v2 | high`` and their complements.

    Requiring all of them to be consecutive pins the block layout (up to
    reversal), including which core end faces which side.
    """
    everything = frozenset(range(n))
    low_set = frozenset(low)
    prefixes = [
        low_set,
        low_set | {v1},
        low_set | (frozenset(core) - {v2}),
        low_set | frozenset(core),
    ]
    out = []
    for pre in prefixes:
        for part in (pre, everything - pre):
            if part and part != everything:
                out.append(part)
    return out


def _try_core(g: Graph, v1: int, v2: int) -> tuple[int, ...] | str:
    masks = g.masks
    core_mask = (masks[v1] & masks[v2]) | (1 << v1) | (1 << v2)
    core = [v for v in range(g.n) if core_mask >> v & 1]
    for v in core:
        if core_mask & ~masks[v] & ~(1 << v):
            return "core is not a clique"
    rest = [v for v in range(g.n) if not core_mask >> v & 1]
    seeds: dict[int, int] = {}
    for v in rest:
        touches_core = masks[v] & core_mask
        if not touches_core:
            continue
        in1 = masks[v] >> v2 & 1
        in2 = masks[v] >> v1 & 1
        if in1 and in2:  # pragma: no cover - would be a common neighbor, hence in the core
            return "vertex adjacent to both ends outside the core"
        if not (in1 or in2):
            return "core neighbor adjacent to neither end"
        seeds[v] = 0 if in1 else 1
    coloring = two_color(g, rest, seeds)
    if coloring is None:
        return "remainder has no seed-consistent 2-coloring"
    low = [v for v in rest if coloring[v] == 0]
    high = [v for v in rest if coloring[v] == 1]
    sets = _side_families(g, range(g.n), high) + _side_families(g, range(g.n), low) + [frozenset(core)]
    family = SetFamily(g.n, tuple(sets))
    closed = [g.adj[x] | {x} for x in core]
    order = contiguous_ordering(family, consecutive=_frame(g.n, low, v1, core, v2) + closed)
    if order is None:
        return "family has no contiguous ordering"
    if find_gap(g, order) is None:
        return order
    repaired = _resort_wings(g, order, frozenset(low), frozenset(high))
    if repaired is None:
        return "contiguous ordering has a gap"
    return repaired


def _resort_wings(g: Graph, order: Sequence[int], low: frozenset[int], high: frozenset[int],
                  rounds: int = 4) -> tuple[int, ...] | None:
    """Reorder each wing so neighbor spans are non-increasing along it.

    Both wings are independent sets, so the spans of a wing depend only on
    the positions outside it. Alternating the two sorts reaches a fixed point
    quickly; the result is accepted only if it is gap-free.
    """
    order = list(order)
    for _ in range(rounds):
        changed = False
        for wing in (high, low):
            pos = {v: i for i, v in enumerate(order)}
            slots = [i for i, v in enumerate(order) if v in wing]
            members = [order[i] for i in slots]
            key = lambda v: (-min(pos[u] for u in g.adj[v]), -max(pos[u] for u in g.adj[v]), pos[v])  # noqa: E731
            resorted = sorted(members, key=key)
            if resorted != members:
                changed = True
                for i, v in zip(slots, resorted):
                    order[i] = v
        if find_gap(g, order) is None:
            return tuple(order)
        if not changed:
            break
    return None


def recognize_connected_nonbipartite(g: Graph) -> tuple[int, ...] | Refusal:
    """Gap-free ordering of a connected non-bipartite graph, trying candidate cores in order."""
    trail = []
    for v1, v2 in candidate_cores(g):
        result = _try_core(g, v1, v2)
        if not isinstance(result, str):
            return result
        trail.append({"pair": [v1, v2], "reason": result})
    return Refusal(EXHAUSTED, {"candidates": trail})


# -- whole graphs -------------------------------------------------------------


def assemble_disconnected(
    nonbipartite: Sequence[int] | None,
    bipartite: Sequence[tuple[Sequence[int], int]],
    isolated: Sequence[int],
) -> tuple[int, ...]:
    """Nest solved components into one ordering.

    Bipartite parts (``(order, k)``) are wrapped around the current ordering,
    largest first, each contributing its first ``k`` vertices on the left and
    the rest on the right. Isolated vertices are prepended last.
    """
    parts = sorted(bipartite, key=lambda part: -len(part[0]))
    if nonbipartite is not None:
        current = list(nonbipartite)
    elif parts:
        current = list(parts[0][0])
        parts = parts[1:]
    else:
        current = []
    for order, k in parts:
        current = list(order[:k]) + current + list(order[k:])
    return tuple(isolated) + tuple(current)


def _trivial_witness(n: int) -> StarPCR:
    """All pairs below ``dmin``: the edgeless graph on ``n`` vertices."""
    return StarPCR(tuple(Fraction(1) for _ in range(n)), Fraction(3), Fraction(4))


def recognize(g: Graph, *, lookahead: bool = True) -> RecognitionOutcome:
    """Decide whether ``g`` is a star-PCG; a ``yes`` always carries a verified witness."""
    isolated = [v for v in range(g.n) if not g.adj[v]]
    comps = [c for c in components(g) if len(c) > 1]
    pieces = []
    for comp in comps:
        sub, back = induced_subgraph(g, comp)
        pieces.append((sub, back, bipartition(sub)))
    odd = [p for p in pieces if isinstance(p[2], OddCycle)]
    if len(odd) >= 2:
        cycles = [[p[1][v] for v in p[2].vertices] for p in odd]
        return RecognitionOutcome(False, refusal=Refusal(TWO_NONBIPARTITE, {"odd_cycles": cycles}))

    nonbip_order: tuple[int, ...] | None = None
    bip_parts: list[tuple[tuple[int, ...], int]] = []
    for sub, back, sides in pieces:
        if isinstance(sides, OddCycle):
            res = recognize_connected_nonbipartite(sub)
            if isinstance(res, Refusal):
                details = dict(res.details, component=list(back))
                return RecognitionOutcome(False, refusal=Refusal(res.kind, details))
            nonbip_order = tuple(back[v] for v in res)
        else:
            res = recognize_connected_bipartite(sub)
            if isinstance(res, Refusal):
                details = dict(res.details, component=list(back))
                return RecognitionOutcome(False, refusal=Refusal(res.kind, details))
            order, k = res
            bip_parts.append((tuple(back[v] for v in order), k))

    ordering = assemble_disconnected(nonbip_order, bip_parts, isolated)
    cert = find_gap(g, ordering)
    if cert is not None:
        msg = f"assembled ordering has a gap: {cert}"
        log.error(msg)
        return RecognitionOutcome(False, refusal=Refusal(EXHAUSTED, {"internal": msg}), diagnostics=(msg,))
    return _certify(g, ordering, len(isolated), lookahead=lookahead)


def _certify(g: Graph, ordering: tuple[int, ...], n_isolated: int, *, lookahead: bool) -> RecognitionOutcome:
    core_order = ordering[n_isolated:]
    report = None
    if not core_order:
        raw = _trivial_witness(g.n)
    else:
        sub, back = induced_subgraph(g, core_order)
        index = {v: i for i, v in enumerate(back)}
        try:
            pcr, report = run_synthesis(sub, [index[v] for v in core_order], lookahead=lookahead)
        except SynthesisFailure as exc:
            msg = f"weight synthesis failed: {exc}"
            log.error(msg)
            return RecognitionOutcome(False, ordering=ordering,
                                      refusal=Refusal(EXHAUSTED, {"internal": msg}), diagnostics=(msg,))
        w_iso = isolated_weight(pcr)
        raw = StarPCR((w_iso,) * n_isolated + pcr.weights, pcr.dmin, pcr.dmax)
    witness = normalize(raw)
    ok = verify_witness(g, witness, ordering) and verify_witness(g, raw, ordering)
    if not ok:
        msg = "witness failed forward verification"
        log.error(msg)
        return RecognitionOutcome(False, ordering=ordering, refusal=Refusal(EXHAUSTED, {"internal": msg}),
                                  diagnostics=(msg,))
    return RecognitionOutcome(True, ordering, witness, raw, True, synthesis=report)
