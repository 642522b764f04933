"""Exact star weights for a gap-free ordering.

The weights are grown outward from the clique in the middle of the
ordering: first leftwards down to position 1 with the right frontier held at
``i_blue``, then rightwards up to position n over the full window. Each new
weight comes from a closed-form case rule; the value is then checked against
its admissible interval and replaced by a point of that interval when the
rule misses. The interval covers every already-placed partner and, by
default, the exact range that keeps the remaining positions completable
(see :class:`BoundarySystem`), so a stall can only come from the seed.
"""

from __future__ import annotations

import dataclasses
import logging
from collections import deque
from fractions import Fraction
from typing import Sequence

from .gaps import ProperColoring, proper_coloring
from .graph import ContractError, Graph, mirror_pairs
from .pcr import StarPCR, star_graph

log = logging.getLogger(__name__)

ONE = Fraction(1)


class SynthesisFailure(RuntimeError):
    pass


class EmptyInterval(SynthesisFailure):
    pass


@dataclasses.dataclass(frozen=True)
class Step:
    """One frontier extension: which rule fired and whether it had to be overridden."""

    side: str  # "low" | "high"
    position: int
    case: str  # "i" .. "iv"
    rule_value: Fraction | None
    value: Fraction
    fallback: bool
    printed_value: Fraction | None = None


@dataclasses.dataclass(frozen=True)
class SynthesisWindow:
    """Weights fixed on positions ``p+1 .. q-1`` (index ``i-1`` holds position ``i``)."""

    p: int
    q: int
    weights: tuple[Fraction | None, ...]
    dmin: Fraction
    dmax: Fraction
    steps: tuple[Step, ...] = ()

    def w(self, i: int) -> Fraction:
        value = self.weights[i - 1]
        assert value is not None, f"weight {i} not assigned"
        return value


def _mirror(c: ProperColoring, mirrors: frozenset[tuple[int, int]], i: int, j: int) -> bool:
    u, v = c.order[i - 1], c.order[j - 1]
    return (min(u, v), max(u, v)) in mirrors


def seed_middle(c: ProperColoring, mirrors: frozenset[tuple[int, int]]) -> SynthesisWindow:
    """Increasing weights on the all-green middle block, ``dmin = 0``."""
    n = c.n
    p, q = c.i_red, c.i_blue
    weights: list[Fraction | None] = [None] * n
    weights[p] = ONE
    for i in range(p + 2, q):
        prev = weights[i - 2]
        weights[i - 1] = prev if _mirror(c, mirrors, i - 1, i) else prev + 1
    dmax = 2 * weights[q - 2] + 1
    return SynthesisWindow(p, q, tuple(weights), Fraction(0), dmax)


@dataclasses.dataclass
class _Interval:
    lo: Fraction | None = None
    lo_open: bool = True
    hi: Fraction | None = None
    hi_open: bool = True

    def floor(self, x: Fraction, strict: bool) -> None:
        if self.lo is None or x > self.lo or (x == self.lo and strict):
            self.lo, self.lo_open = x, strict

    def ceil(self, x: Fraction, strict: bool) -> None:
        if self.hi is None or x < self.hi or (x == self.hi and strict):
            self.hi, self.hi_open = x, strict

    def __contains__(self, x: Fraction) -> bool:
        if self.lo is not None and (x < self.lo or (x == self.lo and self.lo_open)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and self.hi_open)):
            return False
        return True

    def pick(self) -> Fraction:
        lo, hi = self.lo, self.hi
        if lo is not None and hi is not None:
            if lo < hi:
                return (lo + hi) / 2
            if lo == hi and not (self.lo_open or self.hi_open):
                return lo
            raise EmptyInterval(f"empty interval ({lo}, {hi})")
        if lo is not None:
            return lo + 1
        if hi is not None:
            return hi - 1
        return Fraction(0)


def _admissible(win: SynthesisWindow, c: ProperColoring, x: int, partners: range,
                neighbor: int, mirror: bool) -> _Interval:
    box = _Interval()
    for j in partners:
        wj = win.w(j)
        color = c.color(x, j)
        if color == "red":
            box.ceil(win.dmin - wj, True)
        elif color == "blue":
            box.floor(win.dmax - wj, True)
        else:
            box.floor(win.dmin - wj, True)
            box.ceil(win.dmax - wj, True)
    w_adj = win.w(neighbor)
    if neighbor > x:
        box.ceil(w_adj, not mirror)
    else:
        box.floor(w_adj, not mirror)
    return box


def _exact(box: _Interval, win: SynthesisWindow, system: "BoundarySystem | None", x: int) -> _Interval:
    if system is not None:
        exact = system.interval(win.weights, x)
        if exact.lo is not None:
            box.floor(exact.lo, exact.lo_open)
        if exact.hi is not None:
            box.ceil(exact.hi, exact.hi_open)
    return box


def _settle(win: SynthesisWindow, box: _Interval, side: str, x: int, case: str,
            rule: Fraction | None, printed: Fraction | None) -> tuple[Fraction, Step]:
    if rule is not None and rule in box:
        return rule, Step(side, x, case, rule, rule, False, printed)
    value = box.pick()
    log.info("interval fallback at %s position %d (case %s): rule=%s -> %s", side, x, case, rule, value)
    return value, Step(side, x, case, rule, value, True, printed)


def _twin_fits(win: SynthesisWindow, c: ProperColoring, i: int, j: int, w: Fraction) -> bool:
    """Whether giving both ends of the consecutive pair weight ``w`` respects the pair's own color.

    Mirror pairs in the wings are non-adjacent (red below the core, blue
    above), so equal weights are only an option once ``2w`` clears the bound.
    """
    color = c.color(i, j)
    if color == "red":
        return 2 * w < win.dmin
    if color == "blue":
        return 2 * w > win.dmax
    return win.dmin < 2 * w < win.dmax


def extend_low(win: SynthesisWindow, c: ProperColoring,
               mirrors: frozenset[tuple[int, int]], *,
               system: "BoundarySystem | None" = None) -> SynthesisWindow:
    """Assign ``w_p`` and move the left frontier to ``p - 1``.

    The case rule is kept when it lies in the admissible interval: the
    constraints from placed partners and, given ``system``, the exact range
    that keeps the rest of the ordering completable.
    """
    p, q = win.p, win.q
    if p < 1:
        raise ContractError("low frontier already at position 0")
    w = win.w
    wp1 = w(p + 1)
    ap, ap1 = c.a_of(p), c.a_of(p + 1)
    mirror = _mirror(c, mirrors, p, p + 1)
    rule: Fraction | None
    if mirror and _twin_fits(win, c, p, p + 1, wp1):
        case, rule = "i", wp1
    elif ap <= q - 1 and ap1 == ap:
        case = "ii"
        alpha = wp1 + w(ap) - win.dmin
        rule = wp1 - alpha / 2
    elif ap <= q - 1 and ap1 < ap:
        case = "iii"
        beta = wp1 + w(ap - 1) - win.dmin
        delta = w(ap) - w(ap - 1)
        rule = wp1 - beta - delta / 2
    elif ap >= q:
        case = "iv"
        rule = min(wp1, win.dmin - w(q - 1)) - 1
    else:
        case, rule = "?", None
    box = _exact(_admissible(win, c, p, range(p + 1, q), p + 1, mirror), win, system, p)
    value, step = _settle(win, box, "low", p, case, rule, None)
    weights = list(win.weights)
    weights[p - 1] = value
    return dataclasses.replace(win, p=p - 1, weights=tuple(weights), steps=win.steps + (step,))


def extend_high(win: SynthesisWindow, c: ProperColoring,
                mirrors: frozenset[tuple[int, int]], p_rule: int | None = None, *,
                system: "BoundarySystem | None" = None) -> SynthesisWindow:
    """Assign ``w_q`` and move the right frontier to ``q + 1``.

    The case rule is evaluated against the current low frontier unless
    ``p_rule`` overrides it (``p_rule = i_red`` mirrors how the low phase
    holds ``q`` at ``i_blue``). The admissible interval always uses the
    whole window.
    """
    q = win.q
    p = win.p if p_rule is None else p_rule
    if q > c.n:
        raise ContractError("high frontier already past position n")
    w = win.w
    wq1 = w(q - 1)
    bq, bq1 = c.b_of(q), c.b_of(q - 1)
    mirror = _mirror(c, mirrors, q - 1, q)
    printed: Fraction | None = None
    rule: Fraction | None
    if mirror and _twin_fits(win, c, q - 1, q, wq1):
        case, rule = "i", wq1
    elif bq >= p + 1 and bq == bq1:
        case = "ii"
        alpha = win.dmax - (w(bq) + wq1)
        rule = wq1 + alpha / 2
        if p >= 1 and p + 1 <= c.b_of(p) <= q - 1:
            printed = wq1 + (win.dmax - (w(c.b_of(p)) + wq1)) / 2
    elif bq >= p + 1 and bq < bq1:
        case = "iii"
        beta = win.dmax - (w(bq + 1) + wq1)
        delta = w(bq + 1) - w(bq)
        rule = wq1 + beta + delta / 2
        if p >= 1 and p + 1 <= c.b_of(p) and c.b_of(p) + 1 <= q - 1:
            printed = wq1 + (win.dmax - (w(c.b_of(p) + 1) + wq1)) + delta / 2
    elif bq <= p:
        case = "iv"
        rule = max(wq1, win.dmax - w(p + 1)) + 1
        printed = max(wq1, win.dmax - wq1) + 1
    else:
        case, rule = "?", None
    box = _exact(_admissible(win, c, q, range(win.p + 1, q), q - 1, mirror), win, system, q)
    value, step = _settle(win, box, "high", q, case, rule, printed)
    weights = list(win.weights)
    weights[q - 1] = value
    return dataclasses.replace(win, q=q + 1, weights=tuple(weights), steps=win.steps + (step,))


def window_violations(win: SynthesisWindow, c: ProperColoring,
                      mirrors: frozenset[tuple[int, int]]) -> list[str]:
    """Scan the fixed part of the window for breaches of the monotone/strict-color conditions."""
    out = []
    lo, hi = win.p + 1, win.q - 1
    for j in range(lo, hi):
        wj, wk = win.w(j), win.w(j + 1)
        if wj > wk:
            out.append(f"w{j} > w{j + 1}")
        elif wj == wk and not _mirror(c, mirrors, j, j + 1):
            out.append(f"w{j} == w{j + 1} for a non-mirror pair")
    for j in range(lo, hi + 1):
        for k in range(j + 1, hi + 1):
            s = win.w(j) + win.w(k)
            color = c.color(j, k)
            if color == "red" and not s < win.dmin:
                out.append(f"red ({j},{k}) sum {s} >= dmin")
            elif color == "blue" and not s > win.dmax:
                out.append(f"blue ({j},{k}) sum {s} <= dmax")
            elif color == "green" and not win.dmin < s < win.dmax:
                out.append(f"green ({j},{k}) sum {s} outside (dmin, dmax)")
    return out


class BoundarySystem:
    """All sorted-weight requirements of a coloring, as unit two-variable inequalities.

    With ``dmin = 0`` and ``dmax`` fixed, each requirement reads
    ``s_i*w_i + s_j*w_j <= const`` (possibly strict), and along a sorted
    ordering only each position's extreme red, green and blue partners are
    needed. Such systems live on the doubled difference graph (a node for
    ``+w_i``, one for ``-w_i``, and a zero node), where feasibility is the
    absence of negative cycles and the exact range of one variable, with
    others pinned, is read off shortest paths. Strictness is an
    infinitesimal ``eps`` compared lexicographically; distances are packed
    into single integers ``value * M + eps_count`` after scaling.
    """

    def __init__(self, c: ProperColoring, dmax: Fraction):
        self.n = n = c.n
        self.dmax = Fraction(dmax)
        # (s_i, i, s_j, j, multiple of dmax, strict)
        rows: list[tuple[int, int, int, int, int, bool]] = []
        for i in range(1, n):
            rows.append((1, i, -1, i + 1, 0, False))
        for i in range(1, n + 1):
            a, b = c.a_of(i), c.b_of(i)
            red = a - 1 if a - 1 != i else a - 2
            green_lo = a if a != i else a + 1
            green_hi = b if b != i else b - 1
            blue = b + 1 if b + 1 != i else b + 2
            if red >= 1:
                rows.append((1, i, 1, red, 0, True))
            if green_lo <= green_hi:
                rows.append((-1, i, -1, green_lo, 0, True))
                rows.append((1, i, 1, green_hi, 1, True))
            if blue <= n:
                rows.append((-1, i, -1, blue, -1, True))
        self.rows = rows
        self.zero = 2 * n

    @staticmethod
    def node(sign: int, i: int) -> int:
        return 2 * (i - 1) + (0 if sign > 0 else 1)

    def _edges(self, fixed: Sequence[Fraction | None]):
        scale = self.dmax.denominator
        for w in fixed:
            if w is not None:
                scale = scale * w.denominator // _gcd(scale, w.denominator)
        big = 8 * self.n + 16
        node, z = self.node, self.zero
        adj: list[list[tuple[int, int]]] = [[] for _ in range(2 * self.n + 1)]

        def enc(value: Fraction, strict: bool) -> int:
            return int(value * scale) * big - (1 if strict else 0)

        for si, i, sj, j, k, strict in self.rows:
            const = k * self.dmax
            wi, wj = fixed[i - 1], fixed[j - 1]
            if wi is not None and wj is not None:
                continue
            if wj is not None or wi is not None:
                if wi is not None:
                    si, i, sj, j, wj = sj, j, si, i, wi
                # s_i * w_i <= const - s_j * w_j
                cost = enc(const - sj * wj, strict)
                adj[z].append((node(si, i), cost))
                adj[node(-si, i)].append((z, cost))
                continue
            cost = enc(const, strict)
            adj[node(-sj, j)].append((node(si, i), cost))
            adj[node(-si, i)].append((node(sj, j), cost))
        return adj, scale, big

    @staticmethod
    def _spfa(adj: list[list[tuple[int, int]]], sources: Sequence[int]) -> list[int | None] | None:
        """Single/multi-source shortest paths; None on a reachable negative cycle."""
        size = len(adj)
        dist: list[int | None] = [None] * size
        hops = [0] * size
        queued = [False] * size
        queue: deque[int] = deque()
        for s in sources:
            dist[s] = 0
            queue.append(s)
            queued[s] = True
        while queue:
            u = queue.popleft()
            queued[u] = False
            du = dist[u]
            for v, cost in adj[u]:
                cand = du + cost
                dv = dist[v]
                if dv is None or cand < dv:
                    dist[v] = cand
                    hops[v] = hops[u] + 1
                    if hops[v] > size:
                        return None
                    if not queued[v]:
                        queued[v] = True
                        queue.append(v)
        return dist

    def feasible(self, fixed: Sequence[Fraction | None]) -> bool:
        adj, _, _ = self._edges(fixed)
        return self._spfa(adj, range(len(adj))) is not None

    def interval(self, fixed: Sequence[Fraction | None], x: int) -> _Interval:
        """Exact set of values for ``w_x`` that keep the pinned weights extendable."""
        if fixed[x - 1] is not None:
            raise ContractError(f"position {x} is already pinned")
        adj, scale, big = self._edges(fixed)
        plus, minus = self.node(1, x), self.node(-1, x)
        from_z = self._spfa(adj, [self.zero])
        from_minus = self._spfa(adj, [minus])
        from_plus = self._spfa(adj, [plus])
        if from_z is None or from_minus is None or from_plus is None:
            raise EmptyInterval(f"pinned weights admit no value at position {x}")

        def dec(value: int) -> tuple[Fraction, bool]:
            units = (value + big // 2) // big
            return Fraction(units, scale), value - units * big < 0

        box = _Interval()
        if from_z[plus] is not None:
            box.ceil(*dec(from_z[plus]))
        if from_minus[plus] is not None:
            bound, strict = dec(from_minus[plus])
            box.ceil(bound / 2, strict)
        if from_z[minus] is not None:
            bound, strict = dec(from_z[minus])
            box.floor(-bound, strict)
        if from_plus[minus] is not None:
            bound, strict = dec(from_plus[minus])
            box.floor(-bound / 2, strict)
        if box.lo is not None and box.hi is not None and (
            box.lo > box.hi or (box.lo == box.hi and (box.lo_open or box.hi_open))
        ):
            raise EmptyInterval(f"pinned weights admit no value at position {x}")
        return box

    def solve(self) -> StarPCR:
        """One realization with nothing pinned."""
        fixed: list[Fraction | None] = [None] * self.n
        adj, scale, big = self._edges(fixed)
        dist = self._spfa(adj, range(len(adj)))
        if dist is None:
            raise SynthesisFailure("coloring constraints are infeasible along this ordering")
        base, slope = [], []
        for k in range(self.n):
            diff = dist[2 * k] - dist[2 * k + 1]
            units = (diff + big // 2) // big
            base.append(Fraction(units, 2 * scale))
            slope.append(Fraction(diff - units * big, 2))
        eps = Fraction(1)
        for _ in range(512):
            pcr = StarPCR(tuple(b + s * eps for b, s in zip(base, slope)), Fraction(0), self.dmax)
            if self.satisfied_by(pcr.weights):
                return pcr
            eps /= 2
        raise SynthesisFailure("no concrete epsilon found")  # pragma: no cover

    def satisfied_by(self, weights: Sequence[Fraction]) -> bool:
        D = self.dmax
        for si, i, sj, j, k, strict in self.rows:
            lhs = si * weights[i - 1] + sj * weights[j - 1]
            rhs = k * D
            if lhs > rhs or (strict and lhs == rhs):
                return False
        return True


def boundary_solution(c: ProperColoring, dmax: Fraction | None = None) -> StarPCR:
    """Weights from the coloring alone, ignoring the stepwise rules (``dmin = 0``)."""
    D = Fraction(4 * c.n) if dmax is None else Fraction(dmax)
    if D <= 0:
        raise ContractError("dmax must be positive")
    return BoundarySystem(c, D).solve()


def _satisfies(pcr: StarPCR, c: ProperColoring) -> bool:
    w = pcr.weights
    if not pcr.is_sorted():
        return False
    n = len(w)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            s = w[i - 1] + w[j - 1]
            color = c.color(i, j)
            if color == "red":
                ok = s < pcr.dmin
            elif color == "blue":
                ok = s > pcr.dmax
            else:
                ok = pcr.dmin < s < pcr.dmax
            if not ok:
                return False
    return True


@dataclasses.dataclass(frozen=True)
class SynthesisReport:
    """What happened while synthesizing: step log and whether the global solve took over."""

    steps: tuple[Step, ...]
    global_fallback: bool
    reason: str = ""

    @property
    def rule_steps(self) -> int:
        return sum(not s.fallback for s in self.steps)


def run_synthesis(g: Graph, order: Sequence[int], *, audit: bool = False,
                  lookahead: bool = True) -> tuple[StarPCR, SynthesisReport]:
    """Stepwise synthesis with per-step interval checks, plus a global fallback.

    With ``lookahead`` (the default) each step is validated against the exact
    completable range, so only an unextendable seed can stall; without it,
    only already-placed partners are consulted. On a stall the partial window
    is discarded and :func:`boundary_solution` produces the weights instead.
    With ``audit`` the window conditions are re-scanned after every step and
    a breach raises :class:`SynthesisFailure`.
    """
    c = proper_coloring(g, order)
    mirrors = mirror_pairs(g)
    win = seed_middle(c, mirrors)

    def check(where: str) -> None:
        if audit:
            bad = window_violations(win, c, mirrors)
            if bad:
                raise SynthesisFailure(f"window conditions broken after {where}: {bad[:3]}")

    check("seeding")
    system = BoundarySystem(c, win.dmax) if lookahead else None
    try:
        if system is not None and not system.feasible(win.weights):
            raise EmptyInterval("seeded core cannot be extended")
        while win.p >= 1:
            win = extend_low(win, c, mirrors, system=system)
            check(f"low step at {win.p + 1}")
        while win.q <= c.n:
            win = extend_high(win, c, mirrors, system=system)
            check(f"high step at {win.q - 1}")
    except EmptyInterval as exc:
        log.warning("stepwise synthesis stuck (%s) on order %s of %r; solving globally",
                    exc, list(order), g)
        pcr = boundary_solution(c)
        report = SynthesisReport(win.steps, True, str(exc))
    else:
        pcr = StarPCR(tuple(win.w(i) for i in range(1, c.n + 1)), win.dmin, win.dmax)
        report = SynthesisReport(win.steps, False)
    if star_graph(pcr, c.order) != g or not pcr.is_sorted():
        raise SynthesisFailure("synthesized weights do not realize the graph")
    return pcr, report


def synthesize_weights(g: Graph, order: Sequence[int]) -> StarPCR:
    """Exact weights, sorted along ``order``, whose star realizes ``g``.

    Requires a gap-free ordering and no isolated vertices.
    """
    return run_synthesis(g, order)[0]


def isolated_weight(pcr: StarPCR) -> Fraction:
    """A weight that keeps a new vertex below ``dmin`` with everyone, itself included."""
    w = pcr.weights
    return min(w[0], pcr.dmin - w[-1], pcr.dmin / 2) - 1


def normalize(pcr: StarPCR) -> StarPCR:
    """Equivalent witness with positive integer weights and ``0 < dmin < dmax``.

    Scales by the common denominator, shifts every leaf weight by ``delta``
    (bounds by ``2*delta``) and, when ``dmin == dmax``, widens ``dmax`` by a
    margin below the smallest pair sum exceeding it.
    """
    values = list(pcr.weights) + [pcr.dmin, pcr.dmax]
    scale = 1
    for v in values:
        scale = scale * v.denominator // _gcd(scale, v.denominator)
    w = [x * scale for x in pcr.weights]
    dmin, dmax = pcr.dmin * scale, pcr.dmax * scale
    low = min(w, default=ONE)
    delta = max(Fraction(0), 1 - low, _ceil_half(1 - dmin))
    w = [x + delta for x in w]
    dmin, dmax = dmin + 2 * delta, dmax + 2 * delta
    if dmin == dmax:
        above = [w[i] + w[j] for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] + w[j] > dmax]
        margin = min(above, default=dmax + 2) - dmax
        if margin <= 1:
            w = [2 * x for x in w]
            dmin, dmax = 2 * dmin, 2 * dmax
        dmax += 1
    return StarPCR(tuple(w), dmin, dmax)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _ceil_half(x: Fraction) -> Fraction:
    return Fraction(-((-x.numerator) // (2 * x.denominator)))


__all__ = [
    "EmptyInterval",
    "SynthesisReport",
    "boundary_solution",
    "Step",
    "SynthesisFailure",
    "SynthesisWindow",
    "extend_high",
    "extend_low",
    "isolated_weight",
    "normalize",
    "run_synthesis",
    "seed_middle",
    "synthesize_weights",
    "window_violations",
]
