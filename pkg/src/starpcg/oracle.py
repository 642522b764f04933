"""Exhaustive reference answers and seeded instance generators."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .families import SetFamily, is_consecutive, is_contiguous
from .gaps import is_gap_free
from .graph import Graph
from .pcr import StarPCR, star_graph


class LimitExceeded(ValueError):
    """The instance is too large for exhaustive search."""


def brute_force_gap_free(g: Graph, limit: int = 9) -> tuple[int, ...] | None:
    """First gap-free ordering in lexicographic order, or None."""
    if g.n > limit:
        raise LimitExceeded(f"n={g.n} exceeds the brute-force limit {limit}")
    for perm in itertools.permutations(range(g.n)):
        if is_gap_free(g, perm):
            return perm
    return None


def _first_permutation(f: SetFamily, test, limit: int) -> tuple[int, ...] | None:
    if f.ground > limit:
        raise LimitExceeded(f"ground size {f.ground} exceeds the brute-force limit {limit}")
    for perm in itertools.permutations(range(f.ground)):
        if test(f, perm):
            return perm
    return None


def brute_force_consecutive(f: SetFamily, limit: int = 8) -> tuple[int, ...] | None:
    return _first_permutation(f, is_consecutive, limit)


def brute_force_contiguous(f: SetFamily, limit: int = 8) -> tuple[int, ...] | None:
    return _first_permutation(f, is_contiguous, limit)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    """G(n, p): each pair joined independently with probability ``p``."""
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    return Graph.from_edges(
        n, ((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p)
    )


def random_star_pcg(n: int, rng: random.Random) -> tuple[Graph, StarPCR, tuple[int, ...]]:
    """A guaranteed star-PCG with the star that realizes it.

    Integer weights are drawn and sorted; the window runs between two of the
    realized pair sums; vertex labels are shuffled so that the realizing
    ordering is not the identity.
    """
    if n < 1:
        raise ValueError("n must be positive")
    weights = sorted(rng.randint(1, 4 * n) for _ in range(n))
    if n >= 2:
        sums = [weights[i] + weights[j] for i, j in (rng.sample(range(n), 2) for _ in range(2))]
        dmin, dmax = min(sums), max(sums)
    else:
        dmin = dmax = 2 * weights[0]
    order = list(range(n))
    rng.shuffle(order)
    pcr = StarPCR(tuple(Fraction(w) for w in weights), Fraction(dmin), Fraction(dmax))
    return star_graph(pcr, order), pcr, tuple(order)


def random_family(ground: int, max_sets: int, rng: random.Random) -> SetFamily:
    """Up to ``max_sets`` random non-empty subsets of ``range(ground)``."""
    sets = []
    for _ in range(rng.randint(0, max_sets)):
        if ground == 0:
            break
        size = rng.randint(1, ground)
        sets.append(frozenset(rng.sample(range(ground), size)))
    return SetFamily.of(ground, sets)
