"""Consecutive and contiguous orderings of set families.

Sets are kept as integer bitmasks over the ground ``0..n-1``. An ordering is
a tuple listing every ground element once, by position.

The consecutive-ones test works on overlap components: two sets *overlap*
when their intersection and both differences are non-empty. Inside one
overlap component the block structure is forced up to reversal, and the
unions of different components nest inside single blocks of each other, so
the final ordering is assembled along that containment forest.
"""

from __future__ import annotations

import dataclasses
from functools import cached_property
from typing import Iterable, Sequence

from .graph import ContractError, GraphFormatError

Ordering = tuple[int, ...]


def _mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def _elements(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _overlap(a: int, b: int) -> bool:
    return bool(a & b) and bool(a & ~b) and bool(b & ~a)


@dataclasses.dataclass(frozen=True)
class SetFamily:
    """A ground set ``0..ground-1`` and a deduplicated list of non-empty subsets."""

    ground: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[frozenset[int]] = set()
        kept = []
        for s in self.sets:
            s = frozenset(s)
            if not s:
                raise ValueError("sets must be non-empty")
            if min(s) < 0 or max(s) >= self.ground:
                raise ValueError(f"set {sorted(s)} leaves the ground set")
            if s not in seen:
                seen.add(s)
                kept.append(s)
        object.__setattr__(self, "sets", tuple(kept))

    @classmethod
    def of(cls, ground: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(ground, tuple(frozenset(s) for s in sets))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(_mask(s) for s in self.sets)

    @property
    def full(self) -> int:
        return (1 << self.ground) - 1

    def __len__(self) -> int:
        return len(self.sets)


def parse_family(text: str | bytes) -> SetFamily:
    """Parse ``n m`` followed by ``m`` lines ``k e1 ... ek``."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [
        (no, line.split())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphFormatError("empty input", 1)
    no, head = lines[0]
    try:
        n, m = (int(t) for t in head)
    except ValueError:
        raise GraphFormatError("expected header 'n m'", no) from None
    if len(lines) - 1 != m:
        raise GraphFormatError(f"expected {m} set lines, found {len(lines) - 1}", no)
    sets = []
    for no, toks in lines[1:]:
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise GraphFormatError("malformed token", no) from None
        k, elems = vals[0], vals[1:]
        if k != len(elems) or k == 0:
            raise GraphFormatError(f"set size {k} does not match its elements", no)
        if any(not 0 <= e < n for e in elems):
            raise GraphFormatError("element out of range", no)
        if len(set(elems)) != k:
            raise GraphFormatError("repeated element", no)
        sets.append(frozenset(elems))
    return SetFamily(n, tuple(sets))


def _positions(order: Sequence[int]) -> dict[int, int]:
    return {e: i for i, e in enumerate(order)}


def _check_order(f: SetFamily, order: Sequence[int]) -> None:
    if sorted(order) != list(range(f.ground)):
        raise ContractError("ordering is not a permutation of the ground set")


def is_consecutive(f: SetFamily, order: Sequence[int]) -> bool:
    _check_order(f, order)
    pos = _positions(order)
    for s in f.sets:
        ps = [pos[e] for e in s]
        if max(ps) - min(ps) + 1 != len(s):
            return False
    return True


def is_contiguous(f: SetFamily, order: Sequence[int]) -> bool:
    if not is_consecutive(f, order):
        return False
    pos = _positions(order)
    spans = [(min(pos[e] for e in s), max(pos[e] for e in s)) for s in f.sets]
    masks = f.masks
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            if i != j and a & ~b == 0:  # sets[i] nested in sets[j]
                if spans[i][0] != spans[j][0] and spans[i][1] != spans[j][1]:
                    return False
    return True


def is_cut(f: SetFamily, c: Iterable[int]) -> bool:
    """True iff ``c`` is non-trivial and intersected by no set of ``f``."""
    cm = _mask(c)
    if cm.bit_count() < 2 or cm == f.full:
        return False
    return not any(_overlap(s, cm) for s in f.masks)


def member_cuts(f: SetFamily) -> list[frozenset[int]]:
    cuts = [s for s, m in zip(f.sets, f.masks) if is_cut(f, s)]
    cm = [_mask(c) for c in cuts]
    for i in range(len(cm)):
        for j in range(i + 1, len(cm)):
            assert not _overlap(cm[i], cm[j]), "member cuts are not laminar"
    return cuts


def separators(f: SetFamily) -> list[frozenset[int]]:
    """Non-trivial members that no other member contains or overlaps."""
    out = []
    masks = f.masks
    for i, s in enumerate(masks):
        if s.bit_count() < 2 or s == f.full:
            continue
        if all(t & ~s == 0 or t & s == 0 for j, t in enumerate(masks) if j != i):
            out.append(f.sets[i])
    return out


def is_separator_free(f: SetFamily) -> bool:
    return not separators(f)


def is_strongly_separator_free(f: SetFamily) -> bool:
    """Separator-free with singleton members counted too, over a covered ground.

    Singletons are trivial sets and never separators, yet a singleton that no
    other member contains leaves its element unconstrained. The uniqueness
    statements for contiguous orderings need this stronger form.
    """
    masks = f.masks
    if f.ground and (0 if not masks else _or(masks)) != f.full:
        return False
    for i, s in enumerate(masks):
        if s == f.full:
            continue
        if all(t & ~s == 0 or t & s == 0 for j, t in enumerate(masks) if j != i):
            return False
    return True


def _or(masks: Iterable[int]) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def equivalence_classes(f: SetFamily) -> list[frozenset[int]]:
    """Partition of the ground set by membership signature, ordered by smallest element."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for e in range(f.ground):
        bit = 1 << e
        key = tuple(i for i, m in enumerate(f.masks) if m & bit)
        groups.setdefault(key, []).append(e)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def is_simple(f: SetFamily) -> bool:
    return all(len(x) == 1 for x in equivalence_classes(f))


def minimal_maximal(f: SetFamily) -> tuple[list[frozenset[int]], list[frozenset[int]]]:
    masks = f.masks
    smin, smax = [], []
    for i, a in enumerate(masks):
        if not any(j != i and b & ~a == 0 for j, b in enumerate(masks)):
            smin.append(f.sets[i])
        if not any(j != i and a & ~b == 0 for j, b in enumerate(masks)):
            smax.append(f.sets[i])
    return smin, smax


def has_triple_violation(f: SetFamily) -> bool:
    """Some maximal member contains three or more minimal members."""
    smin, smax = minimal_maximal(f)
    for b in smax:
        if sum(1 for a in smin if a <= b) >= 3:
            return True
    return False


def _nested_complements(f: SetFamily) -> SetFamily:
    smin, smax = minimal_maximal(f)
    extra = [b - a for a in smin for b in smax if a < b]
    return SetFamily(f.ground, f.sets + tuple(extra))


def extend_family(f: SetFamily) -> SetFamily:
    """Add ``B - A`` for every minimal ``A`` strictly inside a maximal ``B``.

    Requires a separator-free family. The result is cut-free when ``f`` is
    also simple; without simplicity the sets are still added as described.
    """
    if not is_separator_free(f):
        raise ContractError("extend_family expects a separator-free family")
    return _nested_complements(f)


# -- consecutive ones ------------------------------------------------------


def _overlap_components(masks: Sequence[int]) -> list[list[int]]:
    """Overlap components as index lists in BFS order (each set overlaps an earlier one)."""
    m = len(masks)
    nbrs: list[list[int]] = [[] for _ in range(m)]
    for i in range(m):
        a = masks[i]
        for j in range(i + 1, m):
            if _overlap(a, masks[j]):
                nbrs[i].append(j)
                nbrs[j].append(i)
    seen = [False] * m
    comps = []
    for s in range(m):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        k = 0
        while k < len(comp):
            for t in nbrs[comp[k]]:
                if not seen[t]:
                    seen[t] = True
                    comp.append(t)
            k += 1
        comps.append(comp)
    return comps


def _refine(sets: Sequence[int]) -> list[int] | None:
    """Forced block sequence for one overlap component, or None if impossible."""
    blocks = [sets[0]]
    union = sets[0]
    for s in sets[1:]:
        touched = [i for i, b in enumerate(blocks) if b & s]
        lo, hi = touched[0], touched[-1]
        if hi - lo + 1 != len(touched):
            return None
        if any(blocks[i] & ~s for i in range(lo + 1, hi)):
            return None
        new = s & ~union
        last = len(blocks) - 1
        if new:
            if hi == last and (lo == hi or not blocks[hi] & ~s):
                head = blocks[:lo]
                if lo == hi:
                    mid = [blocks[lo] & ~s, blocks[lo] & s]
                else:
                    mid = [blocks[lo] & ~s, blocks[lo] & s] + blocks[lo + 1 : hi + 1]
                blocks = head + mid + [new]
            elif lo == 0 and (lo == hi or not blocks[lo] & ~s):
                tail = blocks[hi + 1 :]
                if lo == hi:
                    mid = [blocks[hi] & s, blocks[hi] & ~s]
                else:
                    mid = blocks[lo:hi] + [blocks[hi] & s, blocks[hi] & ~s]
                blocks = [new] + mid + tail
            else:
                return None
        else:
            # an overlapping set inside the union always spans two blocks
            assert lo < hi
            mid = (
                [blocks[lo] & ~s, blocks[lo] & s]
                + blocks[lo + 1 : hi]
                + [blocks[hi] & s, blocks[hi] & ~s]
            )
            blocks = blocks[:lo] + mid + blocks[hi + 1 :]
        blocks = [b for b in blocks if b]
        union |= s
    return blocks


def consecutive_ordering(f: SetFamily) -> Ordering | None:
    """An ordering in which every set occupies consecutive positions, or None."""
    masks = f.masks
    comps = _overlap_components(masks)
    structures: list[tuple[int, list[int]]] = []
    for comp in comps:
        blocks = _refine([masks[i] for i in comp])
        if blocks is None:
            return None
        union = 0
        for b in blocks:
            union |= b
        structures.append((union, blocks))

    # parent of a component: the tightest block of another component holding its union
    children: dict[tuple[int, int], list[int]] = {}
    for c, (union, _) in enumerate(structures):
        best = None
        for d, (other_union, blocks) in enumerate(structures):
            if d == c or union & ~other_union:
                continue
            for k, b in enumerate(blocks):
                if union & ~b == 0:
                    key = (b.bit_count(), other_union.bit_count(), d)
                    if best is None or key < best[0]:
                        best = (key, (d, k))
                    break
        slot = best[1] if best is not None else (-1, 0)
        children.setdefault(slot, []).append(c)

    def expand_block(block: int, slot: tuple[int, int]) -> list[int]:
        out: list[int] = []
        covered = 0
        kids = sorted(children.get(slot, []), key=lambda c: _lowest(structures[c][0]))
        for c in kids:
            out += expand_component(c)
            covered |= structures[c][0]
        out += _elements(block & ~covered)
        return out

    def expand_component(c: int) -> list[int]:
        out: list[int] = []
        for k, b in enumerate(structures[c][1]):
            out += expand_block(b, (c, k))
        return out

    order = tuple(expand_block(f.full, (-1, 0)))
    assert is_consecutive(f, order), "consecutive assembly produced an invalid ordering"
    return order


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# -- contiguous orderings ----------------------------------------------------


def contiguous_separator_free(f: SetFamily) -> Ordering | None:
    """Contiguous ordering of a separator-free family.

    Contracts each equivalence class to one representative, adds the nested
    complements and solves the resulting consecutive-ones instance.
    """
    if not is_separator_free(f):
        raise ContractError("family has a separator")
    if f.ground <= 1:
        return tuple(range(f.ground))
    if has_triple_violation(f):
        return None
    classes = equivalence_classes(f)
    reps = [min(x) for x in classes]
    index = {r: i for i, r in enumerate(reps)}
    quotient = SetFamily(
        len(reps),
        tuple(frozenset(index[e] for e in s if e in index) for s in f.sets),
    )
    order = consecutive_ordering(_nested_complements(quotient))
    if order is None:
        return None
    expanded = tuple(e for i in order for e in sorted(classes[i]))
    assert is_contiguous(f, expanded)
    return expanded


def contiguous_ordering(f: SetFamily, *, consecutive: Iterable[Iterable[int]] = ()) -> Ordering | None:
    """Contiguous ordering of an arbitrary family, or None if none exists.

    An ordering is contiguous for ``f`` exactly when it is consecutive for
    ``f`` plus every ``B - A`` with ``A`` minimal strictly inside a maximal
    ``B``, so the whole problem reduces to one consecutive-ones instance.
    ``consecutive`` adds sets that only need consecutive positions.
    """
    if f.ground <= 1:
        return tuple(range(f.ground))
    if has_triple_violation(f):
        return None
    ext = _nested_complements(f)
    extra = tuple(frozenset(s) for s in consecutive)
    if extra:
        ext = SetFamily(f.ground, ext.sets + extra)
    order = consecutive_ordering(ext)
    if order is None:
        return None
    assert is_contiguous(f, order)
    return order
