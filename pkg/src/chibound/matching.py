"""Exact maximum matchings and antimatchings by branch and bound.

Graphs here are small (the search is exponential in the worst case), so the
solver relies on two exact reductions before branching: isolated vertices are
dropped and a vertex of degree one is always matched to its only neighbour.
What remains is split into connected components and each is searched
separately; the size limit applies to the largest such component.
"""

from __future__ import annotations

from typing import Iterable

from .errors import CapacityError
from .graph import Edge, Graph, bits, complement

DEFAULT_MATCHING_LIMIT = 64

Matching = frozenset[Edge]


def is_matching(g: Graph, pairs: Iterable[Edge]) -> bool:
    seen: set[int] = set()
    for u, v in pairs:
        if u == v or u in seen or v in seen or not g.has_edge(u, v):
            return False
        seen.update((u, v))
    return True


def is_antimatching(g: Graph, pairs: Iterable[Edge]) -> bool:
    seen: set[int] = set()
    for u, v in pairs:
        if u == v or u in seen or v in seen or g.has_edge(u, v):
            return False
        seen.update((u, v))
    return True


def _reduce(masks: tuple[int, ...], alive: int) -> tuple[list[Edge], int]:
    """Apply the isolated-vertex and pendant-vertex rules until neither fires."""
    forced: list[Edge] = []
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if not alive >> v & 1:
                continue
            nb = masks[v] & alive
            if nb == 0:
                alive &= ~(1 << v)
                changed = True
            elif nb & (nb - 1) == 0:
                u = nb.bit_length() - 1
                forced.append((min(u, v), max(u, v)))
                alive &= ~((1 << u) | (1 << v))
                changed = True
    return forced, alive


def _components(masks: tuple[int, ...], alive: int) -> list[int]:
    comps = []
    while alive:
        low = alive & -alive
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= masks[v]
            frontier = nxt & alive & ~comp
            comp |= frontier
        comps.append(comp)
        alive &= ~comp
    return comps


def _greedy(masks: tuple[int, ...], alive: int) -> list[Edge]:
    pairs = []
    while alive:
        # lowest-degree-first keeps the greedy bound reasonable
        v = min(bits(alive), key=lambda x: (masks[x] & alive).bit_count())
        nb = masks[v] & alive
        if not nb:
            alive &= ~(1 << v)
            continue
        u = min(bits(nb), key=lambda x: (masks[x] & alive).bit_count())
        pairs.append((min(u, v), max(u, v)))
        alive &= ~((1 << u) | (1 << v))
    return pairs


def _search_component(masks: tuple[int, ...], comp: int) -> list[Edge]:
    best = _greedy(masks, comp)
    ceiling = comp.bit_count() // 2
    if len(best) == ceiling:
        return best

    def rec(alive: int, cur: list[Edge]) -> bool:
        nonlocal best
        forced, alive = _reduce(masks, alive)
        cur = cur + forced
        if len(cur) + alive.bit_count() // 2 <= len(best):
            return False
        if not alive:
            best = cur
            return len(best) == ceiling
        v = min(bits(alive), key=lambda x: (masks[x] & alive).bit_count())
        for u in bits(masks[v] & alive):
            if rec(alive & ~((1 << u) | (1 << v)), cur + [(min(u, v), max(u, v))]):
                return True
        return rec(alive & ~(1 << v), cur)

    rec(comp, [])
    return best


def max_matching(g: Graph, limit: int = DEFAULT_MATCHING_LIMIT) -> Matching:
    """Maximum-cardinality matching of ``g``.

    Raises :class:`CapacityError` if, after reductions, some component still
    has more than ``limit`` vertices.
    """
    forced, alive = _reduce(g.masks, (1 << g.n) - 1)
    comps = _components(g.masks, alive)
    for comp in comps:
        if comp.bit_count() > limit:
            raise CapacityError("max_matching component", comp.bit_count(), limit)
    pairs = list(forced)
    for comp in comps:
        pairs.extend(_search_component(g.masks, comp))
    return frozenset(pairs)


def max_antimatching(g: Graph, limit: int = DEFAULT_MATCHING_LIMIT) -> Matching:
    """Maximum set of disjoint non-adjacent pairs of ``g``."""
    return max_matching(complement(g), limit)
