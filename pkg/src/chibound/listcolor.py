"""List coloring of ``K_n`` minus a matching from lists of size ``n - |matching|``."""

from __future__ import annotations

from typing import Iterable, Mapping

from .coloring import Coloring
from .errors import ContractViolation, PreconditionError
from .graph import Edge, Graph

ListAssignment = Mapping[int, Iterable[int]]


def matching_complement_graph(n: int, m: Iterable[Edge]) -> Graph:
    """``K_n`` with the pairs of ``m`` removed."""
    missing = {(min(u, v), max(u, v)) for u, v in m}
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in missing))


def _partner_map(n: int, m: Iterable[Edge]) -> dict[int, int]:
    partner: dict[int, int] = {}
    for u, v in m:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise PreconditionError(f"pair ({u}, {v}) is not a pair of distinct vertices in 0..{n - 1}")
        if u in partner or v in partner:
            raise PreconditionError(f"pair ({u}, {v}) overlaps another pair; not a matching")
        partner[u] = v
        partner[v] = u
    return partner


def system_of_distinct_representatives(lists: Mapping[int, set[int]]) -> dict[int, int] | None:
    """Kuhn's augmenting-path bipartite matching saturating every vertex, if one exists."""
    owner: dict[int, int] = {}

    def augment(v: int, seen: set[int]) -> bool:
        for col in sorted(lists[v]):
            if col in seen:
                continue
            seen.add(col)
            if col not in owner or augment(owner[col], seen):
                owner[col] = v
                return True
        return False

    for v in sorted(lists):
        if not augment(v, set()):
            return None
    return {v: col for col, v in owner.items()}


def list_color_matching_complement(n: int, m: Iterable[Edge], lists: ListAssignment) -> Coloring:
    """Color ``K_n`` minus the matching ``m`` so every vertex gets a color from its list.

    Follows the inductive argument: while some vertex is universal, color it and
    strike its color from the other lists; once the matching is perfect on what
    is left, give a non-adjacent pair a shared color if their lists meet, and
    otherwise all lists along pairs are disjoint and Hall's condition holds, so
    a system of distinct representatives finishes the job.
    """
    m = list(m)
    partner = _partner_map(n, m)
    ell = len(m)
    lst: dict[int, set[int]] = {}
    for v in range(n):
        if v not in lists:
            raise PreconditionError(f"vertex {v} has no list")
        lst[v] = {int(c) for c in lists[v]}
        if len(lst[v]) < n - ell:
            raise PreconditionError(f"list of vertex {v} has {len(lst[v])} colors, need {n - ell}")

    c: Coloring = {}
    remaining = set(range(n))

    def strike(col: int) -> None:
        for u in remaining:
            lst[u].discard(col)

    while remaining:
        pairs_left = sum(1 for v in remaining if partner.get(v) in remaining) // 2
        need = len(remaining) - pairs_left
        short = [v for v in remaining if len(lst[v]) < need]
        if short:
            raise ContractViolation("list shrank below the inductive bound", vertex=short[0], need=need)
        universal = sorted(v for v in remaining if partner.get(v) not in remaining)
        if universal:
            v = universal[0]
            c[v] = min(lst[v])
            remaining.discard(v)
            strike(c[v])
            continue
        shared = None
        for u in sorted(remaining):
            w = partner[u]
            if u < w and lst[u] & lst[w]:
                shared = (u, w, min(lst[u] & lst[w]))
                break
        if shared is not None:
            u, w, col = shared
            c[u] = c[w] = col
            remaining -= {u, w}
            strike(col)
            continue
        sdr = system_of_distinct_representatives({v: lst[v] for v in remaining})
        if sdr is None:
            raise ContractViolation("Hall's condition failed on disjoint pair lists", remaining=sorted(remaining))
        c.update(sdr)
        remaining.clear()
    return c
