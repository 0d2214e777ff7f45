"""Colorings: exact chromatic number, greedy, Brooks, verification and interchange.

A coloring is a plain ``dict`` from vertex to a positive integer color. Partial
colorings simply omit vertices.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .cliques import max_clique
from .errors import CapacityError, ContractViolation, ParseError, PreconditionError
from .graph import Graph, bits

Coloring = dict[int, int]

DEFAULT_CHI_LIMIT = 20


def colors_used(c: Mapping[int, int]) -> int:
    return len(set(c.values()))


def palette_size(c: Mapping[int, int]) -> int:
    return max(c.values(), default=0)


def is_proper(g: Graph, c: Mapping[int, int]) -> bool:
    """No edge has both ends colored alike (uncolored vertices are ignored)."""
    for u, v in g.edges:
        cu = c.get(u)
        if cu is not None and cu == c.get(v):
            return False
    return True


def verify_coloring(g: Graph, c: Mapping[int, int], k: int | None = None) -> bool:
    """True iff ``c`` colors every vertex with a positive integer and is proper."""
    if set(c) != set(range(g.n)):
        return False
    for col in c.values():
        if not isinstance(col, int) or col < 1 or (k is not None and col > k):
            return False
    return is_proper(g, c)


def least_free(taken: Iterable[int]) -> int:
    taken = set(taken)
    c = 1
    while c in taken:
        c += 1
    return c


def greedy_coloring(g: Graph, order: Sequence[int] | None = None, base: Mapping[int, int] | None = None) -> Coloring:
    """First-fit coloring along ``order``, on top of an optional partial ``base``."""
    if order is None:
        order = range(g.n)
    c: Coloring = dict(base or {})
    for v in order:
        if v in c:
            continue
        c[v] = least_free(c[u] for u in g.adj[v] if u in c)
    return c


# -- exact chromatic number ------------------------------------------------------


def _dsatur_greedy(g: Graph) -> Coloring:
    c: Coloring = {}
    sat: list[set[int]] = [set() for _ in range(g.n)]
    uncolored = set(range(g.n))
    while uncolored:
        v = max(uncolored, key=lambda x: (len(sat[x]), g.degree(x), -x))
        col = least_free(sat[v])
        c[v] = col
        uncolored.discard(v)
        for u in g.adj[v]:
            sat[u].add(col)
    return c


def chromatic_number_exact(g: Graph, limit: int = DEFAULT_CHI_LIMIT) -> tuple[int, Coloring]:
    """Chromatic number with an optimal coloring.

    DSATUR branch and bound: a maximum clique is pre-colored ``1..omega`` to
    break symmetry, and the DSATUR heuristic supplies the first upper bound.
    Graphs above ``limit`` are still accepted when the two bounds already meet.
    """
    if g.n == 0:
        return 0, {}
    clique = sorted(max_clique(g))
    lb = len(clique)
    best = _dsatur_greedy(g)
    best_k = colors_used(best)
    if best_k == lb:
        return best_k, best
    if g.n > limit:
        raise CapacityError("chromatic_number_exact", g.n, limit)

    n = g.n
    adj = [list(a) for a in g.adj]
    color = [0] * n
    # sat_count[v][c] = number of colored neighbours of v with color c
    sat_count = [[0] * (n + 2) for _ in range(n)]
    sat = [0] * n

    def assign(v: int, col: int) -> None:
        color[v] = col
        for u in adj[v]:
            if sat_count[u][col] == 0:
                sat[u] += 1
            sat_count[u][col] += 1

    def unassign(v: int, col: int) -> None:
        color[v] = 0
        for u in adj[v]:
            sat_count[u][col] -= 1
            if sat_count[u][col] == 0:
                sat[u] -= 1

    for i, v in enumerate(clique):
        assign(v, i + 1)

    def rec(colored: int, used: int) -> bool:
        nonlocal best, best_k
        if colored == n:
            best = {v: color[v] for v in range(n)}
            best_k = used
            return best_k == lb
        v = -1
        key = (-1, -1)
        for x in range(n):
            if color[x] == 0:
                kx = (sat[x], len(adj[x]))
                if kx > key:
                    key, v = kx, x
        for col in range(1, min(used + 1, best_k - 1) + 1):
            if sat_count[v][col]:
                continue
            assign(v, col)
            done = rec(colored + 1, max(used, col))
            unassign(v, col)
            if done:
                return True
        return False

    rec(len(clique), lb)
    return best_k, best


# -- Brooks -----------------------------------------------------------------------


def _bfs_order(g: Graph, root: int, allowed: int) -> list[int]:
    order = [root]
    seen = 1 << root
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for u in bits(g.masks[v] & allowed & ~seen):
            seen |= 1 << u
            order.append(u)
    return order


def _connected_within(g: Graph, allowed: int) -> bool:
    if not allowed:
        return True
    root = (allowed & -allowed).bit_length() - 1
    return len(_bfs_order(g, root, allowed)) == allowed.bit_count()


def _rooted_greedy(g: Graph, root: int, allowed: int, base: Mapping[int, int] | None = None) -> Coloring:
    """Greedy in reverse BFS order from ``root``: every non-root vertex still has
    an uncolored neighbour (its BFS parent) when it is colored."""
    order = _bfs_order(g, root, allowed)
    return greedy_coloring(g, order[::-1], base)


def brooks_coloring(g: Graph) -> Coloring:
    """Proper coloring of a connected graph with at most ``delta`` colors,
    or ``delta + 1`` when the graph is complete or an odd cycle."""
    n = g.n
    if n == 0:
        return {}
    if not g.is_connected():
        raise PreconditionError("brooks_coloring needs a connected graph")
    if g.is_complete():
        return {v: v + 1 for v in range(n)}
    delta = g.max_degree
    full = (1 << n) - 1
    if delta <= 2:
        # path or cycle; reverse BFS from a low-degree vertex 2-colors paths and even cycles
        root = min(range(n), key=g.degree)
        return _rooted_greedy(g, root, full) if g.min_degree < 2 else _cycle_coloring(g)
    low = [v for v in range(n) if g.degree(v) < delta]
    if low:
        return _checked(g, _rooted_greedy(g, low[0], full), delta)
    for v in range(n):
        for u, w in combinations(sorted(g.adj[v]), 2):
            if g.has_edge(u, w):
                continue
            rest = full & ~((1 << u) | (1 << w))
            if _connected_within(g, rest):
                return _checked(g, _rooted_greedy(g, v, rest, {u: 1, w: 1}), delta)
    for x in range(n):
        rest = full & ~(1 << x)
        if _connected_within(g, rest):
            continue
        c: Coloring = {x: 1}
        remaining = rest
        while remaining:
            start = (remaining & -remaining).bit_length() - 1
            part = _bfs_order(g, start, rest)
            remaining &= ~sum(1 << p for p in part)
            sub = _rooted_greedy(g, x, (1 << x) | sum(1 << p for p in part))
            # rename colors so x gets color 1 in every block
            swap = {sub[x]: 1, 1: sub[x]}
            for p in part:
                c[p] = swap.get(sub[p], sub[p])
        return _checked(g, c, delta)
    raise ContractViolation("no Brooks configuration found", n=n, delta=delta)


def _cycle_coloring(g: Graph) -> Coloring:
    order = _bfs_order(g, 0, (1 << g.n) - 1)
    if g.n % 2 == 0:
        return greedy_coloring(g, order)
    # odd cycle: walk around it so only the closing vertex needs a third color
    walk = [0]
    prev, cur = -1, 0
    while len(walk) < g.n:
        nxt = min(u for u in g.adj[cur] if u != prev)
        prev, cur = cur, nxt
        walk.append(cur)
    return greedy_coloring(g, walk)


def _checked(g: Graph, c: Coloring, k: int) -> Coloring:
    if not verify_coloring(g, c, k):
        raise ContractViolation("Brooks coloring exceeded delta colors or is improper", delta=k)
    return c


def brooks_coloring_components(g: Graph) -> Coloring:
    """Brooks coloring of each component, sharing one palette."""
    c: Coloring = {}
    for comp in g.components():
        sub = g.induced(comp)
        for i, col in brooks_coloring(sub).items():
            c[comp[i]] = col
    return c


# -- interchange ------------------------------------------------------------------


def coloring_to_json(c: Mapping[int, int]) -> dict[str, int]:
    """1-indexed vertex keys, as in DIMACS."""
    return {str(v + 1): col for v, col in sorted(c.items())}


def coloring_to_lines(c: Mapping[int, int]) -> str:
    return "".join(f"{v + 1} {col}\n" for v, col in sorted(c.items()))


def parse_coloring(text: str) -> Coloring:
    """Read either the JSON object form or ``v color`` lines (1-indexed vertices)."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON coloring: {exc}") from None
        if "coloring" in data and isinstance(data["coloring"], dict):
            data = data["coloring"]
        try:
            return {int(k) - 1: int(v) for k, v in data.items()}
        except (TypeError, ValueError):
            raise ParseError("JSON coloring must map vertex -> integer color") from None
    c: Coloring = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(("#", "c ")):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'vertex color'", no, raw)
        try:
            v, col = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("non-integer field", no, raw) from None
        if v < 1:
            raise ParseError("vertices are 1-indexed", no, raw)
        if v - 1 in c:
            raise ParseError(f"vertex {v} colored twice", no, raw)
        c[v - 1] = col
    return c
