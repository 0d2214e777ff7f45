"""Immutable simple undirected graphs and DIMACS interchange.

Vertices are ``0..n-1`` internally. DIMACS files are 1-indexed. Every graph
also carries bitmask adjacency (``masks[v]`` has bit ``u`` set iff ``uv`` is an
edge) since most of the exact searches in this package are bitset based.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence, TextIO

from .errors import ParseError, PreconditionError

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    ``labels[i]`` records the identity of vertex ``i`` in whatever graph it was
    cut from (see :meth:`induced`), so colorings of subgraphs can be mapped
    back. A freshly built graph has ``labels == range(n)``.
    """

    __slots__ = ("n", "edges", "adj", "masks", "labels")

    def __init__(self, n: int, edges: Iterable[Edge] = (), labels: Sequence[int] | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        es: set[Edge] = set()
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            es.add(_norm(u, v))
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(es)
        self.adj = tuple(frozenset(a) for a in adj)
        self.masks = tuple(to_mask(a) for a in adj)
        if labels is None:
            self.labels = tuple(range(n))
        else:
            if len(labels) != n:
                raise ValueError("labels must have one entry per vertex")
            self.labels = tuple(labels)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, combinations(range(n), 2))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n)

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> Graph:
        return cls(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def petersen(cls) -> Graph:
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls(10, outer + spokes + inner)

    @classmethod
    def disjoint_union(cls, *graphs: Graph) -> Graph:
        edges: list[Edge] = []
        off = 0
        for g in graphs:
            edges.extend((u + off, v + off) for u, v in g.edges)
            off += g.n
        return cls(off, edges)

    # -- queries --------------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        """``N(v) | {v}``."""
        return self.adj[v] | {v}

    def is_regular(self) -> bool:
        return self.max_degree == self.min_degree

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def is_stable(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        mask = to_mask(vs)
        return all(not (self.masks[v] & mask) for v in vs)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        mask = to_mask(vs)
        return all((self.masks[v] | (1 << v)) & mask == mask for v in vs)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.masks[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # -- derived graphs -------------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled ``0..k-1`` in ascending order of ``vertices``.

        ``result.labels[i]`` is the parent's label of the vertex now called ``i``.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(keep), edges, labels=[self.labels[v] for v in keep])

    def remove(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """``G - vertices`` plus the list mapping new indices to old ones."""
        drop = set(vertices)
        keep = [v for v in range(self.n) if v not in drop]
        return self.induced(keep), keep

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, delta={self.max_degree})"


def complement(g: Graph) -> Graph:
    """Graph on the same vertices with exactly the missing pairs as edges."""
    return Graph(
        g.n,
        ((u, v) for u, v in combinations(range(g.n), 2) if v not in g.adj[u]),
        labels=g.labels,
    )


def neighborhood_edge_count(g: Graph, v: int) -> int:
    """Number of edges with both endpoints in ``N(v)``."""
    if not 0 <= v < g.n:
        raise PreconditionError(f"unknown vertex {v}")
    nmask = g.masks[v]
    return sum((g.masks[u] & nmask).bit_count() for u in bits(nmask)) // 2


def nonadjacent_neighbor_pairs(g: Graph, v: int) -> int:
    """``C(d(v), 2)`` minus the edges inside ``N(v)``."""
    d = g.degree(v)
    return d * (d - 1) // 2 - neighborhood_edge_count(g, v)


# -- DIMACS ---------------------------------------------------------------------


def parse_dimacs(text: str | TextIO) -> Graph:
    """Read a DIMACS ``.col`` graph.

    ``c`` lines are comments. Duplicate edges (in either orientation) collapse.
    """
    lines = text.splitlines() if isinstance(text, str) else text.read().splitlines()
    n: int | None = None
    edges: list[Edge] = []
    for no, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", no, raw)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError("malformed header, expected 'p edge N M'", no, raw)
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise ParseError("non-integer count in header", no, raw) from None
            if n < 0:
                raise ParseError("negative vertex count", no, raw)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before header", no, raw)
            if len(parts) != 3:
                raise ParseError("malformed edge line", no, raw)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("non-integer vertex", no, raw) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex index out of range 1..{n}", no, raw)
            if u == v:
                raise ParseError("self-loop", no, raw)
            edges.append((u - 1, v - 1))
        elif parts[0] == "n":
            # node-weight lines appear in some benchmark files; weights are ignored
            continue
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", no, raw)
    if n is None:
        raise ParseError("missing 'p edge' header")
    return Graph(n, edges)


def write_dimacs(g: Graph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"c {line}" for line in comment.splitlines())
    out.append(f"p edge {g.n} {g.m}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in sorted(g.edges))
    return "\n".join(out) + "\n"
