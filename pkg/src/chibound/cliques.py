"""Maximum cliques, the clique graph, and the Hajnal/Kostochka certificates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .errors import CapacityError, PreconditionError
from .graph import Graph, bits

DEFAULT_CLIQUE_LIMIT = 512
DEFAULT_MAX_CLIQUES = 50_000


def _color_sort(masks: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Greedy coloring of ``p``: vertices in class order with their class index."""
    order: list[int] = []
    colors: list[int] = []
    k = 0
    while p:
        k += 1
        q = p
        while q:
            v = (q & -q).bit_length() - 1
            q &= ~masks[v] & ~(1 << v)
            p &= ~(1 << v)
            order.append(v)
            colors.append(k)
    return order, colors


def _max_clique_in(masks: Sequence[int], p: int) -> int:
    """Mask of one maximum clique inside vertex set ``p``."""
    best = 0
    best_size = 0

    def expand(r: int, r_size: int, p: int) -> None:
        nonlocal best, best_size
        order, colors = _color_sort(masks, p)
        for i in range(len(order) - 1, -1, -1):
            if r_size + colors[i] <= best_size:
                return
            v = order[i]
            newp = p & masks[v]
            if newp:
                expand(r | (1 << v), r_size + 1, newp)
            elif r_size + 1 > best_size:
                best, best_size = r | (1 << v), r_size + 1
            p &= ~(1 << v)

    if p:
        expand(0, 0, p)
    return best


def _co_components(masks: Sequence[int], s: int) -> list[int]:
    """Components of the complement graph restricted to ``s``."""
    comps = []
    while s:
        low = s & -s
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= s & ~masks[v] & ~(1 << v)
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        s &= ~comp
    return comps


def max_clique(g: Graph, limit: int = DEFAULT_CLIQUE_LIMIT) -> frozenset[int]:
    """One maximum clique of ``g``.

    A graph whose complement is disconnected is the join of its co-components,
    so a maximum clique is the union of maximum cliques of the parts.
    """
    if g.n > limit:
        raise CapacityError("max_clique", g.n, limit)
    result = 0
    for part in _co_components(g.masks, (1 << g.n) - 1):
        result |= _max_clique_in(g.masks, part)
    return frozenset(bits(result))


def clique_number(g: Graph, limit: int = DEFAULT_CLIQUE_LIMIT) -> int:
    return len(max_clique(g, limit))


def greedy_clique_lower_bound(g: Graph) -> int:
    """Size of a clique grown greedily from each vertex; a cheap lower bound on omega."""
    best = 1 if g.n else 0
    for s in range(g.n):
        p = g.masks[s]
        size = 1
        while p:
            v = max(bits(p), key=lambda x: (g.masks[x] & p).bit_count())
            p &= g.masks[v]
            size += 1
        best = max(best, size)
    return best


# -- enumeration ----------------------------------------------------------------


@dataclass(frozen=True)
class CliqueFamily:
    cliques: tuple[frozenset[int], ...]
    omega: int

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.cliques)


def maximum_cliques(
    g: Graph,
    limit: int = DEFAULT_CLIQUE_LIMIT,
    max_count: int = DEFAULT_MAX_CLIQUES,
) -> CliqueFamily:
    """All cliques of size omega(g), sorted lexicographically."""
    omega = clique_number(g, limit)
    if g.n == 0:
        return CliqueFamily((), 0)
    masks = g.masks
    found: list[int] = []

    def bk(r: int, r_size: int, p: int, x: int) -> None:
        if r_size == omega:
            found.append(r)
            if len(found) > max_count:
                raise CapacityError("maximum_cliques count", len(found), max_count)
            return
        if r_size + p.bit_count() < omega:
            return
        _, colors = _color_sort(masks, p)
        if r_size + (colors[-1] if colors else 0) < omega:
            return
        px = p | x
        pivot = max(bits(px), key=lambda u: (p & masks[u]).bit_count())
        for v in bits(p & ~masks[pivot]):
            bk(r | (1 << v), r_size + 1, p & masks[v], x & masks[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk(0, 0, (1 << g.n) - 1, 0)
    cliques = sorted((tuple(bits(c)) for c in found))
    return CliqueFamily(tuple(frozenset(c) for c in cliques), omega)


# -- clique graph components ---------------------------------------------------


@dataclass(frozen=True)
class CliqueComponent:
    members: tuple[frozenset[int], ...]
    union: frozenset[int]
    intersection: frozenset[int]

    def to_json(self) -> dict:
        return {
            "members": [sorted(c) for c in self.members],
            "union": sorted(self.union),
            "intersection": sorted(self.intersection),
        }


def clique_components(fam: CliqueFamily | Sequence[frozenset[int]]) -> list[CliqueComponent]:
    """Connected components of the clique graph (cliques adjacent iff they intersect)."""
    cliques = list(fam)
    if not cliques:
        raise PreconditionError("clique family is empty")
    parent = list(range(len(cliques)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in combinations(range(len(cliques)), 2):
        if cliques[i] & cliques[j]:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[frozenset[int]]] = {}
    for i, c in enumerate(cliques):
        groups.setdefault(find(i), []).append(c)
    comps = []
    for members in groups.values():
        comps.append(
            CliqueComponent(
                tuple(members),
                frozenset().union(*members),
                frozenset.intersection(*members),
            )
        )
    return comps


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class HajnalCertificate:
    intersection_size: int
    union_size: int
    bound: int
    passed: bool
    family_size: int = 1

    @property
    def slack(self) -> int:
        return self.intersection_size + self.union_size - self.bound

    def to_json(self) -> dict:
        return {
            "family_size": self.family_size,
            "intersection": self.intersection_size,
            "union": self.union_size,
            "bound": self.bound,
            "pass": self.passed,
        }


def check_hajnal(g: Graph, sub: Sequence[frozenset[int]], omega: int | None = None) -> HajnalCertificate:
    """Evaluate ``|meet| + |join| >= 2*omega`` for a nonempty set of maximum cliques."""
    sub = list(sub)
    if not sub:
        raise PreconditionError("check_hajnal needs a nonempty clique collection")
    if omega is None:
        omega = clique_number(g)
    for c in sub:
        if len(c) != omega or not g.is_clique(c):
            raise PreconditionError(f"{sorted(c)} is not a maximum clique (omega={omega})")
    meet = frozenset.intersection(*map(frozenset, sub))
    join = frozenset().union(*sub)
    bound = 2 * omega
    return HajnalCertificate(len(meet), len(join), bound, len(meet) + len(join) >= bound, len(sub))


def kostochka_applies(omega: int, delta: int) -> bool:
    """``omega > 2/3 (delta + 1)``, compared exactly."""
    return 3 * omega > 2 * (delta + 1)


@dataclass(frozen=True)
class KostochkaCertificate:
    intersection_size: int
    bound: int
    passed: bool

    def to_json(self) -> dict:
        return {"intersection": self.intersection_size, "bound": self.bound, "pass": self.passed}


@dataclass(frozen=True)
class KostochkaReport:
    applicable: bool
    omega: int
    delta: int
    certificates: tuple[KostochkaCertificate, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "omega": self.omega,
            "delta": self.delta,
            "components": [c.to_json() for c in self.certificates],
        }


def check_kostochka(g: Graph, fam: CliqueFamily | None = None) -> KostochkaReport:
    """Per-component ``|F_i| >= 2*omega - (delta+1)`` when ``omega > 2/3(delta+1)``."""
    if fam is None:
        fam = maximum_cliques(g)
    delta = g.max_degree
    if not kostochka_applies(fam.omega, delta):
        return KostochkaReport(False, fam.omega, delta)
    bound = 2 * fam.omega - (delta + 1)
    certs = tuple(
        KostochkaCertificate(len(c.intersection), bound, len(c.intersection) >= bound)
        for c in clique_components(fam)
    )
    return KostochkaReport(True, fam.omega, delta, certs)


def sample_subfamilies(
    members: Sequence[frozenset[int]],
    max_exhaustive: int = 256,
    rng: random.Random | None = None,
) -> list[list[frozenset[int]]]:
    """Every nonempty subfamily when there are at most ``max_exhaustive`` of them.

    Otherwise ``max_exhaustive`` random nonempty subfamilies, always including
    the singletons and the full family.
    """
    k = len(members)
    total = (1 << k) - 1
    if total <= max_exhaustive:
        return [[members[i] for i in range(k) if s >> i & 1] for s in range(1, total + 1)]
    rng = rng or random.Random(0)
    picks = {1 << i for i in range(k)} | {total}
    while len(picks) < max_exhaustive:
        picks.add(rng.randrange(1, total + 1))
    return [[members[i] for i in range(k) if s >> i & 1] for s in sorted(picks)]

