"""Extending a coloring across a vertex whose neighbourhood is nearly complete.

All thresholds involving ``sqrt(alpha)`` are compared after squaring, with
``alpha`` and ``epsilon`` held as exact fractions, so no assertion here is at
the mercy of floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .cliques import clique_number
from .coloring import Coloring, is_proper, palette_size, verify_coloring
from .errors import ContractViolation, PreconditionError
from .graph import Graph, bits, neighborhood_edge_count, to_mask
from .listcolor import list_color_matching_complement
from .matching import max_antimatching

ALPHA_CEILING = Fraction(1, 144)
C1 = Fraction(1, 2)
# the antimatching of G|D3 has near-isolated components; the limit bounds the search, not |D3|
ANTIMATCHING_LIMIT = 64


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def _gt_sqrt(x: Fraction, alpha: Fraction, scale: int) -> bool:
    """``x > sqrt(alpha) * scale`` for ``scale >= 0``."""
    return x > 0 and x * x > alpha * scale * scale


def _lt_sqrt(x: Fraction, alpha: Fraction, scale: int, factor: Fraction = Fraction(1)) -> bool:
    """``x < factor * sqrt(alpha) * scale``."""
    return x < 0 or x * x < factor * factor * alpha * scale * scale


def hang_pendants(g: Graph, v: int) -> tuple[Graph, int]:
    """Add ``delta - d(v)`` pendant vertices at ``v``; original vertices keep their indices.

    Returns the augmented graph and the number of original vertices, which is
    the whole injection: vertex ``i < n`` of the result is vertex ``i`` of ``g``.
    """
    extra = g.max_degree - g.degree(v)
    if extra <= 0:
        return g, g.n
    edges = list(g.edges) + [(v, g.n + i) for i in range(extra)]
    return Graph(g.n + extra, edges), g.n


@dataclass(frozen=True)
class DensePartition:
    v: int
    D1: frozenset[int]
    D2: frozenset[int]
    D3: frozenset[int]
    alpha: Fraction
    delta: int
    neighborhood_edges: int
    cross_edges: int

    @property
    def beta1(self) -> Fraction:
        return Fraction(len(self.D1), self.delta + 1)

    @property
    def beta2(self) -> Fraction:
        return Fraction(len(self.D2), self.delta + 1)

    @property
    def c2(self) -> float:
        return math.sqrt(self.alpha)

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "D1": sorted(self.D1),
            "D2": sorted(self.D2),
            "D3_size": len(self.D3),
            "alpha": str(self.alpha),
            "delta": self.delta,
            "beta1": str(self.beta1),
            "beta2": str(self.beta2),
            "c1": str(C1),
            "c2": self.c2,
            "neighborhood_edges": self.neighborhood_edges,
            "cross_edges": self.cross_edges,
        }


def dense_condition(g: Graph, v: int, alpha, delta: int | None = None) -> bool:
    """More than ``(1 - alpha) * C(delta, 2)`` edges inside ``N(v)``."""
    alpha = as_fraction(alpha)
    if delta is None:
        delta = g.max_degree
    return neighborhood_edge_count(g, v) > (1 - alpha) * (delta * (delta - 1) // 2)


def dense_partition(g: Graph, v: int, alpha) -> DensePartition:
    """Split the closed neighbourhood of a dense vertex ``v`` by outside degree.

    ``D1``: neighbours with more than ``(delta+1)/2`` neighbours outside ``N[v]``.
    ``D2``: remaining neighbours with more than ``sqrt(alpha)(delta+1)``
    neighbours outside ``N[v] - D1``. ``D3``: the rest of ``N[v]``, including ``v``.
    """
    alpha = as_fraction(alpha)
    if not 0 < alpha < ALPHA_CEILING:
        raise PreconditionError(f"alpha={alpha} must lie in (0, 1/144)")
    delta = g.max_degree
    if g.degree(v) != delta:
        raise PreconditionError(f"d(v)={g.degree(v)} != delta={delta}; hang pendants first")
    e_nv = neighborhood_edge_count(g, v)
    if not e_nv > (1 - alpha) * (delta * (delta - 1) // 2):
        raise PreconditionError(
            f"N(v) has {e_nv} edges, need more than (1-{alpha})*C({delta},2)"
        )
    closed = g.masks[v] | (1 << v)
    d1 = 0
    for u in bits(g.masks[v]):
        if 2 * (g.masks[u] & ~closed).bit_count() > delta + 1:
            d1 |= 1 << u
    inner = closed & ~d1
    d2 = 0
    for u in bits(g.masks[v] & ~d1):
        if _gt_sqrt(Fraction((g.masks[u] & ~inner).bit_count()), alpha, delta + 1):
            d2 |= 1 << u
    d3 = closed & ~d1 & ~d2
    cross = sum((g.masks[u] & ~closed).bit_count() for u in bits(closed))
    part = DensePartition(
        v, frozenset(bits(d1)), frozenset(bits(d2)), frozenset(bits(d3)), alpha, delta, e_nv, cross
    )
    _check_partition_bounds(part)
    return part


def _check_partition_bounds(p: DensePartition) -> None:
    a, dl = p.alpha, p.delta
    if not p.cross_edges < a * dl * dl:
        raise ContractViolation("cross edges >= alpha*delta^2", cross=p.cross_edges, alpha=a, delta=dl)
    if not len(p.D1) < 2 * a * dl:
        raise ContractViolation("|D1| >= 2*alpha*delta", D1=len(p.D1), alpha=a, delta=dl)
    if not _lt_sqrt(Fraction(len(p.D1)), a, dl + 1, Fraction(1, 3)):
        raise ContractViolation("|D1| >= sqrt(alpha)(delta+1)/3", D1=len(p.D1), alpha=a, delta=dl)
    if not _lt_sqrt(Fraction(len(p.D2)), a, dl + 1):
        raise ContractViolation("|D2| >= sqrt(alpha)(delta+1)", D2=len(p.D2), alpha=a, delta=dl)
    if p.v not in p.D3:
        raise ContractViolation("center vertex not in D3", v=p.v)


@dataclass
class DenseExtension:
    coloring: Coloring
    partition: DensePartition
    k: int
    k_prime: int
    antimatching_size: int
    omega_d3: int
    min_list_size: int
    min_d2_available: int | None
    pendants: int
    checks: dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "partition": self.partition.to_json(),
            "k": self.k,
            "k_prime": self.k_prime,
            "antimatching": self.antimatching_size,
            "omega_D3": self.omega_d3,
            "min_list_size": self.min_list_size,
            "min_D2_available": self.min_d2_available,
            "pendants": self.pendants,
            "checks": self.checks,
        }


def epsilon_admissible(epsilon, alpha) -> bool:
    """``0 < epsilon < 1/6 - 2 sqrt(alpha)``."""
    eps, a = as_fraction(epsilon), as_fraction(alpha)
    gap = Fraction(1, 6) - eps
    return eps > 0 and gap > 0 and gap * gap > 4 * a


def extend_dense(g: Graph, v: int, alpha, epsilon, base: Mapping[int, int], omega: int | None = None) -> Coloring:
    return extend_dense_audited(g, v, alpha, epsilon, base, omega).coloring


def extend_dense_audited(
    g: Graph,
    v: int,
    alpha,
    epsilon,
    base: Mapping[int, int],
    omega: int | None = None,
) -> DenseExtension:
    """Extend ``base`` (a proper coloring of ``g - (D2 | D3)``) to all of ``g``.

    ``D2`` is colored greedily; ``D3`` from lists via the matching-complement
    list coloring, using a maximum antimatching of ``G|D3``. Every inequality
    the argument depends on is checked and reported in ``checks``; a failing
    one raises :class:`ContractViolation`.
    """
    alpha, eps = as_fraction(alpha), as_fraction(epsilon)
    if not epsilon_admissible(eps, alpha):
        raise PreconditionError(f"epsilon={eps} not in (0, 1/6 - 2*sqrt(alpha)) for alpha={alpha}")
    delta = g.max_degree
    if omega is None:
        omega = clique_number(g)
    if not 3 * omega <= 2 * (delta + 1):
        raise PreconditionError(f"omega={omega} > 2/3(delta+1) with delta={delta}")

    h, n0 = hang_pendants(g, v)
    part = dense_partition(h, v, alpha)
    d1, d2, d3 = part.D1, part.D2, part.D3
    checks: dict[str, bool] = {}

    outside = set(range(g.n)) - d2 - d3
    missing = outside - set(base)
    if missing:
        raise PreconditionError(f"base coloring misses vertices {sorted(missing)[:5]}")
    c: Coloring = {u: base[u] for u in outside}
    if not is_proper(g, c):
        raise PreconditionError("base coloring is not proper")
    k = math.floor((1 - eps) * (delta + 1))
    k_prime = max(k, palette_size(c))

    # greedy on D2
    slack = Fraction(1, 2) - eps
    checks["d2_available_positive"] = slack > 0 and slack * slack > Fraction(49, 36) * alpha
    if not checks["d2_available_positive"]:
        raise ContractViolation("(1/2 - eps - 7/6 sqrt(alpha))(delta+1) <= 0", eps=eps, alpha=alpha)
    cap = len(d1) + len(d2) + C1 * (delta + 1) - 1
    min_avail = None
    for u in sorted(d2):
        taken = {c[w] for w in h.adj[u] if w in c}
        n_colored = sum(1 for w in h.adj[u] if w in c)
        if n_colored > cap:
            raise ContractViolation("D2 vertex has too many colored neighbours", u=u, colored=n_colored, cap=cap)
        avail = [col for col in range(1, k_prime + 1) if col not in taken]
        if not avail:
            raise ContractViolation("no color left for D2 vertex", u=u, k_prime=k_prime)
        min_avail = len(avail) if min_avail is None else min(min_avail, len(avail))
        c[u] = avail[0]
    checks["d2_greedy"] = True

    # D3 via antimatching and list coloring
    d3_list = sorted(d3)
    index = {u: i for i, u in enumerate(d3_list)}
    sub = h.induced(d3_list)
    anti = max_antimatching(sub, ANTIMATCHING_LIMIT)
    om3 = clique_number(sub)
    t, msize = len(d3_list), len(anti)
    checks["omega_d3_bound"] = 3 * om3 <= 2 * (delta + 1)
    checks["antimatching_lower_bound"] = 2 * msize >= t - om3
    checks["d3_minus_m_bound"] = 6 * (t - msize) <= 5 * (delta + 1)
    for name in ("omega_d3_bound", "antimatching_lower_bound", "d3_minus_m_bound"):
        if not checks[name]:
            raise ContractViolation(name, D3=t, M=msize, omega_D3=om3, delta=delta)

    d3_mask = to_mask(d3)
    lists: dict[int, set[int]] = {}
    for u in d3_list:
        outside_nb = [w for w in h.adj[u] if not d3_mask >> w & 1]
        # neighbours outside D3 lie in D1, D2 or beyond N[v]
        far = Fraction(len(outside_nb) - len(d2))
        if _gt_sqrt(far, alpha, delta + 1):
            raise ContractViolation("D3 vertex has too many neighbours outside D3", u=u, outside=len(outside_nb))
        lst = set(range(1, k + 1)) - {c[w] for w in outside_nb}
        if len(lst) < t - msize:
            raise ContractViolation("list shorter than |D3| - |M|", u=u, list_size=len(lst), need=t - msize)
        if not 6 * (len(lst) + 1) > 5 * (delta + 1):
            raise ContractViolation("list size <= 5/6(delta+1) - 1", u=u, list_size=len(lst), delta=delta)
        lists[index[u]] = lst
    checks["list_sizes"] = True
    min_list = min(len(s) for s in lists.values())
    d3_col = list_color_matching_complement(t, list(anti), lists)
    for i, col in d3_col.items():
        c[d3_list[i]] = col

    result = {u: c[u] for u in range(n0)}
    if not verify_coloring(g, result, k_prime):
        raise ContractViolation("extended coloring improper or above k'", k_prime=k_prime)
    if not verify_coloring(h, c, k_prime):
        raise ContractViolation("extension improper on the pendant-completed graph", k_prime=k_prime)
    checks["proper"] = True
    return DenseExtension(result, part, k, k_prime, msize, om3, min_list, min_avail, h.n - n0, checks)
