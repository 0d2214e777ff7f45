"""Deterministic instance generators."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

from .cliques import clique_number
from .errors import InfeasibleParameters, PreconditionError
from .graph import Edge, Graph, neighborhood_edge_count


def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p): pairs visited in lexicographic order, each kept with probability ``p``."""
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    rng = random.Random(seed)
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_regular_graph(n: int, d: int, seed: int, max_tries: int = 1000) -> Graph:
    """Random d-regular graph from the pairing model with re-pairing.

    Stubs are shuffled and paired; pairs forming a loop or a repeated edge go
    back into the pool, which is reshuffled until it empties. A run that gets
    stuck restarts. Close to uniform for small ``d``, not exactly uniform.
    """
    if d >= n or d < 0 or (n * d) % 2:
        raise ValueError(f"no {d}-regular simple graph on {n} vertices")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges: set[Edge] = set()
        stubs = [v for v in range(n) for _ in range(d)]
        while stubs:
            rng.shuffle(stubs)
            left: list[int] = []
            for i in range(0, len(stubs), 2):
                u, v = stubs[i], stubs[i + 1]
                e = (min(u, v), max(u, v))
                if u != v and e not in edges:
                    edges.add(e)
                else:
                    left += [u, v]
            if len(left) == len(stubs):
                # a whole round placed nothing: pick one legal pair directly, or restart
                legal = [
                    (i, j)
                    for i, j in combinations(range(len(left)), 2)
                    if left[i] != left[j] and (min(left[i], left[j]), max(left[i], left[j])) not in edges
                ]
                if not legal:
                    break
                i, j = rng.choice(legal)
                u, v = left[i], left[j]
                edges.add((min(u, v), max(u, v)))
                left = [w for k, w in enumerate(left) if k not in (i, j)]
            stubs = left
        if not stubs:
            return Graph(n, edges)
    raise InfeasibleParameters(f"pairing failed {max_tries} times for n={n}, d={d}")


def mycielski(g: Graph) -> Graph:
    """Mycielskian: shadow vertex ``n+i`` copies ``i``'s neighbourhood, plus an apex."""
    n = g.n
    edges: list[Edge] = list(g.edges)
    for u, v in g.edges:
        edges.append((u, n + v))
        edges.append((v, n + u))
    edges.extend((n + i, 2 * n) for i in range(n))
    return Graph(2 * n + 1, edges)


def queen_graph(rows: int, cols: int) -> Graph:
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    edges = []
    for i, j in combinations(range(len(cells)), 2):
        (r1, c1), (r2, c2) = cells[i], cells[j]
        if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
            edges.append((i, j))
    return Graph(len(cells), edges)


# -- planted dense neighbourhoods ---------------------------------------------


def planted_requirements(delta: int, alpha) -> tuple[int, int, int]:
    """``(omega_cap, forced_missing, missing_budget)`` for a planted instance.

    Keeping ``omega <= 2/3(delta+1)`` with ``v`` joined to all of ``N(v)`` forces
    ``N(v)`` to miss at least a matching's worth of edges (``delta + 1 - omega_cap``
    pairs, the Turan minimum); the density condition allows strictly fewer than
    ``alpha * C(delta, 2)`` missing edges.
    """
    alpha = Fraction(alpha) if not isinstance(alpha, float) else Fraction(str(alpha))
    omega_cap = 2 * (delta + 1) // 3
    forced = delta + 1 - omega_cap
    allowed = alpha * (delta * (delta - 1) // 2)
    budget = -(-allowed.numerator // allowed.denominator) - 1  # largest integer < allowed
    return omega_cap, forced, budget


def planted_dense_instance(delta: int, alpha, seed: int, max_retries: int = 20) -> tuple[Graph, int]:
    """A graph with max degree ``delta`` and a vertex whose neighbourhood is nearly complete.

    ``N(v)`` is ``K_delta`` minus a matching (to cap the clique number) minus a
    few extra edges at some vertices, which are then given neighbours in a
    sparse outside pool so they land in ``D2``. Raises
    :class:`InfeasibleParameters` when no graph meets all constraints.
    """
    alpha_f = Fraction(str(alpha)) if isinstance(alpha, float) else Fraction(alpha)
    if not 0 < alpha_f < Fraction(1, 144):
        raise PreconditionError(f"alpha={alpha_f} must lie in (0, 1/144)")
    if delta < 8:
        raise PreconditionError("delta must be at least 8")
    omega_cap, forced, budget = planted_requirements(delta, alpha_f)
    if forced > budget:
        raise InfeasibleParameters(
            f"delta={delta}, alpha={alpha_f}: keeping omega <= {omega_cap} needs {forced} missing "
            f"edges in N(v), but fewer than alpha*C(delta,2) = {float(alpha_f * delta * (delta - 1) / 2):.3f} are allowed"
        )
    # smallest outside degree that puts a vertex in D2: > sqrt(alpha)(delta+1)
    d2_threshold = math.isqrt(int(alpha_f * (delta + 1) ** 2)) + 1
    rng = random.Random(seed)
    for _ in range(max_retries):
        g, v = _plant(delta, forced, budget, rng, d2_threshold)
        if (
            g.max_degree <= delta
            and g.degree(v) == delta
            and neighborhood_edge_count(g, v) > (1 - alpha_f) * (delta * (delta - 1) // 2)
            and clique_number(g) <= omega_cap
        ):
            return g, v
    raise InfeasibleParameters(f"no valid instance after {max_retries} attempts (delta={delta}, alpha={alpha_f})")


def _plant(delta: int, forced: int, budget: int, rng: random.Random, d2_threshold: int) -> tuple[Graph, int]:
    nb = list(range(1, delta + 1))
    rng.shuffle(nb)
    missing: set[Edge] = set()
    for i in range(forced):
        u, w = nb[2 * i], nb[2 * i + 1]
        missing.add((min(u, w), max(u, w)))
    # spend part of the spare budget on a few heavy vertices
    spare = budget - forced
    heavy: list[int] = []
    if spare > 0:
        for u in rng.sample(nb, k=min(len(nb), max(1, rng.randint(1, 4)))):
            if spare <= 0:
                break
            hi = min(spare, delta // 3)
            t = rng.randint(min(d2_threshold, hi), hi)
            others = [w for w in nb if w != u and (min(u, w), max(u, w)) not in missing]
            for w in rng.sample(others, k=min(t, len(others))):
                missing.add((min(u, w), max(u, w)))
                spare -= 1
            heavy.append(u)
    edges: set[Edge] = {(0, u) for u in nb}
    for u, w in combinations(sorted(nb), 2):
        if (u, w) not in missing:
            edges.add((u, w))
    deg = {u: delta for u in nb}
    for u, w in missing:
        deg[u] -= 1
        deg[w] -= 1
    pool_size = max(delta // 2, 4)
    pool = list(range(delta + 1, delta + 1 + pool_size))
    pool_deg = {x: 0 for x in pool}
    for u in sorted(nb):
        free = delta - deg[u]
        take = free if u in heavy else (free if rng.random() < 0.5 else 0)
        targets = [x for x in pool if pool_deg[x] < delta]
        for x in rng.sample(targets, k=min(take, len(targets))):
            edges.add((u, x))
            pool_deg[x] += 1
    for x, y in combinations(pool, 2):
        if pool_deg[x] < delta and pool_deg[y] < delta and rng.random() < 3 / pool_size:
            edges.add((x, y))
            pool_deg[x] += 1
            pool_deg[y] += 1
    n = delta + 1 + pool_size
    perm = list(range(n))
    rng.shuffle(perm)
    g = Graph(n, [(perm[a], perm[b]) for a, b in edges])
    return g, perm[0]
