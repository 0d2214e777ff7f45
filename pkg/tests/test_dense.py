from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from chibound.cliques import clique_number
from chibound.coloring import chromatic_number_exact, colors_used, greedy_coloring, verify_coloring
from chibound.dense import (
    dense_condition,
    dense_partition,
    epsilon_admissible,
    extend_dense,
    extend_dense_audited,
    hang_pendants,
)
from chibound.errors import InfeasibleParameters, PreconditionError
from chibound.generators import planted_dense_instance, planted_requirements
from chibound.graph import Graph, neighborhood_edge_count

RHO = Fraction(1, 160)


def residual_base(g: Graph, v: int, alpha):
    """Optimal coloring of ``g - (D2 | D3)``, the part the extension expects pre-colored."""
    h, _ = hang_pendants(g, v)
    p = dense_partition(h, v, alpha)
    rest = [u for u in range(g.n) if u not in p.D2 and u not in p.D3]
    chi, c = chromatic_number_exact(g.induced(rest), limit=400)
    return {rest[i]: col for i, col in c.items()}, chi


def test_planted_requirements_frozen():
    assert planted_requirements(12, RHO) == (8, 5, 0)
    assert planted_requirements(24, RHO) == (16, 9, 1)
    assert planted_requirements(150, RHO) == (100, 51, 69)


@pytest.mark.parametrize("delta", [12, 18, 24])
def test_small_delta_is_infeasible(delta):
    with pytest.raises(InfeasibleParameters):
        planted_dense_instance(delta, RHO, seed=0)


def test_epsilon_admissible():
    assert epsilon_admissible(RHO, RHO)
    assert not epsilon_admissible(Fraction(1, 6), Fraction(1, 1000))
    assert not epsilon_admissible(0, RHO)
    # 1/6 - 2 sqrt(1/144) = 0
    assert not epsilon_admissible(Fraction(1, 1000), Fraction(1, 144))


def test_hang_pendants():
    g = Graph.star(3)
    h, n0 = hang_pendants(Graph.disjoint_union(g, Graph.path(2)), 4)
    assert n0 == 6 and h.degree(4) == 3 and h.n == 8
    assert hang_pendants(g, 0) == (g, 4)


def test_complete_neighbourhood_partition():
    g = Graph.complete(13)
    p = dense_partition(g, 0, RHO)
    assert not p.D1 and not p.D2 and p.D3 == frozenset(range(13))
    assert dense_condition(g, 0, RHO)


def test_partition_rejects_sparse_neighbourhood():
    g = Graph.cycle(6)
    assert not dense_condition(g, 0, RHO)
    with pytest.raises(PreconditionError):
        dense_partition(g, 0, RHO)


def test_partition_requires_max_degree():
    g = Graph.disjoint_union(Graph.complete(3), Graph.complete(5))
    with pytest.raises(PreconditionError):
        dense_partition(g, 0, RHO)


def test_extension_rejects_large_omega():
    g = Graph.complete(13)
    with pytest.raises(PreconditionError):
        extend_dense(g, 0, RHO, RHO, {})


def test_extension_rejects_bad_epsilon():
    g, v = planted_dense_instance(150, RHO, seed=0)
    with pytest.raises(PreconditionError):
        extend_dense(g, v, RHO, Fraction(1, 5), {})


@pytest.mark.slow
def test_planted_large_delta():
    """Instances where the density budget can absorb the forced missing edges."""
    rng = random.Random(7)
    for i in range(100):
        delta = rng.randint(120, 240)
        g, v = planted_dense_instance(delta, RHO, seed=i)
        assert g.max_degree == delta and dense_condition(g, v, RHO)
        assert 3 * clique_number(g) <= 2 * (delta + 1)
        base, chi_res = residual_base(g, v, RHO)
        ext = extend_dense_audited(g, v, RHO, RHO, base)
        assert verify_coloring(g, ext.coloring)
        # chi of the residual is at most chi(G - v), since v lies in D3
        assert colors_used(ext.coloring) <= max(chi_res, math.ceil((1 - RHO) * (delta + 1)))
        assert ext.min_list_size >= math.ceil(Fraction(5, 6) * (delta + 1)) - 1
        assert all(ext.checks.values())
        p = ext.partition
        assert len(p.D1) < 2 * RHO * delta
        assert len(p.D2) ** 2 < RHO * (delta + 1) ** 2


def test_greedy_base_also_extends():
    g, v = planted_dense_instance(160, RHO, seed=3)
    h, _ = hang_pendants(g, v)
    p = dense_partition(h, v, RHO)
    rest = [u for u in range(g.n) if u not in p.D2 and u not in p.D3]
    base = greedy_coloring(g, rest)
    base = {u: base[u] for u in rest}
    c = extend_dense(g, v, RHO, RHO, base)
    assert verify_coloring(g, c, max(colors_used(base), math.floor((1 - RHO) * 161)))
    assert neighborhood_edge_count(g, v) > (1 - RHO) * (160 * 159 // 2)
