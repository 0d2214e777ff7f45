from __future__ import annotations

import math
from fractions import Fraction

import pytest

from chibound.coloring import colors_used, verify_coloring
from chibound.errors import PreconditionError
from chibound.generators import planted_dense_instance, random_graph
from chibound.graph import Graph
from chibound.pipeline import (
    SEED_ENV,
    PipelineConfig,
    bound_chi,
    default_epsilon,
    default_seed,
    midpoint_bound,
    target_bound,
)
from trace_check import trace_problems


def test_default_epsilon():
    assert default_epsilon(3) == 1 / (320 * Fraction("403.4288"))
    assert default_epsilon(10**6) == Fraction(1, 10**6)


def test_target_bound_values():
    eps = Fraction(1, 4)
    # (3/4)*5 + (1/4)*3 = 4.5
    assert target_bound(4, 3, eps) == 5
    assert target_bound(4, 5, eps) == 5
    assert target_bound(7, 2, eps) == math.ceil(Fraction(3, 4) * 8 + Fraction(1, 2))
    assert midpoint_bound(4, 3) == 4


def test_k5():
    rep = bound_chi(Graph.complete(5))
    assert rep.colors_used == 5 and rep.bound == 5 and rep.passes
    assert rep.trace[0]["branch"] in ("brooks", "peel-stable-set")


def test_two_k4():
    g = Graph.disjoint_union(Graph.complete(4), Graph.complete(4))
    rep = bound_chi(g)
    assert [s["branch"] for s in rep.trace] == ["brooks"]
    assert rep.colors_used == 4 == rep.bound


def test_c5():
    rep = bound_chi(Graph.cycle(5))
    assert rep.colors_used == 3 and rep.bound == 3 and rep.chi == 3 and rep.passes


def test_peel_branch():
    rep = bound_chi(Graph.complete(7))
    branches = [s["branch"] for s in rep.trace]
    assert branches[0] == "peel-stable-set" and branches[-1] == "brooks"
    assert rep.colors_used == 7 and trace_problems(Graph.complete(7), rep) == []


def test_dense_branch_fires_on_planted_instance():
    rho = Fraction(1, 160)
    g, v = planted_dense_instance(130, rho, seed=5)
    rep = bound_chi(g, PipelineConfig(chi_limit=0))
    branches = [s["branch"] for s in rep.trace]
    assert "dense-extend" in branches
    step = rep.trace[branches.index("dense-extend")]
    assert all(step["checks"].values())
    assert verify_coloring(g, rep.coloring, g.max_degree + 1)
    assert trace_problems(g, rep) == []


def test_sparse_or_fallback_branch():
    g = random_graph(16, 0.5, 3)
    rep = bound_chi(g)
    assert rep.trace[-1]["branch"] in ("sparse", "greedy-fallback")
    assert trace_problems(g, rep) == []


def test_report_json():
    rep = bound_chi(Graph.cycle(5))
    js = rep.to_json()
    assert js["input"]["delta"] == 2 and js["colors_used"] == 3
    assert set(js["coloring"]) == {"1", "2", "3", "4", "5"}
    assert "hajnal" in js["certificates"] and js["seed"] == 0
    assert "coloring" not in rep.to_json(include_coloring=False)


def test_deterministic():
    g = random_graph(14, 0.5, 8)
    a, b = bound_chi(g, PipelineConfig(seed=4)), bound_chi(g, PipelineConfig(seed=4))
    assert a.coloring == b.coloring
    assert a.trace == b.trace


def test_env_seed(monkeypatch):
    monkeypatch.setenv(SEED_ENV, "17")
    assert default_seed() == 17 and PipelineConfig.from_env().seed == 17
    monkeypatch.setenv(SEED_ENV, "0x10")
    assert default_seed() == 16
    monkeypatch.setenv(SEED_ENV, "-1")
    with pytest.raises(ValueError):
        default_seed()
    monkeypatch.delenv(SEED_ENV)
    assert default_seed() == 0


@pytest.mark.parametrize(
    "kw",
    [
        {"delta0": 0},
        {"epsilon": 0},
        {"epsilon": 1},
        {"rho": Fraction(1, 100)},
        {"rho": Fraction(1, 160), "alpha": Fraction(1, 200)},
        {"seed": -1},
    ],
)
def test_config_validation(kw):
    with pytest.raises(PreconditionError):
        PipelineConfig(**kw)


def test_empty_graph():
    with pytest.raises(PreconditionError):
        bound_chi(Graph.empty(0))


def test_small_catalog(small_catalog):
    for g in small_catalog:
        rep = bound_chi(g)
        assert verify_coloring(g, rep.coloring, g.max_degree + 1)
        assert rep.chi is not None and rep.chi <= rep.colors_used and rep.chi <= rep.bound
        assert colors_used(rep.coloring) == rep.colors_used
        assert trace_problems(g, rep) == []


@pytest.mark.slow
def test_at_most_delta_colors_off_the_exceptions():
    from chibound.corpus import catalog, random_corpus

    graphs = list(catalog(7)) + [g for _, g in random_corpus()]
    for g in graphs:
        if not g.is_connected() or g.is_complete():
            continue
        if g.max_degree == 2 and g.min_degree == 2 and g.n % 2:
            continue
        assert bound_chi(g).colors_used <= g.max_degree
