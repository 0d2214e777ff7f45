from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from chibound.coloring import colors_used, is_proper, verify_coloring
from chibound.errors import CapacityError, PreconditionError, SparseFailure
from chibound.generators import random_regular_graph
from chibound.graph import Graph
from chibound.sparse import (
    E6,
    SparseConfig,
    complete_from_partial,
    iter_trials,
    monte_carlo_stats,
    naive_color_trial,
    regularize,
    repeated_colors,
    repeats_needed,
    sparse_color,
    sparse_color_audited,
)
from oracles import naive_trial_counts

C4 = Graph.cycle(4)


def kdd(d: int) -> Graph:
    return Graph(2 * d, [(i, d + j) for i in range(d) for j in range(d)])


def exact_c4_expectations():
    """Average the per-vertex counts over all 16 assignments of 2 colors to C_4."""
    tot = np.zeros((4, 4))
    for a in product((1, 2), repeat=4):
        tot += np.array(naive_trial_counts(C4, list(a)))
    return tot / 16


class TestTrial:
    def test_c4_single_color(self):
        rec = naive_color_trial(C4, SparseConfig(B=0, C=1), 0)
        assert (rec.retained == 0).all()
        assert rec.AT.tolist() == [1] * 4 and rec.Del.tolist() == [1] * 4 and rec.X.tolist() == [0] * 4

    def test_c4_exact_expectations(self):
        exact = exact_c4_expectations()
        for v in range(4):
            assert exact[v].tolist() == [0.5, 0.375, 0.125, 0.125]

    def test_retained_is_proper(self):
        g = random_regular_graph(30, 5, 3)
        for t in range(20):
            rec = naive_color_trial(g, SparseConfig(B=0, seed=1), t)
            assert is_proper(g, rec.retained_coloring())
            keep = rec.retained != 0
            assert (rec.retained[keep] == rec.assignment[keep]).all()

    def test_matches_naive_oracle(self):
        for s in range(5):
            g = random_regular_graph(16, 4 + s % 3, s)
            cfg = SparseConfig(B=0, seed=s, C=2 + s % 2)
            for t in range(30):
                rec = naive_color_trial(g, cfg, t)
                want = naive_trial_counts(g, rec.assignment.tolist())
                got = list(zip(rec.AT.tolist(), rec.Del.tolist(), rec.X.tolist(), rec.Xp.tolist()))
                assert got == want

    def test_replay_equals_batch(self):
        g = Graph.petersen()
        cfg = SparseConfig(B=3, trials=40, seed=9)
        batch = next(iter_trials(g, cfg))
        for t in (0, 17, 39):
            assert (naive_color_trial(g, cfg, t).assignment == batch["assignment"][t]).all()

    def test_needs_regular(self):
        with pytest.raises(PreconditionError):
            naive_color_trial(Graph.path(3), SparseConfig(B=0), 0)


class TestRegularize:
    def test_regular_unchanged(self):
        g = Graph.complete(4)
        assert regularize(g) == (g, [0, 1, 2, 3])

    def test_p3_becomes_c6(self):
        reg, inj = regularize(Graph.path(3))
        assert reg.n == 6 and reg.is_regular() and reg.max_degree == 2 and reg.is_connected()

    def test_star(self):
        g = Graph.star(3)
        reg, inj = regularize(g)
        assert reg.n <= 32 and reg.is_regular() and reg.max_degree == 3
        assert reg.induced(inj) == g

    def test_catalog_induced(self, small_catalog):
        for g in small_catalog:
            reg, inj = regularize(g)
            assert reg.is_regular() and reg.max_degree == g.max_degree
            assert reg.induced(inj) == g

    def test_capacity(self):
        with pytest.raises(CapacityError):
            regularize(Graph.star(10), max_vertices=32)


class TestMonteCarlo:
    def test_deterministic(self):
        cfg = SparseConfig(B=3, trials=500, seed=4)
        a, b = monte_carlo_stats(Graph.petersen(), cfg), monte_carlo_stats(Graph.petersen(), cfg)
        for k in a.mean:
            assert np.array_equal(a.mean[k], b.mean[k])

    def test_zero_trials(self):
        with pytest.raises(PreconditionError):
            monte_carlo_stats(C4, SparseConfig(B=0, trials=0))

    def test_stderr_shrinks(self):
        se1 = monte_carlo_stats(C4, SparseConfig(B=1, C=2, trials=20_000, seed=1)).stderr["AT"]
        se2 = monte_carlo_stats(C4, SparseConfig(B=1, C=2, trials=40_000, seed=1)).stderr["AT"]
        ratio = se2 / se1
        assert np.all(np.abs(ratio - 1 / math.sqrt(2)) < 0.05)

    def test_c4_close_to_exact(self):
        st = monte_carlo_stats(C4, SparseConfig(B=1, C=2, trials=20_000, seed=2))
        exact = exact_c4_expectations()
        for i, k in enumerate(("AT", "Del", "X", "Xp")):
            assert np.all(np.abs(st.mean[k] - exact[:, i]) <= 3 * st.stderr[k] + 1e-12)
        assert all(st.checks.values())

    def test_csv_rows(self):
        st = monte_carlo_stats(Graph.petersen(), SparseConfig(B=3, trials=100))
        rows = st.csv_rows()
        assert len(rows) == 10 and rows[0]["vertex"] == 1 and rows[0]["pairs"] == 3


class TestCompletion:
    def test_r0_is_greedy(self):
        g = Graph.petersen()
        assert verify_coloring(g, complete_from_partial(g, {}, 0), 4)

    def test_c4_two_step(self):
        c = complete_from_partial(C4, {0: 1, 2: 1}, 1, palette=1)
        assert verify_coloring(C4, c, 2) and c[0] == c[2] == 1

    def test_missing_repeats(self):
        with pytest.raises(PreconditionError):
            complete_from_partial(C4, {0: 1}, 1, palette=1)

    def test_improper_retained(self):
        with pytest.raises(PreconditionError):
            complete_from_partial(C4, {0: 1, 1: 1}, 0, palette=1)

    def test_repeated_colors(self):
        assert repeated_colors(C4, {0: 1, 2: 1}, 1) == 1
        assert repeated_colors(C4, {0: 1, 2: 2}, 1) == 0


class TestSparseColor:
    def test_repeats_needed(self):
        assert repeats_needed(0, 5) == 0
        assert repeats_needed(1, 5) == 1
        assert repeats_needed(E6 * 5, 5) == 1
        assert repeats_needed(E6 * 5 + Fraction(1, 10**6), 5) == 2

    def test_r0(self):
        g = random_regular_graph(20, 4, 0)
        c = sparse_color(g, SparseConfig(B=0))
        assert verify_coloring(g, c, 5)

    def test_success(self):
        g = kdd(8)
        res = sparse_color_audited(g, SparseConfig(B=1, max_attempts=200))
        assert res.r == 1 and verify_coloring(g, res.coloring, 8)
        assert colors_used(res.coloring) <= 8

    def test_irregular_input_is_regularized(self):
        full = kdd(8)
        g = Graph(full.n, [e for e in full.edges if e != (0, 8)])
        res = sparse_color_audited(g, SparseConfig(B=1, seed=1, max_attempts=50))
        assert res.regular_n == 32 and verify_coloring(g, res.coloring, 8)

    def test_failure_report(self):
        with pytest.raises(SparseFailure) as info:
            sparse_color(Graph.petersen(), SparseConfig(B=1, max_attempts=5))
        rep = info.value.report
        assert rep["attempts"] == 5 and rep["best_min_X"] == 0 and 1 <= rep["witness_vertex"] <= 10

    def test_dense_neighbourhood_rejected(self):
        with pytest.raises(PreconditionError):
            sparse_color(Graph.complete(5), SparseConfig(B=1))

    @pytest.mark.parametrize("kw", [{"B": -1}, {"B": 1, "C": 0}, {"B": 1, "seed": -3}])
    def test_config_validation(self, kw):
        with pytest.raises(ValueError):
            SparseConfig(**kw)
