"""The naive random coloring procedure for graphs without dense neighbourhoods.

Every vertex of a ``delta``-regular graph draws a color from ``1..C``; a vertex
keeps it only if no neighbour drew the same color. For each vertex ``v`` the
trial records, over the colors drawn by at least two non-adjacent neighbours
of ``v``:

* ``AT`` - how many such colors there are,
* ``Del`` - how many of them were lost by at least one neighbour of ``v``,
* ``X`` - how many were kept by every neighbour of ``v`` that drew them,
* ``X'`` - how many were drawn by exactly two (non-adjacent) neighbours, both keeping it.

Trial ``t`` uses its own random stream keyed by ``(seed, t)``, so any trial can
be replayed on its own and batches can be split freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .coloring import Coloring, is_proper, verify_coloring
from .errors import CapacityError, ContractViolation, PreconditionError, SparseFailure
from .graph import Graph, neighborhood_edge_count, nonadjacent_neighbor_pairs

E6 = Fraction("403.4288")  # e**6 to 6 significant digits
DEFAULT_MAX_REGULAR_VERTICES = 4096
_BATCH_CELLS = 2_000_000


@dataclass(frozen=True)
class SparseConfig:
    B: Fraction
    trials: int = 1000
    seed: int = 0
    max_attempts: int = 50
    C: int | None = None
    max_regular_vertices: int = DEFAULT_MAX_REGULAR_VERTICES

    def __post_init__(self):
        object.__setattr__(self, "B", Fraction(self.B))
        if self.B < 0:
            raise ValueError("B must be non-negative")
        if self.C is not None and self.C < 1:
            raise ValueError("palette size C must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    def palette(self, delta: int) -> int:
        return self.C if self.C is not None else delta // 2

    def in_theorem_regime(self, delta: int) -> bool:
        """Whether ``B > delta (log delta)^3``; recorded, never enforced."""
        return delta > 1 and self.B > delta * math.log(delta) ** 3

    def to_json(self) -> dict:
        return {
            "B": str(self.B),
            "trials": self.trials,
            "seed": self.seed,
            "max_attempts": self.max_attempts,
            "C": self.C,
            "max_regular_vertices": self.max_regular_vertices,
        }


def repeats_needed(B, delta: int) -> int:
    """``ceil(B / (e^6 delta))`` with the rational value of ``e^6``."""
    if delta <= 0:
        return 0
    return math.ceil(Fraction(B) / (E6 * delta))


# -- regularization -------------------------------------------------------------


def regularize(g: Graph, max_vertices: int | None = None) -> tuple[Graph, list[int]]:
    """Embed ``g`` as an induced subgraph of a ``delta(g)``-regular graph.

    Doubles the graph and joins the two copies of every minimum-degree vertex
    until the minimum degree reaches ``delta``. The injection is the identity on
    ``0..g.n-1``.
    """
    if g.n == 0:
        raise PreconditionError("cannot regularize the empty graph")
    delta = g.max_degree
    cur = g
    while cur.min_degree < delta:
        n = cur.n
        if max_vertices is not None and 2 * n > max_vertices:
            raise CapacityError("regularize", 2 * n, max_vertices)
        low = cur.min_degree
        edges = list(cur.edges) + [(u + n, v + n) for u, v in cur.edges]
        edges += [(v, v + n) for v in range(n) if cur.degree(v) == low]
        cur = Graph(2 * n, edges)
    return cur, list(range(g.n))


# -- one trial --------------------------------------------------------------------


class _Layout:
    """Index arrays for a regular graph, reused across trials."""

    def __init__(self, g: Graph):
        if g.n == 0 or not g.is_regular():
            raise PreconditionError("the naive coloring procedure needs a regular graph")
        self.n = g.n
        self.delta = g.max_degree
        if self.delta < 2:
            raise PreconditionError("the naive coloring procedure needs degree >= 2")
        self.nbr = np.array([sorted(a) for a in g.adj], dtype=np.int64)
        pv, pu, pw = [], [], []
        for v in range(g.n):
            nb = sorted(g.adj[v])
            for i, u in enumerate(nb):
                for w in nb[i + 1 :]:
                    if not g.has_edge(u, w):
                        pv.append(v)
                        pu.append(u)
                        pw.append(w)
        self.pv = np.array(pv, dtype=np.int64)
        self.pu = np.array(pu, dtype=np.int64)
        self.pw = np.array(pw, dtype=np.int64)
        self.v_rep = np.repeat(np.arange(g.n), self.delta)
        self.nbr_flat = self.nbr.reshape(-1)


def _assignments(n: int, C: int, seed: int, first: int, count: int) -> np.ndarray:
    return np.stack(
        [np.random.default_rng([seed, t]).integers(1, C + 1, size=n) for t in range(first, first + count)]
    )


def _batch_stats(lay: _Layout, A: np.ndarray, C: int) -> dict[str, np.ndarray]:
    """Statistics for a batch of assignments ``A`` of shape ``(T, n)``."""
    T, n = A.shape
    width = C + 1
    cells = T * n * width
    base = (np.arange(T) * n * width)[:, None]

    nb_col = A[:, lay.nbr]  # (T, n, delta)
    uncolored = (nb_col == A[:, :, None]).any(axis=2)

    # colors drawn by two non-adjacent neighbours of v
    pc = A[:, lay.pu]
    hit = pc == A[:, lay.pw]
    idx = base + lay.pv[None, :] * width + pc
    at = np.bincount(idx[hit], minlength=cells).reshape(T, n, width) > 0

    # colors lost by some neighbour of v; how many neighbours drew each color
    flat_col = nb_col.reshape(T, -1)
    idx_nb = base + lay.v_rep[None, :] * width + flat_col
    lost = uncolored[:, lay.nbr_flat]
    bad = np.bincount(idx_nb[lost], minlength=cells).reshape(T, n, width) > 0
    count = np.bincount(idx_nb.reshape(-1), minlength=cells).reshape(T, n, width)

    kept = at & ~bad
    return {
        "assignment": A,
        "retained": np.where(uncolored, 0, A),
        "AT": at.sum(axis=2),
        "Del": (at & bad).sum(axis=2),
        "X": kept.sum(axis=2),
        "Xp": (kept & (count == 2)).sum(axis=2),
    }


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    assignment: np.ndarray
    retained: np.ndarray  # 0 marks an uncolored vertex
    AT: np.ndarray
    Del: np.ndarray
    X: np.ndarray
    Xp: np.ndarray

    def retained_coloring(self) -> Coloring:
        return {v: int(c) for v, c in enumerate(self.retained) if c}


def naive_color_trial(g: Graph, cfg: SparseConfig, trial: int, _layout: _Layout | None = None) -> TrialRecord:
    lay = _layout or _Layout(g)
    C = cfg.palette(lay.delta)
    s = _batch_stats(lay, _assignments(lay.n, C, cfg.seed, trial, 1), C)
    return TrialRecord(trial, *(s[k][0] for k in ("assignment", "retained", "AT", "Del", "X", "Xp")))


def iter_trials(g: Graph, cfg: SparseConfig, first: int = 0, count: int | None = None):
    """Yield stat dicts for consecutive batches of trials (arrays of shape ``(T, n)``)."""
    lay = _Layout(g)
    C = cfg.palette(lay.delta)
    count = cfg.trials if count is None else count
    chunk = max(1, _BATCH_CELLS // (lay.n * (C + 1) + lay.pv.size + lay.nbr_flat.size))
    t = first
    while t < first + count:
        size = min(chunk, first + count - t)
        yield _batch_stats(lay, _assignments(lay.n, C, cfg.seed, t, size), C)
        t += size


# -- completion -----------------------------------------------------------------


def repeated_colors(g: Graph, partial: Mapping[int, int], v: int) -> int:
    """Colors carried by at least two neighbours of ``v`` under ``partial``."""
    seen: dict[int, int] = {}
    for u in g.adj[v]:
        c = partial.get(u)
        if c:
            seen[c] = seen.get(c, 0) + 1
    return sum(1 for k in seen.values() if k >= 2)


def complete_from_partial(g: Graph, retained: Mapping[int, int], r: int, palette: int | None = None) -> Coloring:
    """Turn a proper partial coloring with ``r`` repeats around each uncolored vertex
    into a full coloring with at most ``delta + 1 - r`` colors.

    Colors ``1..C`` are first saturated greedily so every uncolored vertex sees
    all of them; what is still uncolored then has at most ``delta - C - r``
    uncolored neighbours and is finished greedily with fresh colors.
    """
    delta = g.max_degree
    C = palette if palette is not None else delta // 2
    c = {v: col for v, col in retained.items() if col}
    if not is_proper(g, c) or any(not 1 <= col <= C for col in c.values()):
        raise PreconditionError("retained coloring must be proper with colors in 1..C")
    for v in range(g.n):
        if v not in c and repeated_colors(g, c, v) < r:
            raise PreconditionError(
                f"vertex {v} has {repeated_colors(g, c, v)} repeated colors in its neighbourhood, need {r}"
            )
    for col in range(1, C + 1):
        for v in range(g.n):
            if v not in c and all(c.get(u) != col for u in g.adj[v]):
                c[v] = col
    rest = [v for v in range(g.n) if v not in c]
    for v in rest:
        taken = {c[u] for u in g.adj[v] if u in c and c[u] > C}
        col = C + 1
        while col in taken:
            col += 1
        c[v] = col
    limit = max(delta + 1 - r, C)
    if not verify_coloring(g, c, limit):
        raise ContractViolation("completion used more than delta+1-r colors", delta=delta, r=r, C=C)
    return c


# -- Monte Carlo ------------------------------------------------------------------


@dataclass
class MonteCarloStats:
    n: int
    delta: int
    C: int
    B: Fraction
    trials: int
    seed: int
    mean: dict[str, np.ndarray]
    stderr: dict[str, np.ndarray]
    var: dict[str, np.ndarray]
    pairs: np.ndarray  # non-adjacent neighbour pairs per vertex
    B_used: np.ndarray  # B clamped to ``pairs`` per vertex
    clamped: bool
    xp_lower: np.ndarray
    at_upper: np.ndarray
    z: float = 3.0
    checks: dict[str, bool] = field(default_factory=dict)

    def aggregate(self) -> dict[str, dict[str, float]]:
        return {k: {"min": float(v.min()), "mean": float(v.mean())} for k, v in self.mean.items()}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "delta": self.delta,
            "C": self.C,
            "B": str(self.B),
            "trials": self.trials,
            "seed": self.seed,
            "clamped": self.clamped,
            "theorem_regime": self.delta > 1 and self.B > self.delta * math.log(self.delta) ** 3,
            "aggregate": self.aggregate(),
            "max_stderr": {k: float(v.max()) for k, v in self.stderr.items()},
            "checks": self.checks,
        }

    def csv_rows(self) -> list[dict]:
        rows = []
        for v in range(self.n):
            row = {"vertex": v + 1}
            for k in ("AT", "Del", "X", "Xp"):
                row[f"mean_{k}"] = float(self.mean[k][v])
                row[f"se_{k}"] = float(self.stderr[k][v])
            row["pairs"] = int(self.pairs[v])
            row["xp_lower"] = float(self.xp_lower[v])
            row["at_upper"] = float(self.at_upper[v])
            rows.append(row)
        return rows


def monte_carlo_stats(g: Graph, cfg: SparseConfig, z: float = 3.0) -> MonteCarloStats:
    """Empirical means of the per-vertex counts, checked against the exact
    finite bounds ``E X' >= (B/C)(1-1/C)^{6C}`` and ``E AT <= pairs/C``,
    each within ``z`` standard errors."""
    if cfg.trials <= 0:
        raise PreconditionError("monte_carlo_stats needs at least one trial")
    lay = _Layout(g)
    C = cfg.palette(lay.delta)
    keys = ("AT", "Del", "X", "Xp")
    s1 = {k: np.zeros(g.n) for k in keys}
    s2 = {k: np.zeros(g.n) for k in keys}
    identity_ok = True
    for batch in iter_trials(g, cfg):
        identity_ok &= bool(np.array_equal(batch["X"], batch["AT"] - batch["Del"]))
        identity_ok &= bool(np.all(batch["Xp"] <= batch["X"]))
        for k in keys:
            arr = batch[k].astype(float)
            s1[k] += arr.sum(axis=0)
            s2[k] += (arr * arr).sum(axis=0)
    T = cfg.trials
    mean = {k: s1[k] / T for k in keys}
    var = {k: np.maximum(s2[k] / T - mean[k] ** 2, 0.0) * (T / (T - 1) if T > 1 else 0.0) for k in keys}
    se = {k: np.sqrt(var[k] / T) for k in keys}
    pairs = np.array([nonadjacent_neighbor_pairs(g, v) for v in range(g.n)], dtype=float)
    B = float(cfg.B)
    B_used = np.minimum(B, pairs)
    factor = (1 - 1 / C) ** (6 * C)
    xp_lower = B_used / C * factor
    at_upper = pairs / C
    checks = {
        "x_equals_at_minus_del": identity_ok,
        "xp_lower_bound": bool(np.all(mean["Xp"] + z * se["Xp"] >= xp_lower - 1e-12)),
        "at_upper_bound": bool(np.all(mean["AT"] - z * se["AT"] <= at_upper + 1e-12)),
    }
    return MonteCarloStats(
        g.n, lay.delta, C, cfg.B, T, cfg.seed, mean, se, var, pairs, B_used,
        bool(np.any(pairs < B)), xp_lower, at_upper, z, checks,
    )


# -- coloring -------------------------------------------------------------------


@dataclass
class SparseResult:
    coloring: Coloring
    r: int
    attempts: int
    regular_n: int

    def to_json(self) -> dict:
        return {"r": self.r, "attempts": self.attempts, "regularized_n": self.regular_n}


def sparse_color(g: Graph, cfg: SparseConfig) -> Coloring:
    return sparse_color_audited(g, cfg).coloring


def sparse_color_audited(g: Graph, cfg: SparseConfig) -> SparseResult:
    """Retry the naive procedure until every vertex keeps ``r`` repeated colors,
    then complete; ``r = ceil(B / (e^6 delta))``."""
    delta = g.max_degree
    cap = delta * (delta - 1) // 2 - cfg.B
    for v in range(g.n):
        if neighborhood_edge_count(g, v) > cap:
            raise PreconditionError(f"N({v}) has more than C(delta,2) - B edges")
    r = repeats_needed(cfg.B, delta)
    if r == 0:
        c = complete_from_partial(g, {}, 0, palette=delta // 2)
        return SparseResult(c, 0, 0, g.n)
    report = {"r": r, "seed": cfg.seed, "delta": delta}
    if delta < 2:
        raise SparseFailure("naive coloring needs delta >= 2", report)
    try:
        reg, inj = regularize(g, cfg.max_regular_vertices)
    except CapacityError as exc:
        report["reason"] = str(exc)
        raise SparseFailure(f"regularization too large: {exc}", report) from None
    lay = _Layout(reg)
    C = cfg.palette(delta)
    # X_v counts colors held by two neighbours each, so it never exceeds
    # min(C, delta // 2), and it is 0 at a vertex whose neighbourhood is a clique
    has_pair = np.zeros(reg.n, dtype=bool)
    has_pair[lay.pv] = True
    starved = np.flatnonzero(~has_pair).tolist()
    if r > min(C, delta // 2) or starved:
        report.update(attempts=0, regularized_n=reg.n, reason="unattainable")
        if starved:
            report.update(witness_vertex=starved[0] + 1, witness_in_input=starved[0] < g.n)
        raise SparseFailure(f"no trial can give every vertex {r} repeated colors", report)
    best = None
    for attempt in range(cfg.max_attempts):
        rec = naive_color_trial(reg, cfg, attempt, lay)
        low = int(rec.X.min())
        if best is None or low > best[0]:
            best = (low, attempt, int(rec.X.argmin()), float(rec.X.mean()))
        if low >= r:
            full = complete_from_partial(reg, rec.retained_coloring(), r, palette=C)
            c = {v: full[inj[v]] for v in range(g.n)}
            if not verify_coloring(g, c, max(delta + 1 - r, C)):
                raise ContractViolation("pulled-back sparse coloring invalid", delta=delta, r=r)
            return SparseResult(c, r, attempt + 1, reg.n)
    low, attempt, witness, mean_x = best
    report.update(
        attempts=cfg.max_attempts,
        regularized_n=reg.n,
        best_trial=attempt,
        best_min_X=low,
        best_mean_X=mean_x,
        witness_vertex=witness + 1,
        witness_in_input=witness < g.n,
    )
    raise SparseFailure(f"no trial in {cfg.max_attempts} gave every vertex {r} repeated colors", report)
