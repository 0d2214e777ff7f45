"""The recursive coloring algorithm and its report.

``bound_chi`` colors a graph by the first applicable rule:

(a) ``delta <= delta0``: Brooks coloring of each component;
(b) ``omega > 2/3(delta+1)``: take a stable set hitting every maximum clique,
    grow it to a maximal one, color the rest recursively and add it as a class;
(c) some ``N(v)`` has more than ``(1-rho) C(delta, 2)`` edges: color ``g - v``
    recursively and extend across ``N[v]``;
(d) otherwise run the naive random coloring, falling back to a deterministic
    Brooks coloring per component when the retry budget runs out.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any

from .cliques import (
    DEFAULT_CLIQUE_LIMIT,
    DEFAULT_MAX_CLIQUES,
    check_hajnal,
    check_kostochka,
    clique_components,
    clique_number,
    greedy_clique_lower_bound,
    kostochka_applies,
    maximum_cliques,
)
from .coloring import (
    DEFAULT_CHI_LIMIT,
    Coloring,
    brooks_coloring_components,
    chromatic_number_exact,
    coloring_to_json,
    colors_used,
    verify_coloring,
)
from .dense import ALPHA_CEILING, as_fraction, dense_condition, epsilon_admissible, extend_dense_audited
from .errors import CapacityError, ContractViolation, PreconditionError, SparseFailure
from .graph import Graph
from .sparse import E6, SparseConfig, sparse_color_audited
from .transversal import extend_to_maximal, hitting_stable_set

SEED_ENV = "CHIBOUND_SEED"
DEFAULT_DELTA0 = 3
DEFAULT_RHO = Fraction(1, 160)


def default_seed() -> int:
    """Seed from ``$CHIBOUND_SEED`` when set, else 0."""
    raw = os.environ.get(SEED_ENV, "").strip()
    if not raw:
        return 0
    try:
        seed = int(raw, 0)
    except ValueError:
        raise PreconditionError(f"${SEED_ENV}={raw!r} is not an integer") from None
    if seed < 0:
        raise PreconditionError(f"${SEED_ENV} must be non-negative")
    return seed


def default_epsilon(delta0: int) -> Fraction:
    return min(Fraction(1, delta0), 1 / (320 * E6))


@dataclass(frozen=True)
class PipelineConfig:
    delta0: int = DEFAULT_DELTA0
    epsilon: Fraction | None = None  # None: min(1/delta0, 1/(320 e^6))
    rho: Fraction = DEFAULT_RHO
    alpha: Fraction | None = None  # None: same as rho
    seed: int = 0
    sparse_attempts: int = 20
    max_regular_vertices: int = 1024
    clique_limit: int = DEFAULT_CLIQUE_LIMIT
    max_cliques: int = DEFAULT_MAX_CLIQUES
    chi_limit: int = DEFAULT_CHI_LIMIT

    def __post_init__(self):
        if self.delta0 < 1:
            raise PreconditionError("delta0 must be at least 1")
        eps = default_epsilon(self.delta0) if self.epsilon is None else as_fraction(self.epsilon)
        rho = as_fraction(self.rho)
        alpha = rho if self.alpha is None else as_fraction(self.alpha)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "alpha", alpha)
        if not 0 < eps < 1:
            raise PreconditionError(f"epsilon={eps} must lie in (0, 1)")
        if not 0 < rho <= alpha < ALPHA_CEILING:
            raise PreconditionError(f"need 0 < rho <= alpha < 1/144, got rho={rho}, alpha={alpha}")
        # the dense extension runs with epsilon = rho
        if not epsilon_admissible(rho, alpha):
            raise PreconditionError(f"rho={rho} is not an admissible epsilon for alpha={alpha}")
        if self.seed < 0:
            raise PreconditionError("seed must be non-negative")

    @classmethod
    def from_env(cls, **overrides) -> PipelineConfig:
        overrides.setdefault("seed", default_seed())
        return cls(**overrides)

    def sparse_config(self, delta: int) -> SparseConfig:
        return SparseConfig(
            B=self.rho * (delta * (delta - 1) // 2),
            seed=self.seed,
            max_attempts=self.sparse_attempts,
            max_regular_vertices=self.max_regular_vertices,
        )

    def to_json(self) -> dict:
        return {
            "delta0": self.delta0,
            "epsilon": str(self.epsilon),
            "rho": str(self.rho),
            "alpha": str(self.alpha),
            "seed": self.seed,
            "sparse_attempts": self.sparse_attempts,
            "max_regular_vertices": self.max_regular_vertices,
            "clique_limit": self.clique_limit,
            "max_cliques": self.max_cliques,
            "chi_limit": self.chi_limit,
            "e6": str(E6),
        }


def target_bound(delta: int, omega: int, epsilon) -> int:
    """``ceil((1 - eps)(delta + 1) + eps * omega)``, exactly."""
    eps = as_fraction(epsilon)
    return math.ceil((1 - eps) * (delta + 1) + eps * omega)


def midpoint_bound(delta: int, omega: int) -> int:
    """``ceil((delta + 1 + omega) / 2)``; tabulated only."""
    return -(-(delta + 1 + omega) // 2)


@dataclass
class ColoringReport:
    n: int
    m: int
    delta: int
    omega: int
    omega_exact: bool
    chi: int | None
    bound: int
    coloring: Coloring
    trace: list[dict]
    certificates: dict[str, Any]
    config: PipelineConfig
    elapsed_ms: float = 0.0

    @property
    def colors_used(self) -> int:
        return colors_used(self.coloring)

    @property
    def passes(self) -> bool:
        return self.colors_used <= self.bound

    @property
    def midpoint(self) -> int:
        return midpoint_bound(self.delta, self.omega)

    def to_json(self, include_coloring: bool = True) -> dict:
        out = {
            "input": {
                "n": self.n,
                "m": self.m,
                "delta": self.delta,
                "omega": self.omega,
                "omega_exact": self.omega_exact,
                "chi": self.chi,
            },
            "bound": self.bound,
            "colors_used": self.colors_used,
            "passes": self.passes,
            "midpoint": {"bound": self.midpoint, "met": self.colors_used <= self.midpoint},
            "branch_trace": self.trace,
            "certificates": self.certificates,
            "seed": self.config.seed,
            "config": self.config.to_json(),
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if include_coloring:
            out["coloring"] = coloring_to_json(self.coloring)
        return out


# -- recursion --------------------------------------------------------------------


def _omega(g: Graph, cfg: PipelineConfig) -> tuple[int, bool]:
    try:
        return clique_number(g, cfg.clique_limit), True
    except CapacityError:
        return greedy_clique_lower_bound(g), False


def _brooks(g: Graph, trace: list[dict], label: str, **info) -> Coloring:
    c = brooks_coloring_components(g)
    trace.append({"branch": label, "n": g.n, "delta": g.max_degree, "colors": colors_used(c), **info})
    return c


def _color(g: Graph, cfg: PipelineConfig, trace: list[dict]) -> Coloring:
    if g.n == 0:
        return {}
    delta = g.max_degree
    if delta <= cfg.delta0:
        return _brooks(g, trace, "brooks")

    omega, exact = _omega(g, cfg)
    if kostochka_applies(omega, delta):
        hit = None
        try:
            hit = hitting_stable_set(g)
        except CapacityError:
            pass
        if hit is not None:
            s = extend_to_maximal(g, hit.vertices)
            rest, keep = g.remove(s)
            entry = {
                "branch": "peel-stable-set",
                "stable_set": sorted(g.labels[u] + 1 for u in s),
                "n": g.n,
                "delta": delta,
                "omega": omega,
                "omega_exact": exact,
                "stable_set_size": len(s),
                "hitting_set_size": len(hit.vertices),
                "rest_delta": rest.max_degree,
            }
            trace.append(entry)
            sub = _color(rest, cfg, trace)
            c = {keep[i]: col for i, col in sub.items()}
            new = max(c.values(), default=0) + 1
            for v in s:
                c[v] = new
            return c

    dense = [v for v in range(g.n) if dense_condition(g, v, cfg.rho, delta)]
    if dense:
        v = dense[0]
        rest, keep = g.remove([v])
        entry: dict = {"branch": "dense-extend", "n": g.n, "delta": delta, "omega": omega, "v": g.labels[v] + 1}
        trace.append(entry)
        sub = _color(rest, cfg, trace)
        base = {keep[i]: col for i, col in sub.items()}
        ext = extend_dense_audited(g, v, cfg.alpha, cfg.rho, base, omega if exact else None)
        part = ext.partition.to_json()
        part["D1"] = [g.labels[u] + 1 for u in part["D1"]]
        part["D2"] = [g.labels[u] + 1 for u in part["D2"]]
        entry.update(
            k=ext.k,
            k_prime=ext.k_prime,
            recursive_colors=max(base.values(), default=0),
            cap=max(max(base.values(), default=0), math.ceil((1 - cfg.rho) * (delta + 1))),
            partition=part,
            checks=ext.checks,
        )
        return ext.coloring

    scfg = cfg.sparse_config(delta)
    try:
        res = sparse_color_audited(g, scfg)
    except SparseFailure as exc:
        return _brooks(g, trace, "greedy-fallback", omega=omega, sparse_failure=str(exc), sparse_report=exc.report)
    trace.append({"branch": "sparse", "n": g.n, "delta": delta, "omega": omega, **res.to_json()})
    return res.coloring


# -- certificates -----------------------------------------------------------------


def _certificates(g: Graph, cfg: PipelineConfig) -> dict[str, Any]:
    try:
        fam = maximum_cliques(g, cfg.clique_limit, cfg.max_cliques)
    except CapacityError as exc:
        return {"hajnal": [], "kostochka": None, "skipped": str(exc)}
    if not len(fam):
        return {"hajnal": [], "kostochka": None}
    hajnal = [check_hajnal(g, comp.members, fam.omega).to_json() for comp in clique_components(fam)]
    return {"hajnal": hajnal, "kostochka": check_kostochka(g, fam).to_json()}


def bound_chi(g: Graph, cfg: PipelineConfig | None = None) -> ColoringReport:
    """Color ``g`` recursively and report against ``ceil((1-eps)(delta+1) + eps*omega)``."""
    if g.n == 0:
        raise PreconditionError("bound_chi needs a nonempty graph")
    cfg = cfg or PipelineConfig()
    start = time.perf_counter()
    omega, exact = _omega(g, cfg)
    trace: list[dict] = []
    c = _color(g, cfg, trace)
    delta = g.max_degree
    if not verify_coloring(g, c, delta + 1):
        raise ContractViolation("pipeline coloring improper or above delta+1", delta=delta)
    chi = None
    try:
        chi = chromatic_number_exact(g, cfg.chi_limit)[0]
    except CapacityError:
        pass
    report = ColoringReport(
        n=g.n,
        m=g.m,
        delta=delta,
        omega=omega,
        omega_exact=exact,
        chi=chi,
        bound=target_bound(delta, omega, cfg.epsilon),
        coloring=c,
        trace=trace,
        certificates=_certificates(g, cfg),
        config=cfg,
    )
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def with_seed(cfg: PipelineConfig, seed: int) -> PipelineConfig:
    return replace(cfg, seed=seed)
