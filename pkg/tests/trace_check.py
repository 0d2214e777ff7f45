"""Replays a pipeline branch trace on the input graph and checks every guard."""

from __future__ import annotations

from fractions import Fraction

from chibound.cliques import clique_number, maximum_cliques
from chibound.graph import Graph

TERMINAL = {"brooks", "greedy-fallback", "sparse"}


def _dense_vertices(h: Graph, rho: Fraction) -> list[int]:
    d = h.max_degree
    need = (1 - rho) * Fraction(d * (d - 1), 2)
    out = []
    for v in range(h.n):
        nb = sorted(h.adj[v])
        inside = sum(1 for i, a in enumerate(nb) for b in nb[i + 1 :] if b in h.adj[a])
        if inside > need:
            out.append(v)
    return out


def trace_problems(g: Graph, report) -> list[str]:
    """Empty when the trace is a valid run of the branch rules on ``g``."""
    cfg = report.config
    problems: list[str] = []
    h, ids = g, list(range(g.n))
    trace = report.trace
    if not trace:
        return ["empty trace"]
    for i, step in enumerate(trace):
        b = step["branch"]
        if step["n"] != h.n:
            problems.append(f"step {i}: n={step['n']} but replay has {h.n}")
            return problems
        d = h.max_degree
        if (b == "brooks") != (d <= cfg.delta0):
            problems.append(f"step {i}: {b} with delta={d}, delta0={cfg.delta0}")
        if b in TERMINAL:
            if i != len(trace) - 1:
                problems.append(f"step {i}: terminal branch {b} is not last")
            if b != "brooks":
                om = clique_number(h)
                if 3 * om > 2 * (d + 1):
                    problems.append(f"step {i}: {b} while omega={om} > 2/3(delta+1)")
                if _dense_vertices(h, cfg.rho):
                    problems.append(f"step {i}: {b} while a dense vertex exists")
            continue
        if b == "peel-stable-set":
            om = clique_number(h)
            if not 3 * om > 2 * (d + 1):
                problems.append(f"step {i}: peel with omega={om}, delta={d}")
            local = {v: j for j, v in enumerate(ids)}
            s = {local[x - 1] for x in step["stable_set"]}
            if not h.is_stable(s):
                problems.append(f"step {i}: peeled set not stable")
            if any(not (c & s) for c in maximum_cliques(h)):
                problems.append(f"step {i}: peeled set misses a maximum clique")
            if any(v not in s and not (h.adj[v] & s) for v in range(h.n)):
                problems.append(f"step {i}: peeled set not maximal")
            keep = [v for v in range(h.n) if v not in s]
            nxt = h.induced(keep)
            if nxt.n and not (clique_number(nxt) < om and nxt.max_degree < d):
                problems.append(f"step {i}: omega or delta did not drop")
            h, ids = nxt, [ids[v] for v in keep]
        elif b == "dense-extend":
            om = clique_number(h)
            if 3 * om > 2 * (d + 1):
                problems.append(f"step {i}: dense-extend while the peel guard holds")
            local = {v: j for j, v in enumerate(ids)}
            v = local[step["v"] - 1]
            if v not in _dense_vertices(h, cfg.rho):
                problems.append(f"step {i}: vertex {step['v']} is not dense")
            if step["k_prime"] > step["cap"]:
                problems.append(f"step {i}: k'={step['k_prime']} above cap {step['cap']}")
            keep = [u for u in range(h.n) if u != v]
            h, ids = h.induced(keep), [ids[u] for u in keep]
        else:
            problems.append(f"step {i}: unknown branch {b}")
    if trace[-1]["branch"] not in TERMINAL and h.n:
        problems.append("trace ends before the graph is exhausted")
    return problems
