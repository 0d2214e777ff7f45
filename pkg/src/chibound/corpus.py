"""The shared test corpus: every small graph up to isomorphism plus seeded random graphs."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Iterator

from .generators import random_graph
from .graph import Graph, parse_dimacs

CATALOG_FILE = "graphs_upto8.txt"
RANDOM_COUNT = 1000
RANDOM_PROBS = (0.2, 0.5, 0.8)
RANDOM_MAX_N = 16


def decode(line: str) -> Graph:
    """Inverse of the catalog's ``n hexmask`` encoding."""
    n_str, mask_str = line.split()
    n, mask = int(n_str), int(mask_str, 16)
    pairs = combinations(range(n), 2)
    return Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


@lru_cache(maxsize=None)
def catalog(max_n: int = 8) -> tuple[Graph, ...]:
    """All graphs on ``1..max_n`` vertices (``max_n <= 8``), one per isomorphism class."""
    if max_n > 8:
        raise ValueError("the shipped catalog stops at 8 vertices")
    text = resources.files("chibound.data").joinpath(CATALOG_FILE).read_text()
    out = []
    for line in text.splitlines():
        if line.strip() and int(line.split()[0]) <= max_n:
            out.append(decode(line))
    return tuple(out)


def random_corpus(count: int = RANDOM_COUNT, seed: int = 2024) -> Iterator[tuple[str, Graph]]:
    """``count`` graphs G(n, p) with n cycling through 1..16 and p through 0.2/0.5/0.8."""
    for i in range(count):
        n = 1 + i % RANDOM_MAX_N
        p = RANDOM_PROBS[i % len(RANDOM_PROBS)]
        s = seed * 100_003 + i
        yield f"gnp-{n}-{p}-{s}", random_graph(n, p, s)


def full_corpus() -> Iterator[tuple[str, Graph]]:
    for i, g in enumerate(catalog()):
        yield f"cat-{g.n}-{i}", g
    yield from random_corpus()


BENCHMARKS = ("myciel3", "myciel4", "myciel5", "queen5_5", "queen6_6")


def benchmark(name: str) -> Graph:
    """One of the bundled DIMACS benchmark graphs."""
    text = resources.files("chibound.data").joinpath(f"{name}.col").read_text()
    return parse_dimacs(text)
