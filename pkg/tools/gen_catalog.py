"""Regenerate ``src/chibound/data/graphs_upto8.txt``.

Every graph on n <= 8 vertices up to isomorphism, grown one vertex at a time
from the previous order and deduplicated by canonical certificate. Needs
``pynauty`` (a build-time tool only; the package reads the text file).

Line format: ``n hexmask`` where bit ``k`` of the mask is the k-th pair of the
upper triangle in lexicographic order (0,1), (0,2), ..., (n-2, n-1).
"""

from __future__ import annotations

import sys
from itertools import combinations
from pathlib import Path

import pynauty

EXPECTED = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}


def certificate(n: int, edges: list[tuple[int, int]]) -> bytes:
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return pynauty.certificate(pynauty.Graph(n, adjacency_dict=adj))


def grow(prev: list[list[tuple[int, int]]], n: int) -> list[list[tuple[int, int]]]:
    seen: dict[bytes, list[tuple[int, int]]] = {}
    new = n - 1
    for edges in prev:
        for mask in range(1 << (n - 1)):
            ext = edges + [(u, new) for u in range(n - 1) if mask >> u & 1]
            cert = certificate(n, ext)
            if cert not in seen:
                seen[cert] = sorted(ext)
    return list(seen.values())


def encode(n: int, edges: list[tuple[int, int]]) -> str:
    index = {p: i for i, p in enumerate(combinations(range(n), 2))}
    mask = 0
    for e in edges:
        mask |= 1 << index[e]
    return f"{n} {mask:x}"


def main(out: Path) -> None:
    level = [[]]
    lines = [encode(1, [])]
    for n in range(2, 9):
        level = grow(level, n)
        if len(level) != EXPECTED[n]:
            raise SystemExit(f"n={n}: got {len(level)} graphs, expected {EXPECTED[n]}")
        lines.extend(sorted(encode(n, e) for e in level))
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {out}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parents[1] / "src/chibound/data/graphs_upto8.txt")
