"""Regenerate the bundled DIMACS benchmark graphs in ``src/chibound/data``.

myciel3..5 are iterated Mycielskians of C_5; queen5_5 and queen6_6 are queen
graphs. Sizes match the published DIMACS instances (edges counted once).
"""

from __future__ import annotations

from pathlib import Path

from chibound.generators import mycielski, queen_graph
from chibound.graph import Graph, write_dimacs

SIZES = {"myciel3": (11, 20), "myciel4": (23, 71), "myciel5": (47, 236), "queen5_5": (25, 160), "queen6_6": (36, 290)}


def main(out: Path) -> None:
    g = Graph.cycle(5)
    graphs = {}
    for k in (3, 4, 5):
        g = mycielski(g)
        graphs[f"myciel{k}"] = g
    graphs["queen5_5"] = queen_graph(5, 5)
    graphs["queen6_6"] = queen_graph(6, 6)
    for name, g in graphs.items():
        if (g.n, g.m) != SIZES[name]:
            raise SystemExit(f"{name}: got {(g.n, g.m)}, expected {SIZES[name]}")
        (out / f"{name}.col").write_text(write_dimacs(g, comment=name))
        print(name, g.n, g.m)


if __name__ == "__main__":
    main(Path(__file__).parents[1] / "src/chibound/data")
