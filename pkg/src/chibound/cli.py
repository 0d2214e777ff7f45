"""Command-line entry point: ``chibound <command> ...``.

Vertex ids on the command line and in every output are 1-indexed, as in
DIMACS. Exit status: 0 success, 1 a checked inequality or coloring failed,
2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cliques import check_hajnal, check_kostochka, clique_components, maximum_cliques
from .coloring import colors_used, parse_coloring, verify_coloring
from .errors import CapacityError, ChiboundError, ContractViolation, ParseError
from .generators import planted_dense_instance, random_graph
from .graph import Graph, parse_dimacs, write_dimacs
from .pipeline import PipelineConfig, bound_chi, default_seed
from .sparse import SparseConfig, monte_carlo_stats, regularize
from .transversal import PartitionedGraph, extend_to_maximal, find_isr, hitting_stable_set

EXIT_OK, EXIT_CONTRACT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _read_text(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _read_graph(path: str) -> Graph:
    return parse_dimacs(_read_text(path))


def _one(vs) -> list[int]:
    return sorted(v + 1 for v in vs)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj, out: str | None = None) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=False) + "\n", out)


def _csv_text(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _pipeline_config(args) -> PipelineConfig:
    kw = {"seed": args.seed if args.seed is not None else default_seed()}
    for name in ("delta0", "epsilon", "rho", "alpha"):
        val = getattr(args, name, None)
        if val is not None:
            kw[name] = val
    return PipelineConfig(**kw)


def _summary_row(name: str, rep) -> dict:
    return {
        "graph": name,
        "n": rep.n,
        "m": rep.m,
        "delta": rep.delta,
        "omega": rep.omega,
        "omega_exact": rep.omega_exact,
        "chi": "" if rep.chi is None else rep.chi,
        "bound": rep.bound,
        "colors_used": rep.colors_used,
        "passes": rep.passes,
        "midpoint_bound": rep.midpoint,
        "branches": "|".join(e["branch"] for e in rep.trace),
        "seed": rep.config.seed,
        "elapsed_ms": round(rep.elapsed_ms, 3),
    }


# -- commands ----------------------------------------------------------------------


def cmd_color(args) -> int:
    g = _read_graph(args.file)
    rep = bound_chi(g, _pipeline_config(args))
    if args.csv:
        _emit(_csv_text([_summary_row(args.file, rep)]), args.out)
    else:
        _dump(rep.to_json(include_coloring=not args.no_coloring), args.out)
    return EXIT_OK if rep.passes else EXIT_CONTRACT


def cmd_analyze(args) -> int:
    g = _read_graph(args.file)
    fam = maximum_cliques(g)
    comps = clique_components(fam) if len(fam) else []
    out = {
        "n": g.n,
        "delta": g.max_degree,
        "omega": fam.omega,
        "maximum_cliques": len(fam),
        "components": [],
        "kostochka": check_kostochka(g, fam).to_json(),
    }
    ok = True
    for comp in comps:
        cert = check_hajnal(g, comp.members, fam.omega)
        ok &= cert.passed
        out["components"].append(
            {
                "cliques": [_one(c) for c in comp.members],
                "union": _one(comp.union),
                "intersection": _one(comp.intersection),
                "hajnal": cert.to_json(),
            }
        )
    ok &= check_kostochka(g, fam).passed
    if args.csv:
        rows = [
            {
                "component": i + 1,
                "cliques": len(c["cliques"]),
                "union": len(c["union"]),
                "intersection": len(c["intersection"]),
                "hajnal_pass": c["hajnal"]["pass"],
            }
            for i, c in enumerate(out["components"])
        ]
        _emit(_csv_text(rows), args.out)
    else:
        _dump(out, args.out)
    return EXIT_OK if ok else EXIT_CONTRACT


def cmd_hit(args) -> int:
    g = _read_graph(args.file)
    hit = hitting_stable_set(g)
    if hit is None:
        _dump({"applicable": False, "omega": maximum_cliques(g).omega, "delta": g.max_degree}, args.out)
        return EXIT_OK
    fam = maximum_cliques(g)
    hits_all = all(c & hit.vertices for c in fam)
    maximal = extend_to_maximal(g, hit.vertices)
    out = {
        "applicable": True,
        "omega": hit.omega,
        "delta": hit.delta,
        "k": str(hit.k),
        "stable_set": _one(hit.vertices),
        "maximal_extension": _one(maximal),
        "hits_every_maximum_clique": hits_all,
        "lopsided_condition": hit.lopsided,
        "cores": [_one(c.intersection) for c in hit.components],
    }
    _dump(out, args.out)
    return EXIT_OK if hits_all and g.is_stable(hit.vertices) else EXIT_CONTRACT


def _parse_classes(spec: str, n: int) -> list[list[int]]:
    classes = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            cls = [int(x) - 1 for x in part.split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"bad class list {part!r}; expected comma-separated vertex ids") from None
        if any(not 0 <= v < n for v in cls):
            raise UsageError(f"class {part!r} names a vertex outside 1..{n}")
        classes.append(cls)
    return classes


def cmd_isr(args) -> int:
    g = _read_graph(args.file)
    pg = PartitionedGraph.build(g, _parse_classes(args.classes, g.n), mode=args.mode)
    required = None if args.required is None else args.required - 1
    if required is not None and not 0 <= required < g.n:
        raise UsageError(f"--required {args.required} outside 1..{g.n}")
    res = find_isr(pg, required)
    out = {"kind": res.kind, "mode": pg.mode, "classes": [_one(c) for c in pg.classes]}
    if res.stable_set is not None:
        out["stable_set"] = _one(res.stable_set)
    if res.witness is not None:
        w = res.witness
        out["witness"] = {"J": sorted(j + 1 for j in w.J), "X": _one(w.X), "Y": _one(w.Y), "x1": w.x1 + 1}
    _dump(out, args.out)
    return EXIT_OK


def cmd_sparse_sim(args) -> int:
    g = _read_graph(args.file)
    regularized = not g.is_regular()
    h = regularize(g, args.max_vertices)[0] if regularized else g
    seed = args.seed if args.seed is not None else default_seed()
    cfg = SparseConfig(B=args.B, trials=args.trials, seed=seed, C=args.C)
    stats = monte_carlo_stats(h, cfg)
    if args.csv:
        _emit(_csv_text(stats.csv_rows()), args.csv)
    summary = stats.to_json()
    summary["regularized"] = regularized
    if args.plot:
        from .plotting import plot_sparse

        summary["figure"] = str(plot_sparse(stats, args.plot))
    _dump(summary, args.out)
    return EXIT_OK if all(stats.checks.values()) else EXIT_CONTRACT


def cmd_gen(args) -> int:
    if args.kind == "gnp":
        g = random_graph(args.n, args.p, args.seed)
        text = write_dimacs(g, comment=f"gnp n={args.n} p={args.p} seed={args.seed}")
    elif args.kind == "dense":
        g, v = planted_dense_instance(args.delta, args.alpha, args.seed)
        text = write_dimacs(g, comment=f"dense delta={args.delta} alpha={args.alpha} seed={args.seed} center={v + 1}")
    else:
        src = _read_graph(args.file)
        g, _ = regularize(src, args.max_vertices)
        text = write_dimacs(g, comment=f"regularized from {args.file}; vertices 1..{src.n} are the input")
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    c = parse_coloring(_read_text(args.coloring))
    ok = verify_coloring(g, c)
    msg = {"proper": ok, "colors_used": colors_used(c) if ok else None, "n": g.n}
    if not ok:
        missing = [v + 1 for v in range(g.n) if v not in c]
        clash = next(((u + 1, v + 1) for u, v in sorted(g.edges) if c.get(u) is not None and c.get(u) == c.get(v)), None)
        msg.update(uncolored=missing[:10], conflict=clash)
    _dump(msg)
    return EXIT_OK if ok else EXIT_CONTRACT


def cmd_batch(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    cfg = _pipeline_config(args)
    rows = []
    ok = True
    for path in args.files:
        rep = bound_chi(_read_graph(path), cfg)
        ok &= rep.passes
        rows.append(_summary_row(path, rep))
    (out_dir / "summary.csv").write_text(_csv_text(rows))
    from .plotting import plot_batch

    fig = plot_batch(rows, out_dir / "summary.png")
    _dump({"graphs": len(rows), "all_pass": ok, "csv": str(out_dir / "summary.csv"), "figure": str(fig)})
    return EXIT_OK if ok else EXIT_CONTRACT


# -- parser ------------------------------------------------------------------------


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, help="root seed (default: $CHIBOUND_SEED or 0)")
    p.add_argument("--delta0", type=int, help="degree at or below which Brooks coloring is used (default 3)")
    p.add_argument("--epsilon", type=_fraction, help="epsilon in the target bound (default min(1/delta0, 1/(320 e^6)))")
    p.add_argument("--rho", type=_fraction, help="dense-neighbourhood threshold (default 1/160)")
    p.add_argument("--alpha", type=_fraction, help="density deficit for the dense partition (default rho)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chibound", description="Coloring with certified bounds on DIMACS graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", help="color a graph and report against the target bound")
    p.add_argument("file")
    _add_pipeline_flags(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--csv", action="store_true", help="one-line CSV summary")
    p.add_argument("--no-coloring", action="store_true", help="omit the coloring from the JSON report")
    p.add_argument("--out", help="write here instead of stdout")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("analyze", help="maximum cliques, clique-graph components and their certificates")
    p.add_argument("file")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("hit", help="a stable set meeting every maximum clique")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hit)

    p = sub.add_parser("isr", help="independent system of representatives")
    p.add_argument("file")
    p.add_argument("--classes", required=True, help='classes as "1,3;2,4" (1-indexed)')
    p.add_argument("--mode", choices=("stable", "clique"), default="stable")
    p.add_argument("--required", type=int, help="vertex the transversal must contain")
    p.add_argument("--out")
    p.set_defaults(func=cmd_isr)

    p = sub.add_parser("sparse-sim", help="Monte Carlo statistics of the naive random coloring")
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--B", type=_fraction, required=True, help="edge-deficit parameter")
    p.add_argument("--C", type=int, help="palette size (default delta // 2)")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-vertices", type=int, default=4096, help="cap for regularizing a non-regular input")
    p.add_argument("--csv", metavar="PATH", help="per-vertex statistics as CSV")
    p.add_argument("--plot", metavar="PATH", help="figure of per-vertex means and bounds")
    p.add_argument("--json", action="store_true", help="JSON summary (default)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sparse_sim)

    p = sub.add_parser("gen", help="generate graphs as DIMACS")
    gsub = p.add_subparsers(dest="kind", required=True)
    q = gsub.add_parser("gnp")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=float, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out")
    q = gsub.add_parser("dense")
    q.add_argument("--delta", type=int, required=True)
    q.add_argument("--alpha", type=_fraction, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out")
    q = gsub.add_parser("regularize")
    q.add_argument("file")
    q.add_argument("--max-vertices", type=int, default=4096)
    q.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a coloring (JSON or 'v color' lines) against a graph")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="color many graphs; write summary.csv and summary.png")
    p.add_argument("files", nargs="+")
    p.add_argument("--out-dir", required=True)
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_batch)
    return ap


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except ContractViolation as exc:
        print(f"chibound: contract failure: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (UsageError, ParseError, CapacityError, ChiboundError, ValueError) as exc:
        print(f"chibound: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    try:
        code = run_cli()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); not an error
        sys.stderr.close()
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
