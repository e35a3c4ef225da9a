"""``tricount`` command line: count, bench, gen-rmat, info.

Exit codes: 0 success, 1 I/O or unreadable graph, 2 usage or config error,
3 algorithms disagreed on a count.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algorithms import REGISTRY
from .bench import (
    FORMATS,
    ROOT_ORDERS,
    BenchConfig,
    emit_table,
    load_bench_config,
    parse_algorithms,
    run_bench,
)
from .bfs import bfs_forest, classify_edges, horizontal_fraction
from .errors import CountMismatchError, InvalidGraphError, ParseError, UnknownAlgorithmError
from .graph import (
    RmatParams,
    build_csr,
    degree_order,
    graph_stats,
    load_graph,
    rmat_generate,
    sniff_format,
    write_csr_binary,
    write_snap_edge_list,
)

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _registry_listing() -> str:
    return "\n".join(f"  {key:7s} {algo.label}" for key, algo in REGISTRY.items())


def _read(path: str, fmt: str | None):
    try:
        return load_graph(path, fmt)
    except ValueError as exc:
        if isinstance(exc, (ParseError, InvalidGraphError)):
            raise
        raise UsageError(str(exc)) from None


def cmd_count(args) -> int:
    if args.algo not in REGISTRY:
        print(f"unknown algorithm {args.algo!r}; available:\n{_registry_listing()}", file=sys.stderr)
        return EXIT_USAGE
    g = _read(args.graph, args.input_format)
    if args.reorder:
        g = degree_order(g)[0]
    print(REGISTRY[args.algo](g))
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.config:
        cfg = load_bench_config(args.config)
    else:
        if not args.graphs:
            raise UsageError("bench needs --graphs or --config")
        cfg = BenchConfig(
            graphs=[(_graph_name(src), src) for src in args.graphs],
            algorithms=parse_algorithms(args.algos),
            runs=args.runs,
            output_format=args.format,
            root_order=args.root_order,
        )
    unknown = [k for k in cfg.algorithms if k not in REGISTRY]
    if unknown:
        print(f"unknown algorithm(s) {', '.join(unknown)}; available:\n{_registry_listing()}",
              file=sys.stderr)
        return EXIT_USAGE
    text = emit_table(run_bench(cfg), cfg.output_format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _graph_name(source: str) -> str:
    if ":" in source or source == "karate":
        return source
    return Path(source).stem


def cmd_gen_rmat(args) -> int:
    try:
        a, b, c, d = (float(x) for x in args.params.split(","))
        params = RmatParams(args.scale, args.edge_factor, a, b, c, d, args.seed)
    except ValueError as exc:
        raise UsageError(f"invalid RMAT parameters: {exc}") from None
    el = rmat_generate(params)
    fmt = args.output_format or sniff_format(args.out)
    if fmt == "bin":
        with open(args.out, "wb") as f:
            write_csr_binary(build_csr(el), f)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            write_snap_edge_list(el, f)
    print(f"wrote {len(el)} generated pairs over {el.n_hint} vertices to {args.out}",
          file=sys.stderr)
    return EXIT_OK


def cmd_info(args) -> int:
    g = _read(args.graph, args.input_format)
    stats = graph_stats(g)
    k = horizontal_fraction(classify_edges(g, bfs_forest(g)))
    print(f"n={stats.n} m={stats.m} d_max={stats.d_max} k={k:.1f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tricount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="print the triangle count of a graph")
    p.add_argument("graph")
    p.add_argument("--algo", default="Bader", help="registry key (default: Bader)")
    p.add_argument("--reorder", action="store_true", help="degree-order the graph first")
    p.add_argument("--input-format", choices=("txt", "bin"))
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bench", help="time algorithms over graphs")
    p.add_argument("--graphs", nargs="+", metavar="SOURCE",
                   help="graph files or generator specs such as rmat:scale=8,seed=1")
    p.add_argument("--algos", default="all", help="comma-separated keys or 'all'")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--root-order", choices=ROOT_ORDERS, default="id",
                   help="BFS root policy used for the k column")
    p.add_argument("--config", help="key-value config file; overrides the other flags")
    p.add_argument("--out", help="write the table here instead of stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen-rmat", help="write an RMAT graph")
    p.add_argument("--scale", type=int, required=True)
    p.add_argument("--edge-factor", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--params", default="0.57,0.19,0.19,0.05", help="a,b,c,d")
    p.add_argument("--out", required=True, help=".bin writes a TCSR cache, otherwise raw pairs")
    p.add_argument("--output-format", choices=("txt", "bin"))
    p.set_defaults(func=cmd_gen_rmat)

    p = sub.add_parser("info", help="print n, m, d_max and the horizontal-edge percentage")
    p.add_argument("graph")
    p.add_argument("--input-format", choices=("txt", "bin"))
    p.set_defaults(func=cmd_info)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tricount: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ParseError, InvalidGraphError) as exc:
        print(f"tricount: {exc}", file=sys.stderr)
        return EXIT_IO
    except CountMismatchError as exc:
        print(f"tricount: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (UnknownAlgorithmError, ValueError) as exc:
        print(f"tricount: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
