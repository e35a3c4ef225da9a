"""Benchmark protocol: one CSR build per graph, every algorithm timed end to end.

Each algorithm call receives only the graph, so any reordering, BFS or
scratch allocation it performs is inside the timed region.  Counts must
agree across algorithms and runs or the whole benchmark fails.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .algorithms import REGISTRY, Algorithm, get_algorithm, warm_up
from .bfs import bfs_forest, classify_edges, horizontal_fraction
from .errors import CountMismatchError
from .graph import (
    CsrGraph,
    RmatParams,
    build_csr,
    grid_generate,
    karate_path,
    load_graph,
    rmat_generate,
)

FORMATS = ("csv", "markdown", "json")
ROOT_ORDERS = ("id", "degree")

GraphSource = str | CsrGraph


@dataclass
class BenchConfig:
    graphs: list[tuple[str, GraphSource]]
    algorithms: list[str]
    runs: int = 10
    output_format: str = "csv"
    root_order: str = "id"

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.root_order not in ROOT_ORDERS:
            raise ValueError(f"unknown root order {self.root_order!r}")


@dataclass
class BenchRecord:
    graph: str
    n: int
    m: int
    triangles: int
    k_pct: float
    algorithm: str
    mean_seconds: float
    runs: int
    per_run_seconds: list[float] = field(default_factory=list)

    @property
    def variance(self) -> float:
        if len(self.per_run_seconds) < 2:
            return 0.0
        return statistics.variance(self.per_run_seconds)


def _parse_kv(text: str) -> dict[str, str]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def resolve_source(source: GraphSource) -> CsrGraph:
    """Turn a graph source into a CSR graph.

    Accepted strings: a file path (``.txt``/``.el`` SNAP text, ``.bin``
    TCSR cache), ``karate``, ``empty:n=N``,
    ``rmat:scale=S[,edge_factor=F,seed=X,a=..,b=..,c=..,d=..]`` and
    ``grid:rows=R,cols=C[,keep=P,diagonal=Q,seed=X]``.
    """
    if isinstance(source, CsrGraph):
        return source
    kind, sep, rest = source.partition(":")
    if source == "karate":
        return load_graph(karate_path())
    if sep and kind == "empty":
        return CsrGraph.empty(int(_parse_kv(rest).get("n", 0)))
    if sep and kind == "rmat":
        kv = _parse_kv(rest)
        ints = {k: int(kv.pop(k)) for k in ("scale", "edge_factor", "seed") if k in kv}
        floats = {k: float(v) for k, v in kv.items()}
        return build_csr(rmat_generate(RmatParams(**ints, **floats)))
    if sep and kind == "grid":
        kv = _parse_kv(rest)
        return build_csr(
            grid_generate(
                int(kv["rows"]),
                int(kv["cols"]),
                keep=float(kv.get("keep", 1.0)),
                diagonal=float(kv.get("diagonal", 0.0)),
                seed=int(kv.get("seed", 0)),
            )
        )
    return load_graph(source)


def root_order_for(g: CsrGraph, policy: str) -> np.ndarray:
    if policy == "degree":
        return np.argsort(-g.degrees(), kind="stable")
    return np.arange(g.n, dtype=np.int64)


def run_bench(
    cfg: BenchConfig,
    registry: dict[str, Algorithm] | None = None,
    clock: Callable[[], int] = time.perf_counter_ns,
) -> list[BenchRecord]:
    registry = REGISTRY if registry is None else registry
    algos = [get_algorithm(key, registry) for key in cfg.algorithms]
    warm_up()
    records = []
    for name, source in cfg.graphs:
        g = resolve_source(source)
        levels = bfs_forest(g, root_order_for(g, cfg.root_order))
        k_pct = round(horizontal_fraction(classify_edges(g, levels)), 1)
        reference: tuple[str, int] | None = None
        for algo in algos:
            seconds = []
            for _ in range(cfg.runs):
                start = clock()
                count = algo(g)
                seconds.append((clock() - start) / 1e9)
                if reference is None:
                    reference = (algo.key, count)
                elif count != reference[1]:
                    raise CountMismatchError(name, reference[0], reference[1], algo.key, count)
            records.append(
                BenchRecord(
                    graph=name,
                    n=g.n,
                    m=g.m,
                    triangles=count,
                    k_pct=k_pct,
                    algorithm=algo.key,
                    mean_seconds=sum(seconds) / len(seconds),
                    runs=cfg.runs,
                    per_run_seconds=seconds,
                )
            )
    return records


CSV_FIELDS = ["graph", "n", "m", "triangles", "k_pct", "algorithm", "mean_seconds", "runs"]


def emit_table(records: Sequence[BenchRecord], fmt: str = "csv") -> str:
    if not records:
        raise ValueError("no records to emit")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for r in records:
            writer.writerow(
                [r.graph, r.n, r.m, r.triangles, f"{r.k_pct:.1f}", r.algorithm,
                 f"{r.mean_seconds:.6f}", r.runs]
            )
        return buf.getvalue()
    if fmt == "markdown":
        graphs: dict[str, dict[str, BenchRecord]] = {}
        algos: list[str] = []
        for r in records:
            graphs.setdefault(r.graph, {})[r.algorithm] = r
            if r.algorithm not in algos:
                algos.append(r.algorithm)
        head = ["Graph", "n", "m", "# triangles", "k (%)", *algos]
        lines = [
            "| " + " | ".join(head) + " |",
            "|" + "|".join(["---"] + ["---:"] * (len(head) - 1)) + "|",
        ]
        for name, row in graphs.items():
            first = next(iter(row.values()))
            cells = [name, str(first.n), str(first.m), str(first.triangles), f"{first.k_pct:.1f}"]
            cells += [f"{row[a].mean_seconds:.6f}" if a in row else "" for a in algos]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        rows = [{**asdict(r), "variance": r.variance} for r in records]
        return json.dumps(rows, indent=2) + "\n"
    raise ValueError(f"unknown output format {fmt!r}; choose from {', '.join(FORMATS)}")


def load_bench_config(path: str | Path) -> BenchConfig:
    """Read a key-value bench config.

    ::

        # comment
        runs = 10
        format = markdown
        root_order = id
        algorithms = FH, Bader        # or: all
        graph karate = karate
        graph rmat8 = rmat:scale=8,seed=1

    Relative file paths in ``graph`` lines resolve against the config's directory.
    """
    base = Path(path).parent
    graphs: list[tuple[str, GraphSource]] = []
    settings: dict[str, str] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = key.strip(), value.strip()
            if key.startswith("graph "):
                name = key[len("graph "):].strip()
                if ":" not in value and value != "karate" and not Path(value).is_absolute():
                    value = str(base / value)
                graphs.append((name, value))
            elif key in ("runs", "format", "algorithms", "root_order"):
                settings[key] = value
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    return BenchConfig(
        graphs=graphs,
        algorithms=parse_algorithms(settings.get("algorithms", "all")),
        runs=int(settings.get("runs", 10)),
        output_format=settings.get("format", "csv"),
        root_order=settings.get("root_order", "id"),
    )


def parse_algorithms(text: str) -> list[str]:
    if text.strip().lower() == "all":
        return list(REGISTRY)
    return [k.strip() for k in text.split(",") if k.strip()]
