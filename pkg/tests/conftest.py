import itertools
from functools import lru_cache

import numpy as np
import pytest

from tricount.algorithms import warm_up
from tricount.graph import CsrGraph, EdgeList, RmatParams, build_csr, karate_path, load_graph, rmat_generate

_ACCEPTANCE_LINES: list[str] = []


def er_graph(n: int, p: float, rng: np.random.Generator) -> CsrGraph:
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return build_csr(EdgeList(np.column_stack((iu[keep], ju[keep])), n))


@lru_cache(maxsize=None)
def sweep_graphs() -> tuple[tuple[str, CsrGraph], ...]:
    """475 Erdos-Renyi graphs (n in [1, 64], densities swept) plus RMAT scales 4-8 x 5 seeds."""
    rng = np.random.default_rng(20231016)
    densities = (0.02, 0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 0.95)
    out = []
    for i in range(475):
        n = int(rng.integers(1, 65))
        p = densities[i % len(densities)] if i % 3 else float(rng.random())
        out.append((f"er{i}_n{n}_p{p:.2f}", er_graph(n, p, rng)))
    for scale, seed in itertools.product(range(4, 9), range(5)):
        g = build_csr(rmat_generate(RmatParams(scale, 16, seed=seed)))
        out.append((f"rmat{scale}_s{seed}", g))
    return tuple(out)


def enumerate_triangles(g: CsrGraph) -> list[tuple[int, int, int]]:
    """Set-based listing, independent of the package's counting code."""
    adj = [set(g.adj(v).tolist()) for v in range(g.n)]
    found = []
    for u in range(g.n):
        for v in adj[u]:
            if v > u:
                found.extend((u, v, w) for w in adj[u] & adj[v] if w > v)
    return found


def graph_from_pairs(pairs, n=0) -> CsrGraph:
    return build_csr(EdgeList.from_pairs(pairs, n))


@pytest.fixture(scope="session", autouse=True)
def _compiled():
    warm_up()


@pytest.fixture(scope="session")
def karate() -> CsrGraph:
    return load_graph(karate_path())


@pytest.fixture(scope="session")
def k4() -> CsrGraph:
    return graph_from_pairs([(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (3, 2)])


@pytest.fixture(scope="session")
def sweep():
    return sweep_graphs()


@pytest.fixture
def acceptance():
    def record(number: int, title: str, ok: bool, detail: str = ""):
        status = "PASS" if ok else "FAIL"
        _ACCEPTANCE_LINES.append(f"[{status}] criterion {number:2d}: {title}  {detail}".rstrip())
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
