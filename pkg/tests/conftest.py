from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from spmrank import Graph, connectivity
from spmrank.report import load_graph


@pytest.fixture(scope="session")
def karate() -> Graph:
    return load_graph("fixture:karate")


@pytest.fixture(scope="session")
def toy_a() -> Graph:
    return load_graph("fixture:toyA")


@pytest.fixture(scope="session")
def toy_b() -> Graph:
    return load_graph("fixture:toyB")


@pytest.fixture(scope="session")
def synthetic() -> Graph:
    return load_graph("fixture:synthetic39", directed=True)


def triangle() -> Graph:
    return Graph.from_edges([(1, 2), (2, 3), (3, 1)])


def path3() -> Graph:
    return Graph.from_edges([(1, 2), (2, 3)])


def plastic() -> Graph:
    """Directed 1->2, 2->1, 2->3, 3->1; Perron root solves x^3 = x + 1."""
    return Graph.from_edges([(1, 2), (2, 1), (2, 3), (3, 1)], directed=True)


def random_strong_graph(rng: np.random.Generator, n: int, directed: bool, weighted: bool,
                        density: float = 0.15, aperiodic: bool = True) -> Graph:
    """Strongly connected graph: a random Hamiltonian cycle (or spanning tree) plus extras."""
    perm = rng.permutation(n)
    edges = set()
    if directed:
        for a, b in zip(perm, np.roll(perm, -1)):
            if a != b:
                edges.add((int(a), int(b)))
    else:
        for k in range(1, n):
            edges.add((int(perm[rng.integers(k)]), int(perm[k])))
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                edges.add((i, j))
    if n == 1:
        edges.add((0, 0))

    def make(es):
        if not directed:
            es = {(min(e), max(e)) for e in es}
        out = []
        for i, j in sorted(es):
            w = float(rng.integers(1, 50)) / 4 if weighted else 1.0
            out.append((i, j, w))
        return Graph.from_edges(out, directed=directed, labels=[str(k) for k in range(n)])

    g = make(edges)
    while aperiodic and connectivity(g).period != 1:
        i, j = (int(x) for x in rng.integers(n, size=2))
        edges.add((i, j))
        g = make(edges)
    return g


def graph_suite(count: int = 50, seed: int = 7, n_max: int = 40) -> list[Graph]:
    """Mix of directed/undirected, weighted/unweighted graphs; a third have N <= 8."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        directed = k % 2 == 0
        weighted = (k // 2) % 2 == 1
        n = int(rng.integers(2, 9)) if k % 3 == 0 else int(rng.integers(9, n_max + 1))
        out.append(random_strong_graph(rng, n, directed, weighted, density=float(rng.uniform(0.05, 0.3))))
    return out


@st.composite
def strong_graphs(draw, min_n=2, max_n=8, directed=None, weighted=None, aperiodic=True):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(min_n, max_n))
    d = draw(st.booleans()) if directed is None else directed
    w = draw(st.booleans()) if weighted is None else weighted
    density = draw(st.floats(0.0, 0.6))
    return random_strong_graph(np.random.default_rng(seed), n, d, w, density, aperiodic)


ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def record(criterion: str, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split(".")[0].split()[0]), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {detail}")
