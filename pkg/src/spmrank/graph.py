"""Directed weighted graphs over string labels, edge-list I/O and structural checks."""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .errors import NotStronglyConnectedError, ParseError

_INT_LABEL = re.compile(r"[+-]?\d+")


def label_key(label: str) -> tuple:
    """Sort key for node labels: integer-looking labels numerically, then the rest lexically."""
    if _INT_LABEL.fullmatch(label):
        return (0, int(label), label)
    return (1, 0, label)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable weighted graph.

    ``adjacency[i, j]`` is the weight of edge ``labels[i] -> labels[j]``. Undirected
    graphs store both orientations, so the matrix is symmetric.
    """

    labels: tuple[str, ...]
    adjacency: sp.csr_matrix
    directed: bool = True
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        A = sp.csr_matrix(self.adjacency, dtype=float)
        A.eliminate_zeros()
        A.sort_indices()
        n = len(self.labels)
        if A.shape != (n, n):
            raise ValueError(f"adjacency shape {A.shape} does not match {n} labels")
        if A.nnz and A.data.min() < 0:
            raise ValueError("negative edge weight")
        if not self.directed and (A != A.T).nnz:
            raise ValueError("undirected graph requires a symmetric adjacency matrix")
        index = {lab: i for i, lab in enumerate(self.labels)}
        if len(index) != n:
            raise ValueError("node labels must be unique")
        object.__setattr__(self, "adjacency", A)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "index", index)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        A = self.adjacency
        if self.directed:
            return A.nnz
        loops = int(np.count_nonzero(A.diagonal()))
        return (A.nnz - loops) // 2 + loops

    @property
    def weighted(self) -> bool:
        return bool(self.adjacency.nnz) and not np.all(self.adjacency.data == 1.0)

    def dense(self) -> np.ndarray:
        return self.adjacency.toarray()

    def neighbors(self, i: int) -> np.ndarray:
        A = self.adjacency
        return A.indices[A.indptr[i] : A.indptr[i + 1]]

    def edges(self) -> Iterable[tuple[int, int, float]]:
        A = self.adjacency.tocoo()
        for i, j, w in zip(A.row, A.col, A.data):
            yield int(i), int(j), float(w)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.directed == other.directed
            and self.adjacency.shape == other.adjacency.shape
            and (self.adjacency != other.adjacency).nnz == 0
        )

    __hash__ = None

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Graph({kind}, nodes={self.n}, edges={self.edge_count})"

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple],
        directed: bool = False,
        labels: Iterable[str] | None = None,
    ) -> "Graph":
        """Build a graph from ``(src, dst)`` or ``(src, dst, weight)`` tuples.

        Labels are converted with ``str``. Repeated edges have their weights summed.
        """
        order: dict[str, int] = {}
        for lab in labels or ():
            order.setdefault(str(lab), len(order))
        weights: dict[tuple[int, int], float] = {}
        for e in edges:
            src, dst = str(e[0]), str(e[1])
            w = float(e[2]) if len(e) > 2 else 1.0
            i = order.setdefault(src, len(order))
            j = order.setdefault(dst, len(order))
            key = (i, j) if directed else (min(i, j), max(i, j))
            weights[key] = weights.get(key, 0.0) + w
        return cls(tuple(order), _matrix(len(order), weights, directed), directed)


def _matrix(n: int, weights: dict[tuple[int, int], float], directed: bool) -> sp.csr_matrix:
    rows, cols, data = [], [], []
    for (i, j), w in weights.items():
        if w == 0.0:
            continue
        rows.append(i)
        cols.append(j)
        data.append(w)
        if not directed and i != j:
            rows.append(j)
            cols.append(i)
            data.append(w)
    return sp.csr_matrix((data, (rows, cols)), shape=(n, n), dtype=float)


def parse_edge_list(
    text: str | TextIO, directed: bool = False, default_weight: float = 1.0
) -> Graph:
    """Parse ``src dst [weight]`` lines separated by tabs or spaces.

    Blank lines and lines starting with ``#`` are ignored. A line with weight 0
    declares its nodes without adding an edge.

    Raises
    ------
    ParseError
        On a malformed line or a negative/non-finite weight; the message carries
        the 1-based line number.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    order: dict[str, int] = {}
    weights: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"expected 'src dst [weight]', got {len(parts)} fields", lineno)
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise ParseError(f"weight {parts[2]!r} is not a number", lineno) from None
            if not math.isfinite(w) or w < 0:
                raise ParseError(f"weight must be a finite nonnegative number, got {parts[2]}", lineno)
        else:
            w = default_weight
        i = order.setdefault(parts[0], len(order))
        j = order.setdefault(parts[1], len(order))
        key = (i, j) if directed else (min(i, j), max(i, j))
        weights[key] = weights.get(key, 0.0) + w
    return Graph(tuple(order), _matrix(len(order), weights, directed), directed)


def read_edge_list(path, directed: bool = False, default_weight: float = 1.0) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, directed=directed, default_weight=default_weight)


def to_edge_list(g: Graph) -> str:
    """Serialize ``g`` so that ``parse_edge_list`` rebuilds an identical graph.

    Edges are grouped by the larger endpoint index. A node with no edge to an
    earlier (or same) node is first declared with a zero-weight self-loop line so
    that first-appearance order, and hence the label order, is preserved.
    """
    A = g.adjacency.tocsr()
    At = A.T.tocsr()
    out = []
    for k, lab in enumerate(g.labels):
        lines = []
        if A[k, k]:
            lines.append((k, k, A[k, k]))
        for j in A.indices[A.indptr[k] : A.indptr[k + 1]]:
            if j < k:
                lines.append((k, j, A[k, j]))
        if g.directed:
            for i in At.indices[At.indptr[k] : At.indptr[k + 1]]:
                if i < k:
                    lines.append((i, k, A[i, k]))
        if not lines:
            out.append(f"{lab}\t{lab}\t0")
        # every line here touches k, and all other endpoints were emitted earlier
        for i, j, w in lines:
            out.append(f"{g.labels[i]}\t{g.labels[j]}\t{float(w)!r}")
    return "\n".join(out) + ("\n" if out else "")


def apply_threshold(g: Graph, t: float) -> Graph:
    """Cap every edge weight at ``t``: ``w -> min(w, t)``."""
    if not t > 0:
        raise ValueError(f"threshold must be positive, got {t}")
    A = g.adjacency.copy()
    A.data = np.minimum(A.data, t)
    return Graph(g.labels, A, g.directed)


@dataclass(frozen=True)
class ConnectivityReport:
    scc: tuple[tuple[int, ...], ...]
    strongly_connected: bool
    period: int | None = None

    @property
    def aperiodic(self) -> bool | None:
        return None if self.period is None else self.period == 1


def strongly_connected_components(g: Graph) -> ConnectivityReport:
    """Partition the nodes into strongly connected components.

    Components are listed by their smallest node index, members ascending.
    """
    if g.n == 0:
        raise ValueError("graph has no nodes")
    _, comp = csgraph.connected_components(g.adjacency, directed=True, connection="strong")
    blocks: dict[int, list[int]] = {}
    for i, c in enumerate(comp):
        blocks.setdefault(int(c), []).append(i)
    scc = tuple(sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0]))
    return ConnectivityReport(scc=scc, strongly_connected=len(scc) == 1)


def period(g: Graph) -> int:
    """Common period of all nodes of a strongly connected graph.

    BFS levels from node 0; the period is the gcd of ``level[u] + 1 - level[v]``
    over all edges ``u -> v``.
    """
    report = strongly_connected_components(g)
    if not report.strongly_connected:
        raise NotStronglyConnectedError(len(report.scc))
    if g.adjacency.nnz == 0:
        raise NotStronglyConnectedError(1)
    level = np.full(g.n, -1, dtype=np.int64)
    level[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
    A = g.adjacency.tocoo()
    return int(np.gcd.reduce(np.abs(level[A.row] + 1 - level[A.col])))


def connectivity(g: Graph) -> ConnectivityReport:
    """SCC partition plus the period when the graph is strongly connected."""
    report = strongly_connected_components(g)
    if report.strongly_connected and g.adjacency.nnz:
        return ConnectivityReport(report.scc, True, period(g))
    return report


def subgraph(g: Graph, nodes: Iterable[int]) -> Graph:
    keep = sorted(nodes)
    A = g.adjacency[keep][:, keep]
    return Graph(tuple(g.labels[i] for i in keep), A, g.directed)


def restrict_to_largest_scc(g: Graph) -> Graph:
    """Induced subgraph on a largest SCC; ties go to the SCC holding the smallest label."""
    report = strongly_connected_components(g)
    if report.strongly_connected:
        return g
    best = min(
        report.scc,
        key=lambda b: (-len(b), min(label_key(g.labels[i]) for i in b)),
    )
    return subgraph(g, best)
