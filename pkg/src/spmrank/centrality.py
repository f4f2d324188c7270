"""Baseline node-importance measures and ranking comparison."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy import stats

from .errors import ConvergenceError, GraphError
from .graph import Graph, strongly_connected_components
from .ranking import Measure, Ranking
from .spectral import perron_eigens


def _strength(g: Graph) -> np.ndarray:
    return np.asarray(g.adjacency.sum(axis=1)).ravel()


def degree_centrality(g: Graph) -> Ranking:
    """Normalized (weighted) degree ``k_i / sum_j k_j``.

    Directed graphs get out-strength and a caveat on the ranking.
    """
    k = _strength(g)
    caveats = ("directed graph: out-degree used",) if g.directed else ()
    return Ranking.from_scores(Measure.DC, g.labels, k / k.sum(), caveats)


@dataclass(frozen=True)
class SimpleRandomWalk:
    transition: sp.csr_matrix
    pi: np.ndarray


def simple_random_walk(g: Graph) -> SimpleRandomWalk:
    """Uniform-neighbour walk ``P_ij = A_ij / k_i`` and its stationary law ``k / sum(k)``."""
    if g.directed:
        raise GraphError("simple random walk closed form requires an undirected graph")
    if not strongly_connected_components(g).strongly_connected:
        raise GraphError("simple random walk requires a connected graph")
    k = _strength(g)
    P = sp.csr_matrix(sp.diags(1.0 / k) @ g.adjacency)
    return SimpleRandomWalk(P, k / k.sum())


def simple_random_walk_stationary(g: Graph) -> np.ndarray:
    return simple_random_walk(g).pi


def _hop_bfs(g: Graph, s: int):
    dist = np.full(g.n, -1, dtype=np.int64)
    sigma = np.zeros(g.n)
    preds: list[list[int]] = [[] for _ in range(g.n)]
    order = []
    dist[s] = 0
    sigma[s] = 1.0
    queue = deque([s])
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in g.neighbors(v):
            if w == v:
                continue
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return order, dist, sigma, preds


def betweenness_scores(g: Graph) -> np.ndarray:
    """Unnormalized shortest-path betweenness (Brandes), hop distances.

    Undirected graphs count each unordered pair once.
    """
    bc = np.zeros(g.n)
    for s in range(g.n):
        order, _, sigma, preds = _hop_bfs(g, s)
        delta = np.zeros(g.n)
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    if not g.directed:
        bc /= 2.0
    return bc


def betweenness_centrality(g: Graph) -> Ranking:
    return Ranking.from_scores(Measure.BC, g.labels, betweenness_scores(g))


def closeness_centrality(g: Graph) -> Ranking:
    """``1 / sum_j d(i, j)`` with hop distances measured along out-edges."""
    scores = np.zeros(g.n)
    for s in range(g.n):
        _, dist, _, _ = _hop_bfs(g, s)
        if (dist < 0).any():
            raise GraphError(f"node {g.labels[s]} cannot reach every other node")
        total = dist.sum()
        scores[s] = 1.0 / total if total else 0.0
    return Ranking.from_scores(Measure.CC, g.labels, scores)


def eigenvector_centrality(g: Graph) -> Ranking:
    v = perron_eigens(g).v
    return Ranking.from_scores(Measure.EC, g.labels, v / v.sum())


@dataclass(frozen=True)
class KShellResult:
    """Core index and global peeling round per node label."""

    shell: dict[str, int]
    deletion_step: dict[str, int] = field(repr=False)

    def ranking(self) -> Ranking:
        labels = list(self.deletion_step)
        return Ranking.from_scores(Measure.KSHELL, labels, [self.deletion_step[x] for x in labels])


def kshell(g: Graph) -> KShellResult:
    """k-shell decomposition by batch peeling.

    For k = 1, 2, ... every node whose remaining degree is at most k is removed,
    all at once, until none qualifies. Each batch is one global round; a node's
    shell is the k in force when it goes. Weights and self-loops are ignored.
    """
    if g.directed:
        raise GraphError("k-shell decomposition requires an undirected graph")
    nbrs = [set(int(j) for j in g.neighbors(i) if j != i) for i in range(g.n)]
    degree = np.array([len(s) for s in nbrs])
    alive = np.ones(g.n, dtype=bool)
    shell = np.zeros(g.n, dtype=np.int64)
    step = np.zeros(g.n, dtype=np.int64)
    k, rnd = 0, 0
    while alive.any():
        batch = np.flatnonzero(alive & (degree <= k))
        if batch.size == 0:
            k += 1
            continue
        rnd += 1
        shell[batch] = k
        step[batch] = rnd
        alive[batch] = False
        for i in batch:
            for j in nbrs[i]:
                degree[j] -= 1
    return KShellResult(
        shell={lab: int(shell[i]) for i, lab in enumerate(g.labels)},
        deletion_step={lab: int(step[i]) for i, lab in enumerate(g.labels)},
    )


def pagerank_scores(
    g: Graph, damping: float = 0.85, tol: float = 1e-12, max_iter: int = 10_000
) -> np.ndarray:
    """Damped random-surfer vector; dangling mass is spread uniformly."""
    if not 0 < damping < 1:
        raise ValueError(f"damping must lie in (0, 1), got {damping}")
    n = g.n
    out = _strength(g)
    dangling = out == 0
    inv = np.divide(1.0, out, out=np.zeros(n), where=~dangling)
    PT = sp.csr_matrix((sp.diags(inv) @ g.adjacency).T)
    x = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        y = damping * (PT @ x) + (damping * x[dangling].sum() + 1.0 - damping) / n
        y /= y.sum()
        if np.abs(y - x).max() <= tol:
            return y
        x = y
    raise ConvergenceError(f"PageRank did not reach tol {tol:.1e} in {max_iter} iterations")


def pagerank(g: Graph, damping: float = 0.85, tol: float = 1e-12) -> Ranking:
    return Ranking.from_scores(Measure.PAGERANK, g.labels, pagerank_scores(g, damping, tol))


@dataclass(frozen=True)
class RankingComparison:
    kendall_tau: float
    top_k_overlap: dict[int, int]


def compare_rankings(a: Ranking, b: Ranking, ks=(5, 10)) -> RankingComparison:
    """Kendall tau-b between the two score vectors plus top-k set overlaps.

    Tau-b is undefined when either side is constant; it is then reported as 1.0
    if both rankings induce the same tie structure and 0.0 otherwise.
    """
    sa, sb = a.scores, b.scores
    if set(sa) != set(sb):
        raise ValueError("rankings cover different node sets")
    labels = a.labels
    x = np.array([sa[lab] for lab in labels])
    y = np.array([sb[lab] for lab in labels])
    if np.array_equal(x, y):
        tau = 1.0
    elif len(labels) > 1:
        tau = float(np.clip(stats.kendalltau(x, y).statistic, -1.0, 1.0))
    else:
        tau = np.nan
    if np.isnan(tau):
        same = np.array_equal(stats.rankdata(x), stats.rankdata(y))
        tau = 1.0 if same else 0.0
    overlap = {int(k): len(set(a.top(k)) & set(b.top(k))) for k in ks}
    return RankingComparison(float(tau), overlap)
