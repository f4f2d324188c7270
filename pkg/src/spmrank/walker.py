"""Monte Carlo checks of the SPM chain: visit frequencies and path enumeration.

Sampling draws uniforms from numpy's PCG64 generator, whose stream for a given
seed is fixed by numpy's stability policy, so fixtures reproduce across platforms.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graph import Graph
from .spectral import SpmChain

MAX_ENUMERATION_LENGTH = 12


@dataclass(frozen=True)
class WalkPath:
    nodes: np.ndarray
    seed: int | None = None

    @property
    def length(self) -> int:
        return len(self.nodes) - 1


@dataclass(frozen=True)
class WalkStats:
    steps: int
    seed: int | None
    visit_counts: dict[str, int]
    frequencies: dict[str, float]
    max_abs_dev_from_pi: float
    empirical_entropy: float


def sample_path(chain: SpmChain, start: int, steps: int, seed: int) -> WalkPath:
    """Random walk of ``steps`` transitions by inverse-CDF sampling of each row.

    Any object with a row-stochastic ``transition`` matrix works as ``chain``.
    """
    P = sp.csr_matrix(chain.transition)
    n = P.shape[0]
    if not 0 <= start < n:
        raise IndexError(f"start node {start} out of range")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    P.sort_indices()
    cols = [P.indices[P.indptr[i] : P.indptr[i + 1]].tolist() for i in range(n)]
    cdfs = [np.cumsum(P.data[P.indptr[i] : P.indptr[i + 1]]).tolist() for i in range(n)]
    last = [len(c) - 1 for c in cols]
    draws = np.random.Generator(np.random.PCG64(seed)).random(steps).tolist()
    nodes = [start]
    cur = start
    for r in draws:
        # cumulative sums can end a hair below 1.0
        k = bisect_right(cdfs[cur], r)
        cur = cols[cur][min(k, last[cur])]
        nodes.append(cur)
    return WalkPath(np.asarray(nodes, dtype=np.int64), seed)


def transition_entropy(nodes: np.ndarray, n: int) -> float:
    """Plug-in entropy rate from observed transition counts, in nats."""
    if len(nodes) < 2:
        return 0.0
    pairs = np.bincount(nodes[:-1] * n + nodes[1:], minlength=n * n).reshape(n, n)
    out = pairs.sum(axis=1)
    total = out.sum()
    h = 0.0
    for i in np.flatnonzero(out):
        row = pairs[i][pairs[i] > 0] / out[i]
        h -= out[i] / total * float(row @ np.log(row))
    return h


def visit_frequencies(chain: SpmChain, path: WalkPath) -> WalkStats:
    counts = np.bincount(path.nodes, minlength=chain.n)
    freq = counts / counts.sum()
    return WalkStats(
        steps=path.length,
        seed=path.seed,
        visit_counts={lab: int(c) for lab, c in zip(chain.labels, counts)},
        frequencies={lab: float(f) for lab, f in zip(chain.labels, freq)},
        max_abs_dev_from_pi=float(np.abs(freq - chain.pi).max()),
        empirical_entropy=transition_entropy(path.nodes, chain.n),
    )


def simulate(chain: SpmChain, steps: int, seed: int, start: int = 0) -> WalkStats:
    return visit_frequencies(chain, sample_path(chain, start, steps, seed))


def enumerate_paths(g: Graph, i: int, j: int, s: int) -> list[tuple[int, ...]]:
    """All walks with exactly ``s`` edges from ``i`` to ``j``, depth first.

    Branches that cannot reach ``j`` in the remaining number of steps are pruned.
    """
    if s < 0:
        raise ValueError("walk length must be nonnegative")
    if s > MAX_ENUMERATION_LENGTH:
        raise ValueError(f"walk length {s} exceeds the enumeration limit {MAX_ENUMERATION_LENGTH}")
    # reach[r][x]: x reaches j in exactly r steps
    A = (g.adjacency > 0).astype(np.int64).tocsr()
    reach = [np.zeros(g.n, dtype=bool)]
    reach[0][j] = True
    for _ in range(s):
        reach.append((A @ reach[-1].astype(np.int64)) > 0)
    nbrs = [g.neighbors(x).tolist() for x in range(g.n)]

    found: list[tuple[int, ...]] = []
    stack = [i]

    def walk(x: int, left: int):
        if left == 0:
            if x == j:
                found.append(tuple(stack))
            return
        for y in nbrs[x]:
            if reach[left - 1][y]:
                stack.append(y)
                walk(y, left - 1)
                stack.pop()

    if reach[s][i]:
        walk(i, s)
    return found
