"""Perron eigenpair, the maximal-entropy compatible chain and its stationary law."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .errors import ConvergenceError, GraphError, NotStronglyConnectedError, PeriodicGraphError
from .graph import Graph, connectivity, strongly_connected_components
from .ranking import Measure, Ranking

DEFAULT_TOL = 1e-13
DEFAULT_MAX_ITER = 100_000
RESIDUAL_TOL = 1e-9
ROW_CORRECTION_TOL = 1e-10


@dataclass(frozen=True)
class PerronData:
    """Perron root ``lam`` with right eigenvector ``v`` (max-norm 1) and left
    eigenvector ``u`` scaled so that ``u @ v == 1``."""

    lam: float
    u: np.ndarray
    v: np.ndarray
    iterations: int
    residual: float


@dataclass(frozen=True)
class SpmChain:
    labels: tuple[str, ...]
    transition: sp.csr_matrix
    pi: np.ndarray
    ks_entropy: float
    topological_entropy: float
    perron: PerronData

    @property
    def n(self) -> int:
        return len(self.labels)


def _power_iterate(B: sp.csr_matrix, tol: float, max_iter: int) -> tuple[np.ndarray, float, int]:
    x = np.ones(B.shape[0])
    for it in range(1, max_iter + 1):
        y = B @ x
        scale = y.max()
        y /= scale
        change = np.abs(y - x).max()
        x = y
        if change <= tol:
            return x, scale, it
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} iterations "
        f"(last relative change {change:.3e}, tol {tol:.1e})"
    )


def perron_eigens(g: Graph, tol: float | None = None, max_iter: int | None = None) -> PerronData:
    """Perron eigenvalue and positive left/right eigenvectors of the adjacency matrix.

    Power iteration runs on ``A + c*I`` with ``c = max(A)``. The shift leaves the
    eigenvectors alone but makes the iteration converge for periodic matrices too.

    Raises
    ------
    NotStronglyConnectedError
        If the adjacency matrix is reducible.
    ConvergenceError
        If ``tol`` is not reached within ``max_iter`` steps, or the final
        residual ``max|Av - lam v|`` exceeds ``1e-9 * lam``.
    """
    tol = DEFAULT_TOL if tol is None else tol
    max_iter = DEFAULT_MAX_ITER if max_iter is None else max_iter
    report = strongly_connected_components(g)
    if not report.strongly_connected or g.adjacency.nnz == 0:
        raise NotStronglyConnectedError(len(report.scc))
    A = g.adjacency
    c = float(A.data.max())
    B = (A + c * sp.identity(g.n, format="csr")).tocsr()
    v, scale, it_v = _power_iterate(B, tol, max_iter)
    u, _, it_u = _power_iterate(B.T.tocsr(), tol, max_iter)
    lam = scale - c
    residual = float(np.abs(A @ v - lam * v).max())
    if residual > RESIDUAL_TOL * lam:
        raise ConvergenceError(f"eigen-residual {residual:.3e} exceeds {RESIDUAL_TOL:.0e} * lambda")
    if v.min() <= 0 or u.min() <= 0:
        raise ConvergenceError("Perron vector has non-positive entries; matrix is ill-conditioned")
    u = u / (u @ v)
    return PerronData(lam=lam, u=u, v=v, iterations=max(it_v, it_u), residual=residual)


def build_transition(g: Graph, p: PerronData) -> sp.csr_matrix:
    """``P[i, j] = A[i, j] * v[j] / (lam * v[i])``, renormalized row by row."""
    v = p.v
    if v.min() <= 0:
        raise GraphError("right Perron vector must be strictly positive")
    A = g.adjacency
    P = sp.diags(1.0 / (p.lam * v)) @ A @ sp.diags(v)
    P = sp.csr_matrix(P)
    rows = np.asarray(P.sum(axis=1)).ravel()
    worst = np.abs(rows - 1.0).max()
    if worst > ROW_CORRECTION_TOL:
        raise ConvergenceError(f"transition rows deviate from 1 by {worst:.3e} before renormalization")
    P = sp.csr_matrix(sp.diags(1.0 / rows) @ P)
    P.sort_indices()
    return P


def spm_distribution(p: PerronData) -> np.ndarray:
    w = p.u * p.v
    return w / w.sum()


def ks_entropy(P, pi: Sequence[float]) -> float:
    """Entropy rate ``-sum_i pi_i sum_j P_ij log P_ij`` in nats, with ``0 log 0 = 0``."""
    pi = np.asarray(pi, dtype=float)
    P = sp.csr_matrix(P)
    if P.shape != (pi.size, pi.size):
        raise ValueError(f"dimension mismatch: P is {P.shape}, pi has {pi.size} entries")
    d = P.data
    plogp = np.zeros_like(d)
    pos = d > 0
    plogp[pos] = d[pos] * np.log(d[pos])
    rows = np.repeat(np.arange(pi.size), np.diff(P.indptr))
    row_h = np.bincount(rows, weights=plogp, minlength=pi.size)
    return float(-(pi @ row_h))


def topological_entropy(p: PerronData) -> float:
    if not p.lam > 0:
        raise ValueError("Perron root must be positive")
    return float(np.log(p.lam))


def spm_chain(g: Graph, tol: float | None = None, max_iter: int | None = None) -> SpmChain:
    p = perron_eigens(g, tol=tol, max_iter=max_iter)
    P = build_transition(g, p)
    pi = spm_distribution(p)
    return SpmChain(
        labels=g.labels,
        transition=P,
        pi=pi,
        ks_entropy=ks_entropy(P, pi),
        topological_entropy=topological_entropy(p),
        perron=p,
    )


def path_measure(chain: SpmChain, path: Sequence[int]) -> float:
    """Markov measure of the cylinder set fixed by ``path``.

    ``pi[v0] * P[v0, v1] * ... * P[v_{s-1}, v_s]``; a single-node path gives ``pi[v0]``.
    """
    nodes = [int(x) for x in path]
    if not nodes:
        raise ValueError("path must contain at least one node")
    P = chain.transition
    mu = float(chain.pi[nodes[0]])
    for a, b in zip(nodes, nodes[1:]):
        p = P[a, b]
        if p <= 0:
            raise GraphError(f"path step {chain.labels[a]} -> {chain.labels[b]} is not an edge")
        mu *= p
    return mu


def check_spm_preconditions(g: Graph, allow_periodic: bool = False) -> int:
    """Verify irreducibility and aperiodicity; returns the period."""
    report = connectivity(g)
    if not report.strongly_connected or report.period is None:
        raise NotStronglyConnectedError(len(report.scc))
    if report.period != 1 and not allow_periodic:
        raise PeriodicGraphError(report.period)
    return report.period


def spm_rank(g: Graph, allow_periodic: bool = False) -> Ranking:
    """Rank nodes by their Shannon-Parry stationary probability.

    Periodic graphs are rejected unless ``allow_periodic`` is set; the stationary
    vector of the irreducible chain is then used as is.
    """
    per = check_spm_preconditions(g, allow_periodic)
    chain = spm_chain(g)
    caveats = (f"period = {per}; aperiodicity waived",) if per != 1 else ()
    return Ranking.from_scores(Measure.SPM, g.labels, chain.pi, caveats=caveats)
