"""Report assembly and deterministic CSV/JSON rendering for the command line."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Sequence

from . import centrality
from .errors import GraphError
from .graph import Graph, apply_threshold, connectivity, read_edge_list, restrict_to_largest_scc
from .ranking import Measure, Ranking
from .spectral import check_spm_preconditions, spm_chain
from .walker import WalkStats, simulate

FIXTURE_PREFIX = "fixture:"
FIXTURES = ("karate", "toyA", "toyB", "synthetic39")


def num(x: float) -> float:
    """Round to 15 significant digits; ``repr`` of the result is at most that long."""
    return float(f"{x:.15g}")


def load_graph(path: str, directed: bool = False) -> Graph:
    """Read an edge-list file, or a bundled fixture named ``fixture:<name>``."""
    if path.startswith(FIXTURE_PREFIX):
        name = path[len(FIXTURE_PREFIX) :]
        if name not in FIXTURES:
            raise GraphError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
        with resources.as_file(resources.files("spmrank") / "fixtures" / f"{name}.tsv") as p:
            return read_edge_list(p, directed=directed)
    return read_edge_list(path, directed=directed)


def _kshell(g: Graph) -> Ranking:
    return centrality.kshell(g).ranking()


def _srw(g: Graph) -> Ranking:
    return Ranking.from_scores(Measure.SIMPLE_RW, g.labels, centrality.simple_random_walk_stationary(g))


BASELINES: dict[Measure, Callable[[Graph], Ranking]] = {
    Measure.DC: centrality.degree_centrality,
    Measure.BC: centrality.betweenness_centrality,
    Measure.CC: centrality.closeness_centrality,
    Measure.EC: centrality.eigenvector_centrality,
    Measure.KSHELL: _kshell,
    Measure.PAGERANK: centrality.pagerank,
    Measure.SIMPLE_RW: _srw,
}


@dataclass
class RankReport:
    graph_summary: dict
    connectivity: dict
    threshold: float | None
    lam: float
    entropies: dict
    rankings: list[Ranking]
    warnings: list[str] = field(default_factory=list)

    def to_dict(self, top: int | None = None) -> dict:
        return {
            "graph": self.graph_summary,
            "connectivity": self.connectivity,
            "threshold": None if self.threshold is None else num(self.threshold),
            "lambda": num(self.lam),
            "entropies": {k: num(v) for k, v in self.entropies.items()},
            "rankings": [
                {
                    "measure": r.measure.value,
                    "entries": [{"label": lab, "score": num(s)} for lab, s in r.entries[:top]],
                }
                for r in self.rankings
            ],
            "warnings": list(self.warnings),
        }


def _summary(g: Graph) -> dict:
    return {"nodes": g.n, "edges": g.edge_count, "directed": g.directed, "weighted": g.weighted}


def connectivity_dict(g: Graph) -> dict:
    rep = connectivity(g)
    return {
        "strongly_connected": rep.strongly_connected,
        "components": len(rep.scc),
        "scc": [[g.labels[i] for i in block] for block in rep.scc],
        "period": rep.period,
        "aperiodic": rep.aperiodic,
    }


def prepare(
    g: Graph,
    threshold: float | None = None,
    restrict_scc: bool = False,
    allow_periodic: bool = False,
) -> tuple[Graph, list[str]]:
    """Threshold, optionally restrict, and validate a graph for SPM."""
    warnings: list[str] = []
    if threshold is not None:
        g = apply_threshold(g, threshold)
    if restrict_scc and not connectivity(g).strongly_connected:
        n_before = g.n
        g = restrict_to_largest_scc(g)
        warnings.append(f"restricted to largest strongly connected component: {g.n} of {n_before} nodes")
    per = check_spm_preconditions(g, allow_periodic)
    if per != 1:
        warnings.append(f"period = {per}; aperiodicity waived")
    return g, warnings


def rankings_for(g: Graph, measures: Sequence[Measure], pi, strict: bool) -> tuple[list[Ranking], list[str]]:
    out: list[Ranking] = []
    warnings: list[str] = []
    for m in measures:
        if m is Measure.SPM:
            out.append(Ranking.from_scores(Measure.SPM, g.labels, pi))
            continue
        try:
            r = BASELINES[m](g)
        except GraphError as exc:
            if strict:
                raise
            warnings.append(f"{m.value} skipped: {exc}")
            continue
        warnings.extend(f"{m.value}: {c}" for c in r.caveats)
        out.append(r)
    return out, warnings


def build_rank_report(
    g: Graph,
    measures: Sequence[Measure] = (Measure.SPM,),
    threshold: float | None = None,
    restrict_scc: bool = False,
    allow_periodic: bool = False,
) -> RankReport:
    g, warnings = prepare(g, threshold, restrict_scc, allow_periodic)
    chain = spm_chain(g)
    ordered = [Measure.SPM] + [m for m in dict.fromkeys(measures) if m is not Measure.SPM]
    rankings, more = rankings_for(g, ordered, chain.pi, strict=False)
    return RankReport(
        graph_summary=_summary(g),
        connectivity=connectivity_dict(g),
        threshold=threshold,
        lam=chain.perron.lam,
        entropies={"topological": chain.topological_entropy, "ks": chain.ks_entropy},
        rankings=rankings,
        warnings=warnings + more,
    )


def dumps_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def rank_csv(report: RankReport, top: int | None = None) -> str:
    rows: list[list] = [["measure", "rank", "label", "score"]]
    for r in report.rankings:
        for pos, (lab, s) in enumerate(r.entries[:top], start=1):
            rows.append([r.measure.value, pos, lab, repr(num(s))])
    return _csv(rows)


def sweep_csv(reports: Sequence[RankReport], top: int = 10) -> str:
    """Threshold sweep laid out as two rows per threshold: labels, then SPM values."""
    rows: list[list] = [["threshold", "row"] + [str(k) for k in range(1, top + 1)]]
    for rep in reports:
        spm = rep.rankings[0].entries[:top]
        t = repr(num(rep.threshold)) if rep.threshold is not None else ""
        rows.append([t, "label"] + [lab for lab, _ in spm])
        rows.append([t, "spm"] + [repr(num(s)) for _, s in spm])
    return _csv(rows)


def comparison_rows(rankings: Sequence[Ranking], ks: Sequence[int]) -> list[dict]:
    rows = []
    for a in rankings:
        for b in rankings:
            cmp = centrality.compare_rankings(a, b, ks)
            row = {"a": a.measure.value, "b": b.measure.value, "kendall_tau": num(cmp.kendall_tau)}
            row.update({f"top_{k}": v for k, v in cmp.top_k_overlap.items()})
            rows.append(row)
    return rows


def compare_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    header = list(rows[0])
    return _csv([header] + [[repr(r[h]) if isinstance(r[h], float) else r[h] for h in header] for r in rows])


def walk_dict(stats: WalkStats, start: str, topological_entropy: float) -> dict:
    return {
        "steps": stats.steps,
        "seed": stats.seed,
        "start": start,
        "max_abs_dev_from_pi": num(stats.max_abs_dev_from_pi),
        "empirical_entropy": num(stats.empirical_entropy),
        "topological_entropy": num(topological_entropy),
        "visit_counts": stats.visit_counts,
        "frequencies": {k: num(v) for k, v in stats.frequencies.items()},
    }


def sample_report(g: Graph, steps: int, seed: int, start: str | None = None, allow_periodic: bool = False) -> dict:
    g, _ = prepare(g, allow_periodic=allow_periodic)
    chain = spm_chain(g)
    start = g.labels[0] if start is None else start
    if start not in g.index:
        raise GraphError(f"start node {start!r} not in graph")
    stats = simulate(chain, steps, seed, g.index[start])
    return walk_dict(stats, start, chain.topological_entropy)

