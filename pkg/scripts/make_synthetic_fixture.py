"""Regenerate fixtures/synthetic39.tsv, a weighted directed stand-in for a rail timetable.

39 stations, 439 directed links, weights are daily trip counts with a heavy tail
so that saturation thresholds around 18-20 bite on the busiest links.
"""

from pathlib import Path

import numpy as np

N_NODES = 39
N_EDGES = 439
SEED = 2013


def build(seed: int = SEED) -> list[tuple[str, str, int]]:
    rng = np.random.default_rng(seed)
    names = [f"S{i:02d}" for i in range(1, N_NODES + 1)]
    edges: dict[tuple[int, int], int] = {}

    def trips() -> int:
        return int(min(150, np.ceil(rng.lognormal(mean=1.6, sigma=1.1))))

    # ring in both directions keeps it strongly connected; a chord gives odd cycles
    for i in range(N_NODES):
        j = (i + 1) % N_NODES
        edges[(i, j)] = trips()
        edges[(j, i)] = trips()
    edges[(0, 2)] = trips()
    # hubs attract extra links
    attract = rng.pareto(1.5, N_NODES) + 1.0
    attract /= attract.sum()
    while len(edges) < N_EDGES:
        i, j = rng.choice(N_NODES, size=2, replace=False, p=attract)
        if (i, j) not in edges:
            edges[(int(i), int(j))] = trips()
    return [(names[i], names[j], w) for (i, j), w in sorted(edges.items())]


def main():
    out = Path(__file__).resolve().parents[1] / "src" / "spmrank" / "fixtures" / "synthetic39.tsv"
    lines = [f"# synthetic weighted directed network, {N_NODES} nodes, {N_EDGES} edges, seed {SEED}"]
    lines += [f"{a}\t{b}\t{w}" for a, b, w in build()]
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
