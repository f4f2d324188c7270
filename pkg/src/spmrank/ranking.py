"""Node rankings shared by every centrality measure."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .graph import label_key


class Measure(str, enum.Enum):
    DC = "dc"
    BC = "bc"
    CC = "cc"
    EC = "ec"
    KSHELL = "kshell"
    PAGERANK = "pagerank"
    SPM = "spm"
    SIMPLE_RW = "srw"


@dataclass(frozen=True)
class Ranking:
    """Nodes ordered by descending score, ties by ascending label.

    Scores are compared exactly; there is no tolerance bucketing.
    """

    measure: Measure
    entries: tuple[tuple[str, float], ...]
    caveats: tuple[str, ...] = ()

    @classmethod
    def from_scores(cls, measure, labels: Sequence[str], scores, caveats=()) -> "Ranking":
        pairs = [(lab, float(s)) for lab, s in zip(labels, scores)]
        pairs.sort(key=lambda e: (-e[1], label_key(e[0])))
        return cls(Measure(measure), tuple(pairs), tuple(caveats))

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.entries]

    @property
    def scores(self) -> dict[str, float]:
        return dict(self.entries)

    def top(self, k: int) -> list[str]:
        return self.labels[:k]

    def __len__(self):
        return len(self.entries)
