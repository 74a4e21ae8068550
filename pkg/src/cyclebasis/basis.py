"""Cycle basis containers shared by the engine, the baselines and the verifier."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple


@dataclass(frozen=True)
class Cycle:
    """One basis element over original edge ids.

    ``case`` records which construction step produced it, ``iteration`` the
    step index, and ``working_length`` the number of working-graph edges the
    cycle had before expansion to original edges.
    """

    edges: Tuple[int, ...]
    case: str = ""
    iteration: int = -1
    working_length: int = 0

    def __len__(self) -> int:
        return len(self.edges)


@dataclass
class CycleBasis:
    cycles: List[Cycle] = field(default_factory=list)

    @classmethod
    def from_edge_sets(cls, sets: Iterable[Iterable[int]], case: str = "") -> "CycleBasis":
        return cls([Cycle(tuple(sorted(s)), case, i, len(set(s))) for i, s in enumerate(sets)])

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self) -> Iterator[Cycle]:
        return iter(self.cycles)

    def __getitem__(self, i: int) -> Cycle:
        return self.cycles[i]

    def edge_sets(self) -> List[FrozenSet[int]]:
        return [frozenset(c.edges) for c in self.cycles]

    def total_length(self) -> int:
        return sum(len(c.edges) for c in self.cycles)

    def participation(self) -> Counter:
        """Number of cycles each edge id belongs to (edges in no cycle omitted)."""
        counts: Counter = Counter()
        for c in self.cycles:
            counts.update(c.edges)
        return counts

    def to_json(self) -> str:
        return json.dumps([list(c.edges) for c in self.cycles], separators=(",", ":"))


def as_edge_sets(basis: "CycleBasis | Sequence[Iterable[int]]") -> List[FrozenSet[int]]:
    if isinstance(basis, CycleBasis):
        return basis.edge_sets()
    return [frozenset(c.edges) if isinstance(c, Cycle) else frozenset(c) for c in basis]


def participation_histogram(counts: Counter, edge_ids: Iterable[int]) -> Dict[int, int]:
    """``{load: number of edges with that load}`` over ``edge_ids``."""
    hist: Counter = Counter(counts.get(e, 0) for e in edge_ids)
    return dict(sorted(hist.items()))
