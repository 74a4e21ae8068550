"""GF(2) checks on cycle bases: validity, rank, weak fundamentality, and mu.

Edge vectors are Python ints used as bitsets, bit ``e`` standing for edge
id ``e``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence

from .basis import CycleBasis, as_edge_sets
from .graph import MultiGraph, connected_components


class VerificationError(ValueError):
    """A basis refers to edges the graph does not have."""


def to_vector(edges: Iterable[int]) -> int:
    v = 0
    for e in edges:
        v ^= 1 << e
    return v


def from_vector(v: int) -> List[int]:
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


class GF2Eliminator:
    """Incremental row echelon form; ``add`` reports whether a vector was new."""

    def __init__(self) -> None:
        self.pivots: Dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int) -> int:
        pivots = self.pivots
        while v:
            top = v.bit_length() - 1
            row = pivots.get(top)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        r = self.reduce(v)
        if r:
            self.pivots[r.bit_length() - 1] = r
            return True
        return False


def gf2_rank(vectors: Iterable[int]) -> int:
    elim = GF2Eliminator()
    for v in vectors:
        elim.add(v)
    return elim.rank


# -- verification --------------------------------------------------------


@dataclass
class VerificationReport:
    is_cycles: bool
    is_simple: bool
    rank: int
    expected_dim: int
    size: int
    independent: bool
    is_basis: bool
    bad_cycles: List[int]

    def as_dict(self) -> dict:
        return asdict(self)


def is_cycle(g: MultiGraph, edges: FrozenSet[int]) -> bool:
    """Nonempty, every vertex of even degree, support connected."""
    return _cycle_shape(g, edges)[0]


def _cycle_shape(g: MultiGraph, edges: FrozenSet[int]):
    if not edges:
        return False, False
    deg: Counter = Counter()
    nbrs: Dict[int, List[int]] = {}
    for e in edges:
        u, v = g.endpoints(e)
        deg[u] += 1
        deg[v] += 1
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    if any(d % 2 for d in deg.values()):
        return False, False
    start = next(iter(nbrs))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in nbrs[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != len(nbrs):
        return False, False
    return True, all(d == 2 for d in deg.values())


def verify_basis(g: MultiGraph, basis) -> VerificationReport:
    sets = as_edge_sets(basis)
    foreign = sorted({e for s in sets for e in s if not g.has_edge(e)})
    if foreign:
        where = [i for i, s in enumerate(sets) if any(not g.has_edge(e) for e in s)]
        raise VerificationError(
            f"basis references unknown edge ids {foreign[:10]} in cycles {where[:10]}")
    bad = []
    simple = True
    for i, s in enumerate(sets):
        ok, simp = _cycle_shape(g, s)
        if not ok:
            bad.append(i)
        simple = simple and simp
    rank = gf2_rank(to_vector(s) for s in sets)
    dim = g.m - g.n + len(connected_components(g))
    independent = rank == len(sets)
    return VerificationReport(
        is_cycles=not bad,
        is_simple=simple and not bad,
        rank=rank,
        expected_dim=dim,
        size=len(sets),
        independent=independent,
        is_basis=not bad and independent and len(sets) == dim,
        bad_cycles=bad,
    )


def max_edge_participation(basis) -> int:
    counts: Counter = Counter()
    for s in as_edge_sets(basis):
        counts.update(s)
    return max(counts.values(), default=0)


def verify_weakly_fundamental(basis, order: Optional[Sequence[int]] = None) -> bool:
    """True iff, in ``order``, every cycle owns an edge absent from all later ones."""
    sets = as_edge_sets(basis)
    if order is not None:
        sets = [sets[i] for i in order]
    later: set = set()
    for s in reversed(sets):
        if s <= later:
            return False
        later |= s
    return True


# -- girth ---------------------------------------------------------------


class NoCycleError(ValueError):
    pass


def girth(g: MultiGraph) -> int:
    """Exact girth by a BFS from every vertex (loops give 1, parallels 2)."""
    best: Optional[int] = None
    for root in g.vertices():
        depth = {root: 0}
        parent_edge = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = depth[u]
            if best is not None and 2 * du + 1 >= best:
                break
            for e, w in g.incident(u).items():
                if e == parent_edge[u]:
                    continue
                if w in depth:
                    length = du + depth[w] + 1
                    if best is None or length < best:
                        best = length
                else:
                    depth[w] = du + 1
                    parent_edge[w] = e
                    queue.append(w)
    if best is None:
        raise NoCycleError("graph is a forest; girth is undefined")
    return best


def girth_lower_bound(g: MultiGraph) -> Fraction:
    """``girth * (m - n + 1) / m``, a floor on mu for every basis of a connected graph."""
    return Fraction(girth(g) * (g.m - g.n + 1), g.m)
