"""Load-aware cycle basis construction by recursive graph reduction.

The working graph is reduced one step at a time:

* case 1  -- a degree-1 vertex is deleted with its edge;
* case 2A -- a degree-2 vertex ``v`` with non-adjacent neighbours ``x, y``
  is contracted into a new edge ``(x, y)`` that remembers the original path
  ``x - v - y`` it stands for;
* case 2B -- a degree-2 vertex whose neighbours are already joined emits the
  triangle ``[x, v, y]`` and is deleted;
* case 3  -- when every degree is at least 3, a BFS finds a short cycle,
  which is emitted, and one of its edges is deleted.

Every emitted cycle is expanded back to original edge ids. Edge loads count
how many emitted cycles each working edge has joined; the five variants
differ only in how roots, cross edges and removed edges are chosen from
those loads.
"""

from __future__ import annotations

import heapq
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np

from .basis import Cycle, CycleBasis, participation_histogram
from .graph import BfsResult, ContractViolation, MultiGraph, cycle_from_cross_edge, iter_bfs

RootMode = Literal["random", "max-load"]
CrossEdgeMode = Literal["first", "through-root"]
RemovalStrategy = Literal["random", "max-load", "max-load-prefer-root", "softmax"]


@dataclass(frozen=True)
class VariantConfig:
    root: RootMode = "random"
    cross_edge: CrossEdgeMode = "first"
    removal: RemovalStrategy = "random"

    def __post_init__(self) -> None:
        if self.root not in ("random", "max-load"):
            raise ValueError(f"unknown root selection {self.root!r}")
        if self.cross_edge not in ("first", "through-root"):
            raise ValueError(f"unknown cross-edge mode {self.cross_edge!r}")
        if self.removal not in ("random", "max-load", "max-load-prefer-root", "softmax"):
            raise ValueError(f"unknown removal strategy {self.removal!r}")


VARIANTS: Dict[int, VariantConfig] = {
    0: VariantConfig("random", "first", "random"),
    1: VariantConfig("random", "first", "max-load"),
    2: VariantConfig("max-load", "first", "max-load"),
    3: VariantConfig("max-load", "through-root", "max-load-prefer-root"),
    4: VariantConfig("max-load", "through-root", "softmax"),
}


def variant(v: Union[int, VariantConfig]) -> VariantConfig:
    if isinstance(v, VariantConfig):
        return v
    try:
        return VARIANTS[int(v)]
    except KeyError:
        raise ValueError(f"unknown variant {v!r}; expected one of {sorted(VARIANTS)}") from None


class LoadState:
    """Per-edge loads of a working graph plus per-vertex load sums.

    The vertex load is the mean load over incident edges (a self-loop counts
    twice). Sums and degrees live in numpy arrays so the heaviest vertex can
    be found without a Python-level scan.
    """

    def __init__(self, g: MultiGraph) -> None:
        self.edge_load: Dict[int, int] = {e: 0 for e in g.edges()}
        size = g.vertex_bound
        self._sum = np.zeros(size)
        self._deg = np.zeros(size)
        self._live = np.zeros(size, dtype=bool)
        for v in g.vertices():
            self._deg[v] = g.degree(v)
            self._live[v] = True

    def __getitem__(self, e: int) -> int:
        return self.edge_load[e]

    def attach(self, e: int, u: int, v: int, load: int) -> None:
        self.edge_load[e] = load
        self._sum[u] += load
        self._sum[v] += load
        self._deg[u] += 1
        self._deg[v] += 1

    def detach(self, e: int, u: int, v: int) -> int:
        load = self.edge_load.pop(e)
        self._sum[u] -= load
        self._sum[v] -= load
        self._deg[u] -= 1
        self._deg[v] -= 1
        return load

    def increment(self, e: int, u: int, v: int, by: int = 1) -> None:
        self.edge_load[e] += by
        self._sum[u] += by
        self._sum[v] += by

    def kill_vertex(self, v: int) -> None:
        self._live[v] = False

    def vertex_load(self, v: int) -> float:
        if not self._live[v] or self._deg[v] == 0:
            raise ContractViolation(f"vertex load of {v} is undefined")
        return float(self._sum[v] / self._deg[v])

    def heaviest_vertices(self) -> List[int]:
        """Live vertices of positive degree whose mean incident load is maximal."""
        ok = self._live & (self._deg > 0)
        idx = np.flatnonzero(ok)
        if idx.size == 0:
            return []
        vals = self._sum[idx] / self._deg[idx]
        return idx[vals == vals.max()].tolist()


@dataclass
class RunStats:
    case1: int = 0
    case2a: int = 0
    case2b: int = 0
    case3: int = 0
    mu: int = 0
    load_histogram: Dict[int, int] = field(default_factory=dict)
    case3_lengths: List[int] = field(default_factory=list)
    case3_live_vertices: List[int] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return self.case1 + self.case2a + self.case2b + self.case3

    @property
    def max_case3_cycle_len(self) -> int:
        return max(self.case3_lengths, default=0)

    def case_shares(self) -> Dict[str, float]:
        """Percentage of iterations spent in each case."""
        total = self.iterations
        if total == 0:
            return {"case1": 0.0, "case2a": 0.0, "case2b": 0.0, "case3": 0.0}
        return {k: 100.0 * getattr(self, k) / total for k in ("case1", "case2a", "case2b", "case3")}

    def as_record(self) -> Dict[str, int]:
        return {
            "mu": self.mu,
            "case1": self.case1,
            "case2a": self.case2a,
            "case2b": self.case2b,
            "case3": self.case3,
            "max_case3_cycle_len": self.max_case3_cycle_len,
        }


# -- selection rules -----------------------------------------------------


def select_root(g: MultiGraph, loads: LoadState, mode: RootMode, rng: random.Random) -> int:
    if g.n == 0:
        raise ContractViolation("no live vertices")
    if mode == "random":
        verts = list(g.vertices())
        return verts[rng.randrange(len(verts))]
    if mode == "max-load":
        cands = loads.heaviest_vertices()
        if not cands:
            verts = list(g.vertices())
            return verts[rng.randrange(len(verts))]
        return cands[rng.randrange(len(cands))] if len(cands) > 1 else cands[0]
    raise ValueError(f"unknown root selection {mode!r}")


def select_cross_edge(b: BfsResult, mode: CrossEdgeMode) -> int:
    if not b.cross_edges:
        raise ContractViolation("BFS found no cross edge")
    if mode == "through-root":
        for e in b.cross_edges:
            if b.through_root(e):
                return e
    elif mode != "first":
        raise ValueError(f"unknown cross-edge mode {mode!r}")
    return b.cross_edges[0]


def removal_distribution(cycle_loads: Sequence[int], strategy: RemovalStrategy,
                         at_root: Optional[Sequence[bool]] = None) -> List[float]:
    """Probability of removing each cycle position under ``strategy``.

    ``at_root[i]`` says whether position ``i`` is incident to the BFS root;
    only the ``max-load-prefer-root`` rule looks at it.
    """
    k = len(cycle_loads)
    if k == 0:
        raise ContractViolation("empty cycle")
    if strategy == "random":
        return [1.0 / k] * k
    top = max(cycle_loads)
    if strategy == "softmax":
        # Offsetting by the max leaves the distribution unchanged.
        w = [2.0 ** (x - top) for x in cycle_loads]
        s = sum(w)
        return [x / s for x in w]
    best = [x == top for x in cycle_loads]
    if strategy == "max-load-prefer-root":
        if at_root is None:
            raise ValueError("max-load-prefer-root needs root incidence flags")
        rooted = [b and r for b, r in zip(best, at_root)]
        if any(rooted):
            best = rooted
    elif strategy != "max-load":
        raise ValueError(f"unknown removal strategy {strategy!r}")
    c = sum(best)
    return [1.0 / c if b else 0.0 for b in best]


def select_removal_edge(cycle: Sequence[int], loads: LoadState, strategy: RemovalStrategy,
                        rng: random.Random, g: Optional[MultiGraph] = None,
                        root: Optional[int] = None) -> int:
    at_root = None
    if strategy == "max-load-prefer-root":
        if g is None or root is None:
            raise ValueError("max-load-prefer-root needs the graph and the root")
        at_root = [root in g.endpoints(e) for e in cycle]
    probs = removal_distribution([loads[e] for e in cycle], strategy, at_root)
    live = [i for i, p in enumerate(probs) if p > 0]
    if len(live) == 1:
        return cycle[live[0]]
    return cycle[rng.choices(range(len(cycle)), weights=probs)[0]]


# -- the recursion -------------------------------------------------------


class CycleBasisBuilder:
    """Step-by-step reduction of a working copy of ``g``.

    Dispatch order is fixed: pending self-loops, then case 1, then case 2,
    then case 3, always taking the lowest eligible vertex id.
    """

    def __init__(self, g: MultiGraph, cfg: Union[int, VariantConfig] = 0,
                 seed: Optional[int] = None) -> None:
        self.original = g
        self.cfg = variant(cfg)
        self.rng = random.Random(seed)
        self.work = g.copy()
        self.loads = LoadState(self.work)
        # Oriented from endpoints(e)[0] to endpoints(e)[1].
        self.expansion: Dict[int, List[int]] = {e: [e] for e in g.edges()}
        self.cycles: List[Cycle] = []
        self.stats = RunStats()
        self._deg1: List[int] = []
        self._deg2: List[int] = []
        self._loops = [e for e, (u, v) in self.work.edge_items() if u == v]
        for v in list(self.work.vertices()):
            self._touch(v)

    # -- bookkeeping -----------------------------------------------------

    def _touch(self, v: int) -> None:
        d = self.work.degree(v)
        if d == 0:
            self.work.remove_vertex(v)
            self.loads.kill_vertex(v)
        elif d == 1:
            heapq.heappush(self._deg1, v)
        elif d == 2:
            heapq.heappush(self._deg2, v)

    def _drop_edge(self, e: int) -> Tuple[int, int]:
        u, v = self.work.remove_edge(e)
        self.loads.detach(e, u, v)
        del self.expansion[e]
        return u, v

    def _bump(self, e: int) -> None:
        u, v = self.work.endpoints(e)
        self.loads.increment(e, u, v)

    def _path(self, e: int, start: int) -> List[int]:
        a, _ = self.work.endpoints(e)
        p = self.expansion[e]
        return p if a == start else p[::-1]

    def _emit(self, working: Sequence[int], case: str) -> Cycle:
        counts: Counter = Counter()
        for e in working:
            counts.update(self.expansion[e])
        # Expansions of live edges are disjoint, so this is normally a no-op.
        edges = tuple(sorted(e for e, c in counts.items() if c % 2))
        cyc = Cycle(edges, case, self.stats.iterations, len(working))
        self.cycles.append(cyc)
        return cyc

    def _valid(self, v: int, d: int) -> bool:
        return self.work.has_vertex(v) and self.work.degree(v) == d

    def _two_edges(self, v: int) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        if not self._valid(v, 2):
            raise ContractViolation(f"vertex {v} does not have degree 2")
        items = list(self.work.incident(v).items())
        if len(items) != 2:
            raise ContractViolation(f"vertex {v} carries a self-loop")
        return items[0], items[1]

    # -- cases -----------------------------------------------------------

    def step_case1(self, v: int) -> None:
        if not self._valid(v, 1):
            raise ContractViolation(f"vertex {v} does not have degree 1")
        (e, x), = self.work.incident(v).items()
        self._drop_edge(e)
        self._touch(v)
        self._touch(x)
        self.stats.case1 += 1

    def step_case2a(self, v: int) -> int:
        """Contract ``v``; return the id of the new working edge."""
        (e1, x), (e2, y) = self._two_edges(v)
        if x == y or self.work.first_edge_between(x, y) is not None:
            raise ContractViolation(f"neighbours of {v} are already adjacent")
        path = self._path(e1, x) + self._path(e2, v)
        load = max(self.loads[e1], self.loads[e2])
        # Adding before removing keeps deg(x), deg(y) from dipping.
        ne = self.work.add_edge(x, y)
        self.loads.attach(ne, x, y, load)
        self.expansion[ne] = path
        self._drop_edge(e1)
        self._drop_edge(e2)
        self._touch(v)
        self.stats.case2a += 1
        return ne

    def step_case2b(self, v: int) -> Cycle:
        (e1, x), (e2, y) = self._two_edges(v)
        if x == y:
            working = [e1, e2]
        else:
            exy = self.work.first_edge_between(x, y)
            if exy is None:
                raise ContractViolation(f"neighbours of {v} are not adjacent")
            self._bump(exy)
            working = [e1, e2, exy]
        cyc = self._emit(working, "case2b")
        self._drop_edge(e1)
        self._drop_edge(e2)
        self._touch(v)
        self._touch(x)
        if y != x:
            self._touch(y)
        self.stats.case2b += 1
        return cyc

    def _step_loop(self, e: int) -> Cycle:
        cyc = self._emit([e], "case2b")
        u, _ = self._drop_edge(e)
        self._touch(u)
        self.stats.case2b += 1
        return cyc

    def find_cycle(self, root: int) -> List[int]:
        """Working-edge cycle chosen from a BFS at ``root`` per the cross-edge mode."""
        mode = self.cfg.cross_edge
        first = chosen = None
        res = None
        for res, e in iter_bfs(self.work, root):
            if first is None:
                first = e
            if mode == "first" or res.through_root(e):
                chosen = e
                break
        if chosen is None:
            chosen = first
        if chosen is None or res is None:
            raise AssertionError(f"no cycle reachable from root {root}")
        return cycle_from_cross_edge(res, chosen)

    def step_case3(self) -> Cycle:
        for v in self.work.vertices():
            if self.work.degree(v) < 3:
                raise ContractViolation(f"vertex {v} has degree {self.work.degree(v)} < 3")
        return self._case3()

    def _case3(self) -> Cycle:
        root = select_root(self.work, self.loads, self.cfg.root, self.rng)
        cycle = self.find_cycle(root)
        self.stats.case3_lengths.append(len(cycle))
        self.stats.case3_live_vertices.append(self.work.n)
        for e in cycle:
            self._bump(e)
        cyc = self._emit(cycle, "case3")
        r = select_removal_edge(cycle, self.loads, self.cfg.removal, self.rng, self.work, root)
        u, v = self._drop_edge(r)
        self._touch(u)
        self._touch(v)
        self.stats.case3 += 1
        return cyc

    def step(self) -> Optional[str]:
        """Apply one reduction; return its case name, or ``None`` when done."""
        if self._loops:
            self._step_loop(self._loops.pop(0))
            return "case2b"
        heap = self._deg1
        while heap:
            v = heap[0]
            if self._valid(v, 1):
                self.step_case1(v)
                return "case1"
            heapq.heappop(heap)
        heap = self._deg2
        while heap:
            v = heap[0]
            if self._valid(v, 2):
                (_, x), (_, y) = self._two_edges(v)
                if x != y and self.work.first_edge_between(x, y) is None:
                    self.step_case2a(v)
                    return "case2a"
                self.step_case2b(v)
                return "case2b"
            heapq.heappop(heap)
        if self.work.m == 0:
            return None
        self._case3()
        return "case3"

    def run(self) -> Tuple[CycleBasis, RunStats]:
        while self.step() is not None:
            pass
        basis = CycleBasis(self.cycles)
        counts = basis.participation()
        self.stats.mu = max(counts.values(), default=0)
        self.stats.load_histogram = participation_histogram(counts, self.original.edges())
        return basis, self.stats


def build_cycle_basis(g: MultiGraph, cfg: Union[int, VariantConfig] = 0,
                      seed: Optional[int] = None) -> Tuple[CycleBasis, RunStats]:
    """Cycle basis of ``g`` under the given variant; deterministic in ``seed``."""
    return CycleBasisBuilder(g, cfg, seed).run()


def short_cycle_bound(n: int) -> int:
    """Length bound ``2 * ceil(log2 n)`` for the first-cross-edge cycle."""
    return 2 * math.ceil(math.log2(n)) if n > 1 else 0
