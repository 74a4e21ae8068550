"""Reference bases and graph metrics: spanning-tree bases, minimum bases, Cheeger."""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np

from .basis import Cycle, CycleBasis
from .gf2 import GF2Eliminator, to_vector
from .graph import MultiGraph, connected_components, cycle_space_dimension, tree_cycle

CHEEGER_MAX_N = 26


def fundamental_basis(g: MultiGraph, policy: Literal["bfs", "dfs"] = "bfs",
                      seed: Optional[int] = None) -> CycleBasis:
    """One cycle per non-tree edge of a spanning forest.

    Each component is rooted at a vertex drawn with ``seed`` (lowest id when
    ``seed`` is None). Disconnected graphs yield the per-component bases
    concatenated.
    """
    if policy not in ("bfs", "dfs"):
        raise ValueError(f"unknown spanning-tree policy {policy!r}")
    rng = random.Random(seed) if seed is not None else None
    cycles: List[Cycle] = []
    for comp in connected_components(g):
        root = min(comp) if rng is None else comp[rng.randrange(len(comp))]
        parent, depth, order = _spanning_tree(g, root, policy)
        tree = {pe for _, pe in parent.values()}
        done = set()
        for u in order:
            for e, w in g.incident(u).items():
                if e in tree or e in done:
                    continue
                done.add(e)
                edges = tree_cycle(parent, depth, e, u, w)
                cycles.append(Cycle(tuple(sorted(edges)), "tree", len(cycles), len(edges)))
    return CycleBasis(cycles)


def _spanning_tree(g: MultiGraph, root: int, policy: str):
    parent: Dict[int, Tuple[int, int]] = {}
    depth = {root: 0}
    order = []
    if policy == "bfs":
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for e, w in g.incident(u).items():
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = (u, e)
                    queue.append(w)
    else:
        stack = [root]
        seen = set()
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            order.append(u)
            for e, w in reversed(list(g.incident(u).items())):
                if w not in seen:
                    # Later pushes win, so the parent is the last discoverer.
                    depth[w] = depth[u] + 1
                    parent[w] = (u, e)
                    stack.append(w)
    return parent, depth, order


# -- minimum-weight (shortest total length) basis ------------------------


def horton_candidates(g: MultiGraph) -> List[Tuple[int, Tuple[int, ...]]]:
    """Horton's candidate cycles ``P(v,x) + (x,y) + P(y,v)``, deduplicated.

    Paths come from one BFS tree per vertex. Only candidates whose two tree
    paths meet solely at ``v`` are kept. The list is sorted by length, then
    lexicographically by the sorted edge tuple.
    """
    seen = set()
    out = []
    for v in g.vertices():
        parent: Dict[int, Tuple[int, int]] = {}
        depth = {v: 0}
        branch = {v: v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for e, w in g.incident(u).items():
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = (u, e)
                    branch[w] = w if u == v else branch[u]
                    queue.append(w)
        tree_edges = {pe for _, pe in parent.values()}
        for e, (x, y) in g.edge_items():
            if e in tree_edges or x not in depth:
                continue
            if x != v and y != v and branch[x] == branch[y]:
                continue
            key = tuple(sorted(tree_cycle(parent, depth, e, x, y)))
            if key not in seen:
                seen.add(key)
                out.append((len(key), key))
    out.sort()
    return out


def min_weight_cycle_basis(g: MultiGraph) -> CycleBasis:
    """Basis of least total length, by greedy selection over Horton candidates."""
    dim = cycle_space_dimension(g)
    elim = GF2Eliminator()
    cycles: List[Cycle] = []
    if dim == 0:
        return CycleBasis(cycles)
    for length, key in horton_candidates(g):
        if elim.add(to_vector(key)):
            cycles.append(Cycle(key, "horton", len(cycles), length))
            if len(cycles) == dim:
                break
    return CycleBasis(cycles)


# -- Cheeger constant ----------------------------------------------------


def cheeger_exact(g: MultiGraph, chunk_bits: int = 20) -> Fraction:
    """``min |boundary(S)| / |S|`` over nonempty ``S`` with ``|S| <= n/2``.

    Exhaustive. Subsets that avoid the last vertex are enumerated in
    vectorised blocks; the others are covered by complementation, using
    ``min(|S|, n - |S|)`` as denominator. Self-loops never cross a cut.
    """
    n = g.n
    if n > CHEEGER_MAX_N:
        raise ValueError(f"exact Cheeger enumeration supports n <= {CHEEGER_MAX_N}, got {n}")
    if n < 2:
        raise ValueError("Cheeger constant needs at least two vertices")
    index = {v: i for i, v in enumerate(g.vertices())}
    pairs = np.array([(index[u], index[v]) for _, (u, v) in g.edge_items() if u != v],
                     dtype=np.int64).reshape(-1, 2)
    total = 1 << (n - 1)
    block = 1 << min(chunk_bits, n - 1)
    best_num, best_den = None, None
    for start in range(0, total, block):
        s = np.arange(start, min(start + block, total), dtype=np.int64)
        if start == 0:
            s = s[1:]
        boundary = np.zeros(s.shape, dtype=np.int64)
        for a, b in pairs:
            boundary += ((s >> a) ^ (s >> b)) & 1
        size = np.bitwise_count(s).astype(np.int64)
        den = np.minimum(size, n - size)
        # Compare boundary/den exactly by cross-multiplying against the running best.
        ratio = boundary / den
        i = int(np.argmin(ratio))
        cand = ratio[i]
        ties = np.flatnonzero(ratio <= cand * (1 + 1e-12))
        for j in ties:
            num, d = int(boundary[j]), int(den[j])
            if best_num is None or num * best_den < best_num * d:
                best_num, best_den = num, d
    return Fraction(best_num, best_den)
