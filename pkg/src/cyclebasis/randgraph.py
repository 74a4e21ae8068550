"""Seeded random d-regular simple graphs."""

from __future__ import annotations

import random
from collections import defaultdict
from typing import List, Optional, Set, Tuple, Union

from .graph import MultiGraph, is_connected

MAX_RESTARTS = 10_000


def _pairing(n: int, d: int, rng: random.Random) -> Optional[Set[Tuple[int, int]]]:
    # Pair stubs; stubs whose pairing would collide are re-shuffled among
    # themselves until they all fit or no legal pair is left.
    edges: Set[Tuple[int, int]] = set()
    stubs = list(range(n)) * d
    while stubs:
        pending = defaultdict(int)
        rng.shuffle(stubs)
        it = iter(stubs)
        for a, b in zip(it, it):
            if a > b:
                a, b = b, a
            if a != b and (a, b) not in edges:
                edges.add((a, b))
            else:
                pending[a] += 1
                pending[b] += 1
        if not _completable(edges, pending):
            return None
        stubs = [v for v, k in pending.items() for _ in range(k)]
    return edges


def _completable(edges, pending) -> bool:
    if not pending:
        return True
    keys = list(pending)
    for i, a in enumerate(keys):
        for b in keys[:i]:
            x, y = (a, b) if a < b else (b, a)
            if (x, y) not in edges:
                return True
    return False


def random_regular(n: int, d: int, seed: Union[int, random.Random, None] = None) -> MultiGraph:
    """Simple ``d``-regular graph on ``n`` vertices.

    Stub pairing with collision repair (the networkx scheme); a full
    restart happens only when the leftover stubs cannot be paired. Edge
    insertion order is shuffled so adjacency order carries no vertex-id bias.
    """
    if n < 1 or d < 0 or (n * d) % 2 or d >= n:
        raise ValueError(f"no simple {d}-regular graph on {n} vertices")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(MAX_RESTARTS):
        edges = _pairing(n, d, rng) if d else set()
        if edges is not None:
            ordered: List[Tuple[int, int]] = sorted(edges)
            rng.shuffle(ordered)
            return MultiGraph.from_edges(n, ordered)
    raise RuntimeError(f"pairing failed {MAX_RESTARTS} times for n={n}, d={d}")


def random_connected_regular(n: int, d: int, seed: Union[int, random.Random, None] = None,
                             max_tries: int = 1000) -> MultiGraph:
    """Like :func:`random_regular`, redrawing from the same stream until connected."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(max_tries):
        g = random_regular(n, d, rng)
        if is_connected(g):
            return g
    raise RuntimeError(f"no connected {d}-regular sample on {n} vertices in {max_tries} tries")
