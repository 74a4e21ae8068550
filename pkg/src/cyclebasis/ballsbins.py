"""Balls-into-bins proxies for load growth under the cycle basis heuristics.

Each bin stands for an edge, each round of balls for one chosen cycle of
length ``k = 2 * ceil(log2(2m/3))``, and removed bins for deleted edges.
``process1`` removes the three heaviest bins every round; ``process2``
delays removal to the end of each halving epoch. ``coupled_p1_p1a_p2``
runs the three-way coupling under which the surviving loads are ordered
pointwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Literal, Optional, Sequence

import numpy as np


def balls_per_cycle(m: float) -> int:
    """``2 * ceil(log2(2m/3))`` for ``m`` live buckets."""
    n = 2.0 * m / 3.0
    return 2 * math.ceil(math.log2(n))


def _top(loads: np.ndarray, count: int, rng: np.random.Generator) -> np.ndarray:
    """Indices of the ``count`` largest entries, ties broken uniformly."""
    if count >= loads.size:
        return np.arange(loads.size)
    keys = loads + rng.random(loads.size)
    return np.argpartition(-keys, count - 1)[:count]


@dataclass
class Process1Result:
    max_load: int
    trajectory: List[dict]
    final_loads: np.ndarray
    early_stop: bool = False


def process1(M: int, m_min: int = 12, seed: Optional[int] = None) -> Process1Result:
    """Process 1: each round loads the 3 heaviest plus ``k - 3`` random buckets.

    After adding the balls the 3 heaviest buckets are removed. Integer
    loads plus a fresh uniform jitter give random tie-breaking.
    """
    if M <= m_min:
        raise ValueError(f"need M > m_min, got M={M}, m_min={m_min}")
    rng = np.random.default_rng(seed)
    loads = np.zeros(M, dtype=np.int64)
    m = M
    trajectory = []
    it = 0
    early = False
    while m > m_min:
        k = balls_per_cycle(m)
        if k > m or k < 3:
            early = True
            break
        live = loads[:m]
        heavy = _top(live, 3, rng)
        _swap_to_end(live, heavy)
        others = rng.choice(m - 3, size=k - 3, replace=False)
        live[m - 3:] += 1
        live[others] += 1
        drop = _top(live, 3, rng)
        _swap_to_end(live, drop)
        m -= 3
        it += 1
        trajectory.append({"iteration": it, "m": m, "k": k, "max_load": int(loads[:m].max())})
    final = loads[:m].copy()
    return Process1Result(int(final.max()) if m else 0, trajectory, final, early)


def _swap_to_end(live: np.ndarray, idx: np.ndarray) -> None:
    """Permute ``live`` in place so the entries at ``idx`` occupy the tail."""
    m = live.size
    lo = m - len(idx)
    chosen = sorted(int(i) for i in idx)
    outside = [i for i in chosen if i < lo]
    free = [t for t in range(lo, m) if t not in chosen]
    for i, t in zip(outside, free):
        live[i], live[t] = live[t], live[i]


@dataclass
class EpochStats:
    epoch: int
    m: int
    k: int
    mu: float
    rounds: int
    bad: int
    mean_increment: float
    max_load: int


@dataclass
class Process2Result:
    max_load: int
    epochs: List[EpochStats]
    final_loads: np.ndarray
    early_stop: bool = False


def process2(M: int, m_min: int = 12, seed: Optional[int] = None, c: float = 0.1,
             balls: Literal["k", "k-3"] = "k") -> Process2Result:
    """Process 2: removal of the heaviest buckets delayed to each epoch's end.

    Within epoch ``j`` the bucket counter drops by 3 per round until it
    reaches ``M / 2**j``; then the ``r`` heaviest buckets go. A bucket is
    *bad* in an epoch when its increment is at most ``c * k / 6``.
    """
    if M <= m_min:
        raise ValueError(f"need M > m_min, got M={M}, m_min={m_min}")
    if balls not in ("k", "k-3"):
        raise ValueError(f"balls must be 'k' or 'k-3', got {balls!r}")
    rng = np.random.default_rng(seed)
    loads = np.zeros(M, dtype=np.int64)
    m = M
    j = 1
    epochs: List[EpochStats] = []
    early = False
    while m > m_min:
        m_old = m
        k = balls_per_cycle(m)
        thrown = k if balls == "k" else k - 3
        if k > m_old or thrown < 0:
            early = True
            break
        live = loads[:m_old]
        start = live.copy()
        rounds = 0
        while m > M / 2 ** j:
            live[rng.choice(m_old, size=thrown, replace=False)] += 1
            m -= 3
            rounds += 1
        inc = live - start
        mu = k / 6
        epochs.append(EpochStats(
            epoch=j, m=m_old, k=k, mu=mu, rounds=rounds,
            bad=int(np.count_nonzero(inc <= c * mu)),
            mean_increment=float(inc.mean()),
            max_load=int(live.max()),
        ))
        r = min(m_old - m, m_old)
        if r:
            drop = _top(live, r, rng)
            keep = np.ones(m_old, dtype=bool)
            keep[drop] = False
            survivors = live[keep].copy()
            loads[:survivors.size] = survivors
        m = m_old - r
        j += 1
    final = loads[:m].copy()
    return Process2Result(int(final.max()) if m else 0, epochs, final, early)


def bad_bucket_bound(m_j: float, c: float) -> float:
    """Threshold ``(3/2)**alpha * m_j**(1 - alpha/2)`` on the bad-bucket count."""
    a = bad_bucket_exponent(c)
    return 1.5 ** a * m_j ** (1 - a / 2)


def bad_bucket_exponent(c: float) -> float:
    return (1 - c) ** 2 / (6 * math.log(2))


def max_load_floor(c: float, M: float) -> float:
    """``c**2/6 * (1 - c/2) * log2(M)**2``, the w.h.p. floor on the final max load."""
    if not 0 < c < 0.16:
        raise ValueError(f"c must lie in (0, 0.16), got {c}")
    if M < 1:
        raise ValueError(f"M must be positive, got {M}")
    return c * c / 6 * (1 - c / 2) * math.log2(M) ** 2


# -- three-way coupling --------------------------------------------------


@dataclass
class CoupledResult:
    p1: np.ndarray
    p1a: np.ndarray
    p2: np.ndarray
    total_thrown: int = 0
    p1a_before_delete: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))


def coupled_p1_p1a_p2(m: int, k: int, seed: Optional[int] = None,
                      initial: Optional[Sequence[int]] = None) -> CoupledResult:
    """Run P1, P1a and P2 for ``m/6`` rounds on shared randomness.

    Every round draws ``k - 3`` distinct labels from all ``m`` bins. P1a and
    P2 drop a ball into each drawn bin. P1 first removes its three heaviest
    bins and P1a marks its three heaviest unmarked bins; P1's live bins are
    then matched to P1a's unmarked bins by load rank, and a drawn label is
    routed to the matched P1 bin, or to a uniformly random live P1 bin when
    the label is already marked in P1a. The returned vectors are the
    surviving loads sorted in non-increasing order.
    """
    if m < 0 or m % 6:
        raise ValueError(f"m must be a non-negative multiple of 6, got {m}")
    if m and not 3 <= k <= m + 3:
        raise ValueError(f"k must satisfy 3 <= k <= m + 3, got {k}")
    rng = np.random.default_rng(seed)
    base = np.zeros(m, dtype=np.int64) if initial is None else np.asarray(initial, dtype=np.int64).copy()
    if base.shape != (m,):
        raise ValueError("initial load vector must have length m")
    p1 = base.copy()
    shared = base.copy()  # identical placements for P1a and P2
    p1_live = np.ones(m, dtype=bool)
    marked = np.zeros(m, dtype=bool)
    thrown = 0
    for _ in range(m // 6):
        labels = rng.choice(m, size=k - 3, replace=False) if k > 3 else np.zeros(0, dtype=np.int64)
        live_idx = np.flatnonzero(p1_live)
        p1_live[live_idx[_top(p1[live_idx], 3, rng)]] = False
        free_idx = np.flatnonzero(~marked)
        marked[free_idx[_top(shared[free_idx], 3, rng)]] = True
        # Rank-match survivors of P1 with unmarked bins of P1a (heaviest first).
        a = np.flatnonzero(p1_live)
        b = np.flatnonzero(~marked)
        a = a[np.argsort(-p1[a], kind="stable")]
        b = b[np.argsort(-shared[b], kind="stable")]
        match = np.full(m, -1, dtype=np.int64)
        match[b] = a
        for lab in labels:
            shared[lab] += 1
            dest = match[lab]
            if dest < 0:
                dest = a[rng.integers(a.size)]
            p1[dest] += 1
            thrown += 1
    l_p1 = np.sort(p1[p1_live])[::-1]
    l_p1a = np.sort(shared[~marked])[::-1]
    l_p2 = np.sort(shared)[::-1][m // 2:] if m else shared[:0]
    return CoupledResult(l_p1, l_p1a, l_p2, thrown, shared.copy())
