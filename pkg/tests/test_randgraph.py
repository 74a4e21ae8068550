from __future__ import annotations

import random
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclebasis.graph import is_connected
from cyclebasis.randgraph import random_connected_regular, random_regular

from graphs import complete


def canonical(g):
    return sorted(tuple(sorted(g.endpoints(e))) for e in g.edges())


@settings(max_examples=120, deadline=None)
@given(st.integers(2, 60), st.integers(0, 9), st.integers(0, 2 ** 31))
def test_simple_and_regular(n, d, seed):
    if (n * d) % 2 or d >= n:
        with pytest.raises(ValueError):
            random_regular(n, d, seed)
        return
    g = random_regular(n, d, seed)
    assert g.n == n and g.m == n * d // 2
    assert all(g.degree(v) == d for v in g.vertices())
    pairs = canonical(g)
    assert len(pairs) == len(set(pairs))
    assert all(u != v for u, v in pairs)


def test_k4_is_unique():
    for seed in range(10):
        assert canonical(random_regular(4, 3, seed)) == canonical(complete(4))


def test_eight_three():
    for seed in range(20):
        g = random_regular(8, 3, seed)
        assert g.m == 12 and all(g.degree(v) == 3 for v in g.vertices())


def test_deterministic():
    assert canonical(random_regular(200, 8, 3)) == canonical(random_regular(200, 8, 3))
    assert [random_regular(50, 3, 9).endpoints(e) for e in range(75)] == \
        [random_regular(50, 3, 9).endpoints(e) for e in range(75)]
    assert canonical(random_regular(50, 3, 1)) != canonical(random_regular(50, 3, 2))


def test_accepts_random_instance():
    rng = random.Random(4)
    a = random_regular(30, 4, rng)
    b = random_regular(30, 4, rng)
    assert canonical(a) != canonical(b)


def test_large_d8_connected():
    for seed in range(100):
        g = random_regular(1024, 8, seed)
        assert is_connected(g)


def test_connected_variant():
    g = random_connected_regular(40, 3, 0)
    assert is_connected(g)


def test_roughly_uniform_on_six_vertices():
    # 3-regular graphs on 6 labelled vertices: 10 copies of K_{3,3} and 60 of the prism.
    counts = Counter()
    for seed in range(4000):
        g = random_regular(6, 3, seed)
        G = nx.Graph(canonical(g))
        counts["bip" if nx.is_bipartite(G) else "prism"] += 1
    share = counts["bip"] / 4000
    assert abs(share - 1 / 7) < 0.025
