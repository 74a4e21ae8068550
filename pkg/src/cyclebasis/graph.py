"""Mutable undirected multigraph with stable ids, BFS, and edge-list I/O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union


class GraphError(Exception):
    """Base class for graph errors."""


class StructuralError(GraphError):
    """Raised for unknown vertex or edge ids."""


class ContractViolation(GraphError):
    """Raised when an operation's precondition does not hold."""


class EdgeListParseError(GraphError):
    def __init__(self, path: str, lineno: int, message: str) -> None:
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


class MultiGraph:
    """Undirected multigraph with parallel edges and self-loops.

    Vertex and edge ids are consecutive integers handed out by
    :meth:`add_vertex` / :meth:`add_edge` and never reused. Adjacency of a
    vertex is an insertion-ordered ``{edge_id: other_endpoint}`` mapping;
    a self-loop occupies one adjacency slot but contributes 2 to the degree.
    """

    def __init__(self) -> None:
        self._adj: Dict[int, Dict[int, int]] = {}
        self._deg: Dict[int, int] = {}
        self._edges: Dict[int, Tuple[int, int]] = {}
        self._pairs: Dict[Tuple[int, int], Dict[int, None]] = {}
        self._next_vertex = 0
        self._next_edge = 0

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "MultiGraph":
        g = cls()
        for _ in range(n):
            g.add_vertex()
        for u, v in edges:
            g.add_edge(u, v)
        return g

    # -- queries ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def vertex_bound(self) -> int:
        """One more than the largest vertex id ever issued."""
        return self._next_vertex

    @property
    def edge_bound(self) -> int:
        return self._next_edge

    def vertices(self) -> Iterator[int]:
        return iter(self._adj)

    def edges(self) -> Iterator[int]:
        return iter(self._edges)

    def edge_items(self) -> Iterator[Tuple[int, Tuple[int, int]]]:
        return iter(self._edges.items())

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, e: int) -> bool:
        return e in self._edges

    def endpoints(self, e: int) -> Tuple[int, int]:
        try:
            return self._edges[e]
        except KeyError:
            raise StructuralError(f"unknown edge {e}") from None

    def other(self, e: int, v: int) -> int:
        a, b = self.endpoints(e)
        if v == a:
            return b
        if v == b:
            return a
        raise ContractViolation(f"vertex {v} is not an endpoint of edge {e}")

    def degree(self, v: int) -> int:
        try:
            return self._deg[v]
        except KeyError:
            raise StructuralError(f"unknown vertex {v}") from None

    def incident(self, v: int) -> Dict[int, int]:
        """Read-only view of ``{edge_id: other_endpoint}`` for ``v``."""
        try:
            return self._adj[v]
        except KeyError:
            raise StructuralError(f"unknown vertex {v}") from None

    def edges_between(self, u: int, v: int) -> List[int]:
        """Live edge ids joining ``u`` and ``v``, oldest first."""
        key = (u, v) if u <= v else (v, u)
        return list(self._pairs.get(key, ()))

    def first_edge_between(self, u: int, v: int) -> Optional[int]:
        key = (u, v) if u <= v else (v, u)
        bucket = self._pairs.get(key)
        if not bucket:
            return None
        return next(iter(bucket))

    # -- mutation --------------------------------------------------------

    def add_vertex(self) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        self._adj[v] = {}
        self._deg[v] = 0
        return v

    def add_edge(self, u: int, v: int) -> int:
        if u not in self._adj:
            raise StructuralError(f"unknown vertex {u}")
        if v not in self._adj:
            raise StructuralError(f"unknown vertex {v}")
        e = self._next_edge
        self._next_edge += 1
        self._edges[e] = (u, v)
        self._adj[u][e] = v
        self._adj[v][e] = u
        self._deg[u] += 1
        self._deg[v] += 1
        key = (u, v) if u <= v else (v, u)
        self._pairs.setdefault(key, {})[e] = None
        return e

    def remove_edge(self, e: int) -> Tuple[int, int]:
        try:
            u, v = self._edges.pop(e)
        except KeyError:
            raise StructuralError(f"unknown edge {e}") from None
        del self._adj[u][e]
        if u != v:
            del self._adj[v][e]
        self._deg[u] -= 1
        self._deg[v] -= 1
        key = (u, v) if u <= v else (v, u)
        bucket = self._pairs[key]
        del bucket[e]
        if not bucket:
            del self._pairs[key]
        return u, v

    def remove_vertex(self, v: int) -> None:
        if v not in self._adj:
            raise StructuralError(f"unknown vertex {v}")
        if self._deg[v]:
            raise ContractViolation(f"vertex {v} has degree {self._deg[v]}")
        del self._adj[v]
        del self._deg[v]

    def copy(self) -> "MultiGraph":
        g = MultiGraph()
        g._adj = {v: dict(nbrs) for v, nbrs in self._adj.items()}
        g._deg = dict(self._deg)
        g._edges = dict(self._edges)
        g._pairs = {k: dict(b) for k, b in self._pairs.items()}
        g._next_vertex = self._next_vertex
        g._next_edge = self._next_edge
        return g

    # -- consistency -----------------------------------------------------

    def audit(self) -> None:
        """Check every internal index against the edge map; raise on mismatch."""
        deg: Dict[int, int] = {v: 0 for v in self._adj}
        slots: Dict[int, Dict[int, int]] = {v: {} for v in self._adj}
        pairs: Dict[Tuple[int, int], List[int]] = {}
        for e, (u, v) in self._edges.items():
            if u not in self._adj or v not in self._adj:
                raise GraphError(f"edge {e} has a dead endpoint")
            if e >= self._next_edge:
                raise GraphError(f"edge id {e} beyond counter")
            deg[u] += 1
            deg[v] += 1
            slots[u][e] = v
            slots[v][e] = u
            pairs.setdefault((min(u, v), max(u, v)), []).append(e)
        for v, nbrs in self._adj.items():
            if nbrs != slots[v]:
                raise GraphError(f"adjacency of {v} disagrees with edge map")
            if self._deg[v] != deg[v]:
                raise GraphError(f"degree of {v} is {self._deg[v]}, expected {deg[v]}")
        if {k: sorted(b) for k, b in self._pairs.items()} != {k: sorted(b) for k, b in pairs.items()}:
            raise GraphError("pair index disagrees with edge map")
        if set(self._deg) != set(self._adj):
            raise GraphError("degree table and vertex set differ")

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"


def connected_components(g: MultiGraph) -> List[List[int]]:
    seen: Dict[int, None] = {}
    comps = []
    for s in g.vertices():
        if s in seen:
            continue
        seen[s] = None
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.incident(u).values():
                if w not in seen:
                    seen[w] = None
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def is_connected(g: MultiGraph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def cycle_space_dimension(g: MultiGraph) -> int:
    return g.m - g.n + len(connected_components(g))


# -- breadth-first search ------------------------------------------------


@dataclass
class BfsResult:
    """Level-order search tree plus non-tree ("cross") edges.

    ``branch[v]`` is the child of the root whose subtree contains ``v``
    (the root maps to itself); a cross edge closes a cycle through the
    root exactly when its endpoints lie in different branches.
    """

    root: int
    parent: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    depth: Dict[int, int] = field(default_factory=dict)
    branch: Dict[int, int] = field(default_factory=dict)
    cross_edges: List[int] = field(default_factory=list)
    cross_ends: Dict[int, Tuple[int, int]] = field(default_factory=dict)

    def through_root(self, e: int) -> bool:
        u, w = self.cross_ends[e]
        return u == self.root or w == self.root or self.branch[u] != self.branch[w]


def iter_bfs(g: MultiGraph, root: int) -> Iterator[Tuple[BfsResult, int]]:
    """Run BFS from ``root`` and yield ``(partial_result, cross_edge)``.

    The partial result is updated in place; callers may stop early once the
    cross edge they want has shown up. Each cross edge is reported once, at
    the moment it is first scanned from an endpoint whose other end is
    already discovered.
    """
    if not g.has_vertex(root):
        raise StructuralError(f"unknown vertex {root}")
    res = BfsResult(root=root)
    for e in _walk(g, res):
        yield res, e


def bfs(g: MultiGraph, root: int) -> BfsResult:
    if not g.has_vertex(root):
        raise StructuralError(f"unknown vertex {root}")
    res = BfsResult(root=root)
    for _ in _walk(g, res):
        pass
    return res


def _walk(g: MultiGraph, res: BfsResult) -> Iterator[int]:
    adj = g._adj
    root = res.root
    parent = res.parent
    depth = res.depth
    branch = res.branch
    cross_ends = res.cross_ends
    depth[root] = 0
    branch[root] = root
    queue = deque([root])
    while queue:
        u = queue.popleft()
        pe = parent[u][1] if u != root else -1
        du = depth[u] + 1
        bu = branch[u]
        for e, w in adj[u].items():
            if e == pe or e in cross_ends:
                continue
            if w in depth:
                cross_ends[e] = (u, w)
                res.cross_edges.append(e)
                yield e
            else:
                parent[w] = (u, e)
                depth[w] = du
                branch[w] = w if u == root else bu
                queue.append(w)


def tree_cycle(parent: Dict[int, Tuple[int, int]], depth: Dict[int, int],
               e: int, u: int, w: int) -> List[int]:
    """Edges of the cycle closed by non-tree edge ``e = (u, w)`` in a rooted tree."""
    up: List[int] = []
    down: List[int] = []
    a, b = u, w
    while depth[a] > depth[b]:
        pa, ea = parent[a]
        up.append(ea)
        a = pa
    while depth[b] > depth[a]:
        pb, eb = parent[b]
        down.append(eb)
        b = pb
    while a != b:
        pa, ea = parent[a]
        pb, eb = parent[b]
        up.append(ea)
        down.append(eb)
        a, b = pa, pb
    return [e] + up + down[::-1]


def cycle_from_cross_edge(b: BfsResult, e: int) -> List[int]:
    """Closed cycle formed by cross edge ``e`` and the tree paths to the LCA.

    The list starts with ``e`` and walks ``u -> LCA -> w``.
    """
    if e not in b.cross_ends:
        raise ContractViolation(f"edge {e} is not a cross edge of this BFS")
    u, w = b.cross_ends[e]
    return tree_cycle(b.parent, b.depth, e, u, w)


# -- edge-list text format -----------------------------------------------


def parse_edge_list(text: str, source: str = "<string>") -> MultiGraph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (0-based)."""
    header: Optional[Tuple[int, int]] = None
    pairs: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(source, lineno, f"expected two integers, got {raw.strip()!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(source, lineno, f"non-integer token in {raw.strip()!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListParseError(source, lineno, "negative header value")
            header = (a, b)
            continue
        if not (0 <= a < header[0] and 0 <= b < header[0]):
            raise EdgeListParseError(source, lineno, f"vertex out of range 0..{header[0] - 1}")
        pairs.append((a, b))
        if len(pairs) > header[1]:
            raise EdgeListParseError(source, lineno, f"more than {header[1]} edges")
    if header is None:
        raise EdgeListParseError(source, 0, "missing 'n m' header")
    if len(pairs) != header[1]:
        raise EdgeListParseError(source, len(text.splitlines()),
                                 f"header declares {header[1]} edges, found {len(pairs)}")
    return MultiGraph.from_edges(header[0], pairs)


def read_edge_list(path: Union[str, Path]) -> MultiGraph:
    path = Path(path)
    return parse_edge_list(path.read_text(), str(path))


def format_edge_list(g: MultiGraph) -> str:
    """Serialise ``g`` with vertices renumbered densely in id order.

    Edges are written in edge-id order, so re-reading reproduces the same
    edge ids whenever ``g`` was itself built densely.
    """
    index = {v: i for i, v in enumerate(g.vertices())}
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{index[u]} {index[v]}" for _, (u, v) in g.edge_items())
    return "\n".join(lines) + "\n"


def write_edge_list(g: MultiGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(format_edge_list(g))
