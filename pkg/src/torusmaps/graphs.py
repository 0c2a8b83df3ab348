"""Small multigraph type plus the two-coloring and girth routines shared by
the map and certification code.

Vertices are ``0..n-1``; edges are stored as an ordered tuple of ``(u, v)``
pairs so loops and parallel edges survive round trips.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    name: str
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.n} vertices")

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(neighbor, edge index)`` incidences; a loop appears twice."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return tuple(tuple(a) for a in adj)

    def neighbors(self, v: int) -> set[int]:
        return {w for w, _ in self.adjacency[v]}

    def has_edge(self, u: int, v: int) -> bool:
        return any(w == v for w, _ in self.adjacency[u])

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_distances(self, 0)) == self.n

    def girth(self) -> float:
        return girth(self)


def bfs_distances(g: Graph, source: int, skip_edge: int | None = None) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w, e in g.adjacency[u]:
            if e == skip_edge or w in dist:
                continue
            dist[w] = dist[u] + 1
            queue.append(w)
    return dist


def girth(g: Graph) -> float:
    """Length of a shortest cycle; loops count 1, parallel edges 2, forests ``inf``."""
    best = math.inf
    seen_pairs: set[tuple[int, int]] = set()
    for u, v in g.edges:
        if u == v:
            return 1
        key = (min(u, v), max(u, v))
        if key in seen_pairs:
            best = 2
        seen_pairs.add(key)
    if best == 2:
        return 2
    # simple graph from here on
    for root in range(g.n):
        dist = {root: 0}
        parent_edge = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w, e in g.adjacency[u]:
                if e == parent_edge[u]:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent_edge[w] = e
                    queue.append(w)
                else:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


@dataclass(frozen=True)
class OddCycle:
    """Closed walk of odd length in a constraint graph: ``nodes[i]`` and
    ``nodes[i+1]`` (cyclically) are joined by edge ``labels[i]``."""

    nodes: tuple[int, ...]
    labels: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.labels)


def two_color(
    n: int, constraints: Sequence[tuple[int, int, int]]
) -> tuple[int, ...] | OddCycle:
    """2-color nodes ``0..n-1`` so every ``(u, v, label)`` constraint joins
    different colors, or return an odd cycle proving it impossible."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, v, label in constraints:
        if u == v:
            return OddCycle((u,), (label,))
        adj[u].append((v, label))
        adj[v].append((u, label))
    color = [-1] * n
    parent: list[tuple[int, int]] = [(-1, -1)] * n
    depth = [0] * n
    for root in range(n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, label in adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = (u, label)
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return _odd_cycle(u, w, label, parent, depth)
    return tuple(color)


def _odd_cycle(u, w, label, parent, depth) -> OddCycle:
    up_u: list[tuple[int, int]] = []  # (node, edge to parent)
    up_w: list[tuple[int, int]] = []
    a, b = u, w
    while depth[a] > depth[b]:
        up_u.append((a, parent[a][1]))
        a = parent[a][0]
    while depth[b] > depth[a]:
        up_w.append((b, parent[b][1]))
        b = parent[b][0]
    while a != b:
        up_u.append((a, parent[a][1]))
        a = parent[a][0]
        up_w.append((b, parent[b][1]))
        b = parent[b][0]
    lca = a
    # walk: lca -> ... -> u, then the conflict edge u -> w, then w -> ... -> lca
    nodes = [lca] + [x for x, _ in reversed(up_u)]
    labels = [e for _, e in reversed(up_u)]
    labels.append(label)
    nodes.extend(x for x, _ in up_w)
    labels.extend(e for _, e in up_w)
    return OddCycle(tuple(nodes), tuple(labels))


def check_odd_cycle(cycle: OddCycle, constraints: Sequence[tuple[int, int, int]]) -> bool:
    """Independent validation that ``cycle`` is an odd closed walk in the constraint graph."""
    if len(cycle.labels) % 2 == 0 or len(cycle.nodes) != len(cycle.labels):
        return False
    by_label = {label: (u, v) for u, v, label in constraints}
    k = len(cycle.nodes)
    for i, label in enumerate(cycle.labels):
        if label not in by_label:
            return False
        a, b = cycle.nodes[i], cycle.nodes[(i + 1) % k]
        if {a, b} != set(by_label[label]):
            return False
    return True


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("graph"):
        raise GraphFormatError("expected header line 'graph <name>'")
    name = lines[0][len("graph"):].strip() or "graph"
    edges: list[tuple[int, int]] = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {ln!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"negative vertex in {ln!r}")
        edges.append((u, v))
    n = 1 + max((max(e) for e in edges), default=-1)
    return Graph(name, n, tuple(edges))


def serialize_graph(g: Graph) -> str:
    out = [f"graph {g.name}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def graph_from_edges(name: str, edges: Iterable[tuple[int, int]], n: int | None = None) -> Graph:
    edges = tuple((int(u), int(v)) for u, v in edges)
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph(name, n, edges)
