"""Immutable undirected simple graph with neighbor, degree, and BFS queries.

Nodes are dense integers 0..n-1.  Adjacency is kept twice per node: a sorted
tuple (deterministic iteration order) and a frozenset (O(1) membership and
fast intersections).  Graphs are frozen after construction, so every query
below is a pure function and safe to call concurrently.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional

from .errors import InvalidPairError, MalformedInputError

Edge = tuple[int, int]


class Graph:
    """Undirected simple graph over nodes 0..node_count-1."""

    __slots__ = ("node_count", "edge_count", "_adj", "_adj_set", "skipped_self_loops")

    def __init__(self, node_count: int, adjacency: list[tuple[int, ...]],
                 skipped_self_loops: int = 0):
        self.node_count = node_count
        self._adj = tuple(adjacency)
        self._adj_set = tuple(frozenset(a) for a in adjacency)
        self.edge_count = sum(len(a) for a in adjacency) // 2
        self.skipped_self_loops = skipped_self_loops

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph)
                and self.node_count == other.node_count
                and self._adj == other._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"

    def check_node(self, u: int) -> None:
        if not (0 <= u < self.node_count):
            raise MalformedInputError(
                f"node {u} out of range [0, {self.node_count})")

    def neighbors(self, u: int) -> tuple[int, ...]:
        """Neighbors of u in ascending order (read-only view)."""
        self.check_node(u)
        return self._adj[u]

    def neighbor_set(self, u: int) -> frozenset[int]:
        self.check_node(u)
        return self._adj_set[u]

    def degree(self, u: int) -> int:
        self.check_node(u)
        return len(self._adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        self.check_node(u)
        self.check_node(v)
        return v in self._adj_set[u]

    def edges(self) -> list[Edge]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        return [(u, v) for u in range(self.node_count)
                for v in self._adj[u] if u < v]

    def common_neighbors(self, u: int, v: int) -> tuple[int, ...]:
        """Sorted intersection of the two neighbor sets."""
        if u == v:
            raise InvalidPairError(f"common_neighbors undefined for u == v == {u}")
        self.check_node(u)
        self.check_node(v)
        return tuple(sorted(self._adj_set[u] & self._adj_set[v]))

    def shortest_path_length(self, u: int, v: int) -> Optional[int]:
        """Unweighted BFS hop count from u to v; None when unreachable."""
        self.check_node(u)
        self.check_node(v)
        if u == v:
            return 0
        dist = {u: 0}
        queue = deque((u,))
        while queue:
            cur = queue.popleft()
            d = dist[cur] + 1
            for w in self._adj[cur]:
                if w == v:
                    return d
                if w not in dist:
                    dist[w] = d
                    queue.append(w)
        return None


def build_graph(edges: Iterable[Edge], node_count: int,
                strict: bool = True) -> Graph:
    """Build an immutable graph from an edge list.

    Duplicate edges collapse to one.  Self-loops raise in strict mode and are
    skipped (counted on the result) in lenient mode.  Endpoints must lie in
    [0, node_count).
    """
    if node_count < 0:
        raise MalformedInputError(f"node_count must be >= 0, got {node_count}")
    adj: list[set[int]] = [set() for _ in range(node_count)]
    skipped = 0
    for u, v in edges:
        if not (0 <= u < node_count) or not (0 <= v < node_count):
            raise MalformedInputError(
                f"edge ({u}, {v}) out of range for node_count {node_count}")
        if u == v:
            if strict:
                raise MalformedInputError(f"self-loop on node {u}")
            skipped += 1
            continue
        adj[u].add(v)
        adj[v].add(u)
    return Graph(node_count, [tuple(sorted(a)) for a in adj],
                 skipped_self_loops=skipped)
