"""Shared oracle helpers: independent brute-force recomputations used to
check the library's fast paths.  Everything here works from raw edge lists
only, never through the Graph class internals."""

from __future__ import annotations

import math

import numpy as np


def random_edge_list(n: int, n_draws: int, seed: int) -> list[tuple[int, int]]:
    """n_draws random (u, v) draws over n nodes, self-loops filtered."""
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, n, size=(n_draws, 2))
    return [(int(u), int(v)) for u, v in draws if u != v]


def oracle_neighbor_sets(edges, n: int) -> list[set[int]]:
    """Neighbor sets by linear scan of the input edge list."""
    sets: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u != v:
            sets[u].add(v)
            sets[v].add(u)
    return sets


def oracle_all_pairs_distances(edges, n: int) -> list[list[float]]:
    """Floyd-Warshall over the edge list; math.inf for unreachable."""
    dist = [[0.0 if i == j else math.inf for j in range(n)] for i in range(n)]
    for u, v in edges:
        if u != v:
            dist[u][v] = 1.0
            dist[v][u] = 1.0
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == math.inf:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def oracle_jaccard(nbrs, u, v):
    union = nbrs[u] | nbrs[v]
    if not union:
        return 0.0
    return len(nbrs[u] & nbrs[v]) / len(union)


def oracle_adamic_adar(nbrs, u, v):
    return sum(1.0 / math.log(len(nbrs[w])) for w in sorted(nbrs[u] & nbrs[v]))


def oracle_cnc(nbrs, dist_uv, n, u, v, alpha):
    cn = len(nbrs[u] & nbrs[v])
    dist_term = 0.0 if dist_uv == math.inf else n / dist_uv
    return alpha * cn + (1.0 - alpha) * dist_term


def oracle_auc(scored) -> float:
    """O(P*N) pairwise comparison with 0.5 credit for ties."""
    pos = [s.score for s in scored if s.label == 1]
    neg = [s.score for s in scored if s.label == 0]
    total = 0.0
    for p in pos:
        for q in neg:
            if p > q:
                total += 1.0
            elif p == q:
                total += 0.5
    return total / (len(pos) * len(neg))


def oracle_average_precision(scored) -> float:
    """Step-sum of precision at each positive rank, same tie-break rule as
    the library (descending score, then ascending (u, v))."""
    ranked = sorted(scored, key=lambda s: (-s.score, s.u, s.v))
    positives = sum(1 for s in scored if s.label == 1)
    hits = 0
    total = 0.0
    for rank, s in enumerate(ranked, start=1):
        if s.label == 1:
            hits += 1
            total += hits / rank
    return total / positives


def trapezoid_area(points) -> float:
    area = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        area += (x1 - x0) * (y0 + y1) / 2.0
    return area
