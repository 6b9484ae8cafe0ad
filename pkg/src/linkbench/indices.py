"""Neighborhood similarity scores for node pairs.

Four pure functions of (graph, pair): Jaccard coefficient, Adamic-Adar
index, common-neighbor centrality, and the raw common-neighbor count.
Adamic-Adar sums in ascending neighbor id so results are bit-reproducible.
"""

from __future__ import annotations

import math

from .errors import InvalidPairError, InvalidParameterError
from .graph import Graph

DEFAULT_CNC_ALPHA = 0.8


def _check_pair(g: Graph, u: int, v: int) -> None:
    g.check_node(u)
    g.check_node(v)
    if u == v:
        raise InvalidPairError(f"index undefined for identical nodes u == v == {u}")


def jaccard(g: Graph, u: int, v: int) -> float:
    """|Γ(u) ∩ Γ(v)| / |Γ(u) ∪ Γ(v)|, with 0 for an empty union."""
    _check_pair(g, u, v)
    nu, nv = g.neighbor_set(u), g.neighbor_set(v)
    union = len(nu | nv)
    if union == 0:
        return 0.0
    return len(nu & nv) / union


def adamic_adar(g: Graph, u: int, v: int) -> float:
    """Sum of 1/ln(degree(w)) over common neighbors w.

    A common neighbor has degree >= 2 by construction (it adjoins both u and
    v), so ln(degree) is never zero; asserted rather than guarded.
    """
    _check_pair(g, u, v)
    common = g.neighbor_set(u) & g.neighbor_set(v)
    total = 0.0
    for w in sorted(common):
        dw = g.degree(w)
        assert dw >= 2, "common neighbor with degree < 2 is impossible"
        total += 1.0 / math.log(dw)
    return total


def common_neighbor_count(g: Graph, u: int, v: int) -> float:
    """|Γ(u) ∩ Γ(v)| as a real-valued score."""
    _check_pair(g, u, v)
    return float(len(g.neighbor_set(u) & g.neighbor_set(v)))


def common_neighbor_centrality(g: Graph, u: int, v: int,
                               alpha: float = DEFAULT_CNC_ALPHA) -> float:
    """alpha * |Γ(u) ∩ Γ(v)| + (1 - alpha) * N / d(u, v).

    Unreachable pairs contribute 0 for the distance term (the d -> infinity
    limit of N/d).
    """
    _check_pair(g, u, v)
    if not (0.0 <= alpha <= 1.0):
        raise InvalidParameterError(f"alpha must be in [0, 1], got {alpha}")
    cn = len(g.neighbor_set(u) & g.neighbor_set(v))
    d = g.shortest_path_length(u, v)
    dist_term = 0.0 if d is None else g.node_count / d
    return alpha * cn + (1.0 - alpha) * dist_term
