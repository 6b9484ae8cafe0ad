"""Deterministic synthetic graph generators for desk-scale benchmarks.

All generators draw from numpy's PCG64 (a named, fully specified 64-bit
generator with published reference outputs), never the platform default
PRNG, so a (kind, params, seed) tuple produces the identical graph on every
platform.  erdos_renyi and stochastic_block share one stream protocol: one
uniform draw per unordered pair (u, v), u < v, in lexicographic order, so
an SBM with p_in == p_out == p is the identical graph to ER(n, p, seed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import InvalidParameterError
from .graph import Graph, build_graph


@dataclass(frozen=True)
class GeneratorSpec:
    """Provenance record for a generated graph; round-trips through JSON."""

    kind: str  # erdos_renyi | barabasi_albert | stochastic_block
    n: int
    seed: int
    params: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "n": self.n, "seed": self.seed,
                "params": dict(self.params)}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "GeneratorSpec":
        return cls(kind=d["kind"], n=int(d["n"]), seed=int(d["seed"]),
                   params=dict(d["params"]))


def _pairwise_edges(n: int, prob_row, rng: np.random.Generator) -> list[tuple[int, int]]:
    # One uniform per pair (u, v), u < v, in lexicographic order.
    edges = []
    for u in range(n - 1):
        draws = rng.random(n - 1 - u)
        probs = prob_row(u)
        for j in np.nonzero(draws < probs)[0]:
            edges.append((u, u + 1 + int(j)))
    return edges


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """Each unordered pair is an edge independently with probability p."""
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    if not (0.0 <= p <= 1.0):
        raise InvalidParameterError(f"p must be in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    edges = _pairwise_edges(n, lambda u: p, rng)
    return build_graph(edges, n)


def stochastic_block(n: int, k: int, p_in: float, p_out: float,
                     seed: int) -> tuple[Graph, list[int]]:
    """Planted-community graph; returns (graph, block assignment).

    Nodes go round-robin into k blocks (block of node i is i mod k).
    Intra-block pairs edge with p_in, inter-block with p_out.
    """
    if n < 1 or not (1 <= k <= n):
        raise InvalidParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    for name, p in (("p_in", p_in), ("p_out", p_out)):
        if not (0.0 <= p <= 1.0):
            raise InvalidParameterError(f"{name} must be in [0, 1], got {p}")
    blocks = [i % k for i in range(n)]
    rng = np.random.default_rng(seed)

    def prob_row(u: int) -> np.ndarray:
        same = np.array([blocks[u] == blocks[v] for v in range(u + 1, n)])
        return np.where(same, p_in, p_out)

    edges = _pairwise_edges(n, prob_row, rng)
    return build_graph(edges, n), blocks


def barabasi_albert(n: int, m: int, seed: int) -> Graph:
    """Preferential attachment growth from an m-clique.

    Each new node attaches to m distinct existing nodes drawn proportional
    to degree.  Edge count is exactly m(m-1)/2 + (n-m)*m.
    """
    if not (1 <= m < n):
        raise InvalidParameterError(f"need 1 <= m < n, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    edges = [(u, v) for u in range(m) for v in range(u + 1, m)]
    # Degree-proportional sampling via the repeated-endpoints list.
    repeated: list[int] = [u for e in edges for u in e]
    if m == 1:
        repeated = [0]  # degree-0 seed node must still be attachable
    for i in range(m, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(repeated[int(rng.integers(len(repeated)))])
        for t in sorted(targets):
            edges.append((t, i))
            repeated.append(t)
            repeated.append(i)
        if m == 1 and i == 1:
            repeated = [t for e in edges for t in e]  # drop the seed placeholder
    return build_graph(edges, n)


def generate(spec: GeneratorSpec):
    """Dispatch on spec.kind; returns Graph (and blocks for stochastic_block)."""
    if spec.kind == "erdos_renyi":
        return erdos_renyi(spec.n, spec.params["p"], spec.seed)
    if spec.kind == "barabasi_albert":
        return barabasi_albert(spec.n, spec.params["m"], spec.seed)
    if spec.kind == "stochastic_block":
        g, _ = stochastic_block(spec.n, spec.params["k"], spec.params["p_in"],
                                spec.params["p_out"], spec.seed)
        return g
    raise InvalidParameterError(f"unknown generator kind: {spec.kind!r}")
