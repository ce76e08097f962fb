"""Seeded random hypergraph generators for property tests and acceptance sweeps."""

from __future__ import annotations

import numpy as np

from .acyclicity import is_beta_acyclic
from .hypergraph import Hypergraph


def _relabel(edges, n, rng) -> Hypergraph:
    perm = rng.permutation(n) + 1
    return Hypergraph.from_edges([[int(perm[v]) for v in e] for e in edges], nodes=[int(p) for p in perm])


def random_beta_acyclic(rng: np.random.Generator, n_nodes: int, max_rank: int, max_chain: int = 3) -> Hypergraph:
    """Add nodes one at a time, each as a nest point on a random chain, then relabel at random.

    A chain can create remnants that break acyclicity of the earlier part, so
    candidates are checked and redrawn until the result is beta-acyclic.
    """
    while True:
        edges: set = set()
        for v in range(n_nodes):
            if v == 0:
                continue
            k = int(rng.integers(0, max_chain + 1))
            pool = list(range(v))
            rng.shuffle(pool)
            size = 0
            for _ in range(k):
                room = min(max_rank - 1, len(pool)) - size
                if room <= 0:
                    break
                size += int(rng.integers(1, room + 1))
                edges.add(tuple(sorted(pool[:size] + [v])))
        g = _relabel(edges, n_nodes, rng)
        if is_beta_acyclic(g):
            return g


def random_hypergraph(rng: np.random.Generator, n_nodes: int, n_edges: int, max_rank: int) -> Hypergraph:
    """Up to ``n_edges`` distinct random edges of size 2..max_rank over nodes 1..n_nodes."""
    top = min(max_rank, n_nodes)
    edges = set()
    for _ in range(n_edges):
        size = int(rng.integers(2, top + 1))
        edges.add(tuple(sorted(int(x) + 1 for x in rng.choice(n_nodes, size=size, replace=False))))
    return Hypergraph.from_edges(sorted(edges), nodes=range(1, n_nodes + 1))


def beta_acyclic_corpus(count: int, seed: int = 0, max_nodes: int = 12, max_rank: int = 5) -> list[Hypergraph]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(2, max_nodes + 1))
        r = int(rng.integers(2, max_rank + 1))
        out.append(random_beta_acyclic(rng, n, r))
    return out


def general_corpus(count: int, seed: int = 0, max_nodes: int = 6, max_edges: int = 6, max_rank: int = 4) -> list[Hypergraph]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(2, max_nodes + 1))
        m = int(rng.integers(2, max_edges + 1))
        out.append(random_hypergraph(rng, n, m, max_rank))
    return out
