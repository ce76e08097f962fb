"""Nest points, greedy nest-point elimination and a brute-force beta-cycle finder."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import SizeLimitExceeded
from .hypergraph import Edge, Hypergraph

BETA_CYCLE_MAX_NODES = 10
BETA_CYCLE_MAX_EDGES = 10


@dataclass(frozen=True)
class NestPointSequence:
    order: tuple
    residual: Hypergraph


@dataclass(frozen=True)
class BetaCycle:
    nodes: tuple
    edges: tuple

    def is_valid(self) -> bool:
        t = len(self.nodes)
        if t < 3 or len(self.edges) != t:
            return False
        if len(set(self.nodes)) != t or len(set(self.edges)) != t:
            return False
        for i, v in enumerate(self.nodes):
            owners = {j for j, e in enumerate(self.edges) if v in e}
            if owners != {(i - 1) % t, i}:
                return False
        return True


def incident_chain(g: Hypergraph, v: int) -> Optional[list[Edge]]:
    """Edges through ``v`` sorted by size if they form a chain under inclusion, else None."""
    edges = sorted(g.incident_edges(v), key=len)
    for small, big in zip(edges, edges[1:]):
        if len(small) == len(big) or not set(small).issubset(big):
            return None
    return edges


def is_nest_point(g: Hypergraph, v: int) -> bool:
    return incident_chain(g, v) is not None


def nest_points(g: Hypergraph) -> list[int]:
    return [v for v in g.sorted_nodes() if is_nest_point(g, v)]


def nest_point_sequence(g: Hypergraph, max_len: Optional[int] = None) -> NestPointSequence:
    """Repeatedly remove the smallest-id nest point until none is left (or ``max_len`` reached)."""
    order = []
    while g.nodes and (max_len is None or len(order) < max_len):
        v = next((u for u in g.sorted_nodes() if is_nest_point(g, u)), None)
        if v is None:
            break
        order.append(v)
        g = g.remove_node(v)
    return NestPointSequence(tuple(order), g)


def replay_sequence(g: Hypergraph, order) -> Optional[int]:
    """Index of the first entry of ``order`` that is not a nest point when reached, else None."""
    for i, v in enumerate(order):
        if v not in g.nodes or not is_nest_point(g, v):
            return i
        g = g.remove_node(v)
    return None


def is_beta_acyclic(g: Hypergraph) -> bool:
    return nest_point_sequence(g).residual.is_empty()


def find_beta_cycle(g: Hypergraph) -> Optional[BetaCycle]:
    """Exhaustive search for a beta-cycle; intended as an oracle on small inputs.

    A cyclic sequence of distinct edges e_1..e_t (t >= 3) is a beta-cycle as
    soon as every consecutive pair shares a node lying in no other edge of the
    sequence; such private nodes are automatically distinct.
    """
    if len(g.nodes) > BETA_CYCLE_MAX_NODES or len(g.edges) > BETA_CYCLE_MAX_EDGES:
        raise SizeLimitExceeded(
            f"find_beta_cycle is limited to {BETA_CYCLE_MAX_NODES} nodes and {BETA_CYCLE_MAX_EDGES} edges"
        )
    edges = g.sorted_edges()
    sets = [frozenset(e) for e in edges]
    m = len(edges)

    def private(path, a, b):
        common = sets[a] & sets[b]
        for k in path:
            if k != a and k != b:
                common = common - sets[k]
        return common

    def search(path):
        last = path[-1]
        # every already-closed pair must keep a private node
        for a, b in zip(path, path[1:]):
            if not private(path, a, b):
                return None
        if len(path) >= 3:
            closing = private(path, last, path[0])
            if closing:
                nodes = [min(private(path, path[i - 1], path[i])) for i in range(1, len(path))]
                nodes.append(min(closing))
                # nodes[i] sits between path[i] and path[i+1]; rotate to the (e_{i-1}, e_i) convention
                nodes = nodes[-1:] + nodes[:-1]
                return BetaCycle(tuple(nodes), tuple(edges[k] for k in path))
        for nxt in range(path[0] + 1, m):
            if nxt in path or not (sets[last] & sets[nxt]):
                continue
            found = search(path + [nxt])
            if found is not None:
                return found
        return None

    for start in range(m):
        found = search([start])
        if found is not None:
            return found
    return None
