"""Expansion of a hypergraph along a nest-point sequence and the per-edge markers used by the formulation.

For an edge ``e`` of the expansion, ``v(e)`` is the first node of the order in
``e`` and ``p(e) = e - v(e)``. ``e`` is in ``M`` when some other edge strictly
inside ``e`` also contains ``v(e)``; then ``f(e)`` is the largest such edge
and ``f'(e) = f(e) - v(e)``. Singleton remnants are node variables and are
represented as 1-tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .acyclicity import nest_point_sequence, replay_sequence
from .errors import AmbiguousF, BoundViolation, NotANestPointSequence
from .hypergraph import Edge, Hypergraph


@dataclass(frozen=True)
class EdgeStructure:
    edge: Edge
    v_of_e: int
    p_of_e: tuple
    in_M: bool
    f_of_e: Optional[Edge] = None
    f_prime: Optional[tuple] = None


@dataclass(frozen=True)
class ExpandedHypergraph:
    base: Hypergraph
    order: tuple
    expanded: Hypergraph
    added: frozenset

    def tail(self) -> "ExpandedHypergraph":
        """Drop the first node of the order from both hypergraphs."""
        v = self.order[0]
        base = self.base.remove_node(v)
        expanded = self.expanded.remove_node(v)
        return ExpandedHypergraph(base, self.order[1:], expanded, expanded.edges - base.edges)


def residues(e: Edge, order) -> list[Edge]:
    """Sets of size >= 2 among e - {v1}, e - {v1, v2}, ... along ``order``."""
    out = []
    rest = set(e)
    for v in order:
        if v in rest:
            rest.discard(v)
            if len(rest) < 2:
                break
            out.append(tuple(sorted(rest)))
    return out


def expand(g: Hypergraph, order=None) -> ExpandedHypergraph:
    if order is None:
        order = nest_point_sequence(g).order
    order = tuple(order)
    bad = replay_sequence(g, order)
    if bad is not None:
        raise NotANestPointSequence(bad, order[bad])
    edges = set(g.edges)
    for e in g.edges:
        edges.update(residues(e, order))
    expanded = Hypergraph(g.nodes, frozenset(edges))
    x = ExpandedHypergraph(g, order, expanded, frozenset(edges - g.edges))
    limit = (max(g.rank, 2) - 2) * len(order) + len(g.edges)
    if len(edges) > limit:
        raise BoundViolation(f"expansion has {len(edges)} edges, bound is {limit}")
    return x


def is_expanded(g: Hypergraph, order) -> bool:
    order = tuple(order)
    if replay_sequence(g, order) is not None:
        return False
    return all(r in g.edges for e in g.edges for r in residues(e, order))


def _as_var(nodes) -> tuple:
    return tuple(sorted(nodes))


def edge_structure(x: ExpandedHypergraph) -> dict:
    """Map every expanded edge that meets the order to its :class:`EdgeStructure`.

    Edges disjoint from the order belong to the residual hypergraph and are skipped.
    """
    position = {v: i for i, v in enumerate(x.order)}
    edges = x.expanded.edges
    out = {}
    for e in sorted(edges):
        hits = [v for v in e if v in position]
        if not hits:
            continue
        v = min(hits, key=position.__getitem__)
        p = _as_var(u for u in e if u != v)
        below = [g for g in edges if len(g) < len(e) and v in g and set(g).issubset(e)]
        if not below:
            out[e] = EdgeStructure(e, v, p, False)
            continue
        size = max(len(g) for g in below)
        top = [g for g in below if len(g) == size]
        if len(top) > 1:
            raise AmbiguousF(f"edge {e} has several maximal sub-edges through {v}: {sorted(top)}")
        f = top[0]
        out[e] = EdgeStructure(e, v, p, True, f, _as_var(u for u in f if u != v))
    return out
