"""Immutable hypergraphs with canonical edges, plus a line-oriented text format.

Edges are stored as strictly increasing tuples of integer node ids, so set
equality of edges is tuple equality and the edge set can be a plain frozenset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import InvariantViolation, ParseError, UnknownNode

Edge = tuple  # strictly increasing tuple of node ids, length >= 2


def make_edge(nodes: Iterable[int]) -> Edge:
    items = [int(v) for v in nodes]
    edge = tuple(sorted(set(items)))
    if len(edge) != len(items):
        raise InvariantViolation(f"edge {items} repeats a node (loop)")
    if len(edge) < 2:
        raise InvariantViolation(f"edge {items} has fewer than two nodes")
    return edge


class RemovalStats(NamedTuple):
    merged: int   # edges that collapsed onto an edge already present
    dropped: int  # edges whose remnant had fewer than two nodes


@dataclass(frozen=True)
class Hypergraph:
    nodes: frozenset
    edges: frozenset

    def __post_init__(self):
        nodes = frozenset(int(v) for v in self.nodes)
        edges = frozenset(self.edges)
        for e in edges:
            if not isinstance(e, tuple) or len(e) < 2 or list(e) != sorted(set(e)):
                raise InvariantViolation(f"edge {e!r} is not in canonical form")
            missing = [v for v in e if v not in nodes]
            if missing:
                raise InvariantViolation(f"edge {e} uses undeclared nodes {missing}")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], nodes: Iterable[int] = ()) -> "Hypergraph":
        canon = [make_edge(e) for e in edges]
        if len(set(canon)) != len(canon):
            raise InvariantViolation("duplicate (parallel) edges")
        all_nodes = set(int(v) for v in nodes)
        for e in canon:
            all_nodes.update(e)
        return cls(frozenset(all_nodes), frozenset(canon))

    @classmethod
    def empty(cls) -> "Hypergraph":
        return cls(frozenset(), frozenset())

    def __repr__(self):
        return f"Hypergraph(nodes={sorted(self.nodes)}, edges={self.sorted_edges()})"

    def sorted_nodes(self) -> list[int]:
        return sorted(self.nodes)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def is_empty(self) -> bool:
        return not self.nodes and not self.edges

    @property
    def rank(self) -> int:
        """Largest edge cardinality; 0 for an edgeless hypergraph."""
        return max((len(e) for e in self.edges), default=0)

    def incident_edges(self, v: int) -> list[Edge]:
        if v not in self.nodes:
            raise UnknownNode(v)
        return [e for e in self.edges if v in e]

    def remove_node_with_stats(self, v: int) -> tuple["Hypergraph", RemovalStats]:
        if v not in self.nodes:
            raise UnknownNode(v)
        remnants = [tuple(u for u in e if u != v) for e in self.edges]
        kept = [r for r in remnants if len(r) >= 2]
        new_edges = frozenset(kept)
        stats = RemovalStats(merged=len(kept) - len(new_edges), dropped=len(remnants) - len(kept))
        return Hypergraph(self.nodes - {v}, new_edges), stats

    def remove_node(self, v: int) -> "Hypergraph":
        return self.remove_node_with_stats(v)[0]

    def remove_nodes(self, order: Iterable[int]) -> "Hypergraph":
        g = self
        for v in order:
            g = g.remove_node(v)
        return g

    def maximal_edges(self) -> frozenset:
        sets = {e: set(e) for e in self.edges}
        return frozenset(e for e in self.edges if not any(sets[e] < sets[f] for f in self.edges))

    def union(self, other: "Hypergraph") -> "Hypergraph":
        return Hypergraph(self.nodes | other.nodes, self.edges | other.edges)

    def intersection(self, other: "Hypergraph") -> "Hypergraph":
        return Hypergraph(self.nodes & other.nodes, self.edges & other.edges)

    def to_json(self) -> dict:
        return {"nodes": self.sorted_nodes(), "edges": [list(e) for e in self.sorted_edges()]}


def serialize(g: Hypergraph) -> str:
    lines = []
    if g.nodes:
        lines.append("nodes " + " ".join(str(v) for v in g.sorted_nodes()))
    for e in g.sorted_edges():
        lines.append("edge " + " ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def _parse_json(text: str) -> Hypergraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object with 'nodes' and 'edges'")
    nodes = data.get("nodes", [])
    edges = data.get("edges", [])
    if not isinstance(nodes, list) or not isinstance(edges, list):
        raise ParseError("'nodes' and 'edges' must be lists")
    for e in edges:
        if not isinstance(e, list) or not all(isinstance(v, int) and v >= 0 for v in e):
            raise ParseError(f"bad edge {e!r}")
        if len(e) < 2:
            raise ParseError(f"edge {e!r} has fewer than two nodes")
    if not all(isinstance(v, int) and v >= 0 for v in nodes):
        raise ParseError("node ids must be non-negative integers")
    return _build(nodes if "nodes" in data else None, [(e, None) for e in edges])


def _build(declared, edge_lines) -> Hypergraph:
    seen = set()
    canon = []
    for nodes, lineno in edge_lines:
        where = f" (line {lineno})" if lineno else ""
        try:
            e = make_edge(nodes)
        except InvariantViolation as exc:
            raise InvariantViolation(f"{exc}{where}") from None
        if e in seen:
            raise InvariantViolation(f"duplicate edge {list(e)}{where}")
        if declared is not None:
            unknown = [v for v in e if v not in declared]
            if unknown:
                raise InvariantViolation(f"edge {list(e)} uses undeclared nodes {unknown}{where}")
        seen.add(e)
        canon.append(e)
    nodes = set(declared) if declared is not None else {v for e in canon for v in e}
    return Hypergraph(frozenset(nodes), frozenset(canon))


def parse(text: str) -> Hypergraph:
    """Parse the line format (``nodes``/``edge`` lines, ``#`` comments) or its JSON mirror."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    declared = None
    edge_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = line.split()
        keyword = tokens[0]
        ids = []
        col = line.index(keyword) + len(keyword)
        for tok in tokens[1:]:
            col = line.index(tok, col)
            if not tok.isdigit():
                raise ParseError(f"expected a non-negative integer node id, got {tok!r}", lineno, col + 1)
            ids.append(int(tok))
            col += len(tok)
        if keyword == "nodes":
            declared = (declared or set()) | set(ids)
        elif keyword == "edge":
            if len(ids) < 2:
                raise ParseError("an edge needs at least two nodes", lineno, len(line.rstrip()) + 1)
            edge_lines.append((ids, lineno))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno, line.index(keyword) + 1)
    return _build(declared, edge_lines)


def load(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
