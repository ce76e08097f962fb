"""Small named hypergraphs used as regression fixtures."""

from __future__ import annotations

from .cuts import dense_facet_family
from .hypergraph import Hypergraph


def pointed_example() -> Hypergraph:
    """Pointed at node 1; its hull description is not totally unimodular."""
    return Hypergraph.from_edges([(1, 2), (2, 3, 4), (1, 2, 3, 4)])


def path_example() -> Hypergraph:
    """Beta-acyclic with a non-totally-unimodular extended description."""
    return Hypergraph.from_edges([(1, 2), (2, 3), (3, 4), (1, 2, 3), (1, 2, 3, 4)])


def example_a() -> Hypergraph:
    return Hypergraph.from_edges([(1, 2), (1, 2, 3), (1, 2, 4), (1, 2, 3, 4)])


def example_b() -> Hypergraph:
    return Hypergraph.from_edges([(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 3, 4)])


def triangle() -> Hypergraph:
    return Hypergraph.from_edges([(1, 2), (2, 3), (1, 3)])


def hypertriangle() -> Hypergraph:
    """Nodes 4..7 are nest points in any order; removing them leaves the triangle on 1, 2, 3."""
    return Hypergraph.from_edges([(1, 2, 4), (1, 2, 4, 7), (2, 3, 5), (1, 3, 6), (3, 6)])


def named_instances() -> dict:
    return {
        "pointed": pointed_example(),
        "path": path_example(),
        "example-a": example_a(),
        "example-b": example_b(),
        "triangle": triangle(),
        "hypertriangle": hypertriangle(),
        "dense-2": dense_facet_family(2)[0],
        "dense-3": dense_facet_family(3)[0],
    }
