"""Extended running-intersection cuts, their redundancy filter, and a family of dense facets.

An extended running-intersection inequality (ERI) is centered at an edge
``e0`` with neighbor edges ``e_k``. The intersections ``e0 & e_k`` are put in a
running-intersection ordering, which gives each one an overlap set ``N_k``
with its predecessors; a witness ``w_k`` (empty, a node, or an edge inside
``N_k``) is then subtracted per neighbor::

    -sum z[w_k] + sum_{v in e0 uncovered} z_v + sum z[e_k] - z[e0] <= omega - 1

with ``omega`` = #uncovered nodes of ``e0`` + #neighbors whose ``N_k`` is empty.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import networkx as nx

from .errors import BadParameter, InvalidW
from .formulation import LinearInequality, le
from .hypergraph import Edge, Hypergraph

EXHAUSTIVE_RIP_LIMIT = 8


@dataclass(frozen=True)
class RunningIntersectionOrdering:
    sets: tuple     # ordered family, each a sorted tuple
    n_sets: tuple   # overlap of each set with the union of its predecessors
    indices: tuple  # position of each ordered set in the input family

    def is_valid(self) -> bool:
        return _check_order(self.sets) is not None


def _check_order(sets: Sequence) -> Optional[tuple]:
    """Overlap sets if ``sets`` is a running-intersection ordering, else None."""
    seen: set = set()
    out = []
    for k, p in enumerate(sets):
        p = set(p)
        n = p & seen
        if k and not any(n <= set(sets[j]) for j in range(k)):
            return None
        out.append(tuple(sorted(n)))
        seen |= p
    return tuple(out)


def _ordering(family, perm) -> Optional[RunningIntersectionOrdering]:
    sets = tuple(tuple(sorted(family[i])) for i in perm)
    n_sets = _check_order(sets)
    if n_sets is None:
        return None
    return RunningIntersectionOrdering(sets, n_sets, tuple(perm))


def rip_ordering(family: Sequence) -> Optional[RunningIntersectionOrdering]:
    """Running-intersection ordering of ``family``, or None if it has none.

    Builds a maximum-weight spanning tree on pairwise intersection sizes and
    reads off a breadth-first order from the first set; small families fall
    back to trying every permutation when that order fails the check.
    """
    family = [frozenset(p) for p in family]
    if not family or any(not p for p in family):
        raise BadParameter("family must be nonempty with nonempty members")
    m = len(family)
    graph = nx.Graph()
    graph.add_nodes_from(range(m))
    for i, j in itertools.combinations(range(m), 2):
        graph.add_edge(i, j, weight=len(family[i] & family[j]))
    tree = nx.maximum_spanning_tree(graph)
    perm = [0]
    frontier = [0]
    seen = {0}
    while frontier:
        nxt = []
        for u in frontier:
            for w in sorted(tree.neighbors(u)):
                if w not in seen:
                    seen.add(w)
                    perm.append(w)
                    nxt.append(w)
        frontier = nxt
    found = _ordering(family, perm)
    if found is not None or m > EXHAUSTIVE_RIP_LIMIT:
        return found
    for perm in itertools.permutations(range(m)):
        found = _ordering(family, perm)
        if found is not None:
            return found
    return None


@dataclass(frozen=True)
class EriSpec:
    center: Edge
    neighbors: tuple  # in running-intersection order
    n_sets: tuple     # N(e0 & e_k) per neighbor
    w: tuple          # witness per neighbor: () or a sorted tuple of nodes

    @classmethod
    def build(cls, center, neighbors, w=None) -> "EriSpec":
        """Order ``neighbors`` by a running-intersection ordering of their intersections with ``center``.

        ``w`` is aligned with ``neighbors`` as given; it defaults to empty witnesses.
        """
        center = tuple(sorted(center))
        neighbors = [tuple(sorted(e)) for e in neighbors]
        w = [tuple(sorted(x)) if x else () for x in (w or [()] * len(neighbors))]
        if len(w) != len(neighbors):
            raise InvalidW("one witness per neighbor is required")
        if not neighbors:
            raise BadParameter("at least one neighbor is required")
        if len(set(neighbors)) != len(neighbors) or center in neighbors:
            raise BadParameter("neighbors must be distinct edges different from the center")
        inter = [set(center) & set(e) for e in neighbors]
        if not all(inter):
            raise BadParameter("every neighbor must meet the center")
        order = rip_ordering(inter)
        if order is None:
            raise BadParameter("center intersections have no running-intersection ordering")
        idx = order.indices
        return cls(center, tuple(neighbors[i] for i in idx), order.n_sets, tuple(w[i] for i in idx))

    @property
    def intersections(self) -> tuple:
        return tuple(tuple(sorted(set(self.center) & set(e))) for e in self.neighbors)

    @property
    def uncovered(self) -> tuple:
        covered = set().union(*self.neighbors)
        return tuple(v for v in self.center if v not in covered)

    @property
    def omega(self) -> int:
        return len(self.uncovered) + sum(1 for n in self.n_sets if not n)

    def validate(self, g: Optional[Hypergraph] = None) -> None:
        for e, n, w in zip(self.neighbors, self.n_sets, self.w):
            if not set(w) <= set(n):
                raise InvalidW(f"witness {w} of neighbor {e} is not inside N = {n}")
            # an empty witness on a nonempty overlap yields an invalid cut
            if bool(w) != bool(n):
                raise InvalidW(f"neighbor {e} has N = {n}; its witness must be empty exactly when N is")
            if g is not None and w:
                if len(w) == 1 and w[0] not in g.nodes:
                    raise InvalidW(f"witness {w} is not a node of the hypergraph")
                if len(w) > 1 and w not in g.edges:
                    raise InvalidW(f"witness {w} is not an edge of the hypergraph")
        if g is not None:
            for e in (self.center,) + self.neighbors:
                if e not in g.edges:
                    raise BadParameter(f"{e} is not an edge of the hypergraph")


def eri_inequality(spec: EriSpec, g: Optional[Hypergraph] = None) -> LinearInequality:
    spec.validate(g)
    terms = [(-1, w) for w in spec.w if w]
    terms += [(1, v) for v in spec.uncovered]
    terms += [(1, e) for e in spec.neighbors]
    terms.append((-1, spec.center))
    row = le(terms, spec.omega - 1, "eri")
    if row.coefficient_sum() != row.rhs:
        raise AssertionError(f"coefficient sum of {row} differs from its right-hand side")
    return row


def redundancy_filter(spec: EriSpec, g: Hypergraph) -> bool:
    """False when one of the sufficient redundancy conditions applies (drop the cut)."""
    inter = [set(p) for p in spec.intersections]
    n_sets = [set(n) for n in spec.n_sets]
    w = [set(x) for x in spec.w]
    K = range(len(inter))
    for k, kk in itertools.permutations(K, 2):
        if inter[k] <= inter[kk]:
            return False
    if any(len(p) <= 1 for p in inter):
        return False
    for k, kk in itertools.combinations(K, 2):
        common = n_sets[k] & n_sets[kk]
        if w[k] <= common and w[kk] <= common and w[k] != w[kk]:
            return False
    for k in K:
        for p in g.edges:
            if w[k] < set(p) <= n_sets[k]:
                return False
    return True


def _witness_candidates(n: tuple, g: Hypergraph) -> list:
    if not n:
        return [()]
    nodes = [(v,) for v in n]
    edges = [e for e in g.sorted_edges() if set(e) <= set(n)]
    return nodes + edges


def eri_specs(g: Hypergraph, max_neighbors: int = 3, max_center_card: Optional[int] = None):
    """Every ERI spec with at most ``max_neighbors`` neighbors, centers of bounded size."""
    if max_center_card is None:
        max_center_card = g.rank
    edges = g.sorted_edges()
    for center in edges:
        if len(center) > max_center_card:
            continue
        touching = [e for e in edges if e != center and set(e) & set(center)]
        for size in range(1, max_neighbors + 1):
            for neighbors in itertools.combinations(touching, size):
                inter = [set(center) & set(e) for e in neighbors]
                order = rip_ordering(inter)
                if order is None:
                    continue
                ordered = tuple(neighbors[i] for i in order.indices)
                choices = [_witness_candidates(n, g) for n in order.n_sets]
                for w in itertools.product(*choices):
                    yield EriSpec(center, ordered, order.n_sets, tuple(w))


def enumerate_eri(
    g: Hypergraph,
    max_neighbors: int = 3,
    max_center_card: Optional[int] = None,
    filtered: bool = True,
) -> list[LinearInequality]:
    out: dict = {}
    for spec in eri_specs(g, max_neighbors, max_center_card):
        if filtered and not redundancy_filter(spec, g):
            continue
        row = eri_inequality(spec, g)
        out.setdefault(row.key(), row)
    return list(out.values())


def dense_facet_family(n: int) -> tuple[Hypergraph, LinearInequality]:
    """Chain of n blocks whose facet has a nonzero coefficient on every edge.

    Node ``v^i_j`` (block i, position j) gets id ``10 * i + j``.
    """
    if not isinstance(n, int) or n < 2:
        raise BadParameter(f"n must be an integer >= 2, got {n!r}")

    def v(i, j):
        return 10 * i + j

    blocks = {}
    for i in range(1, n + 1):
        if i == 1:
            blocks[i] = [3, 4, 7, 8]
        elif i == n:
            blocks[i] = [1, 2, 5, 6]
        else:
            blocks[i] = list(range(1, 9))
    H = [(v(i, 3), v(i, 4), v(i + 1, 1), v(i + 1, 2)) for i in range(1, n)]
    small = []
    for i in range(1, n + 1):
        if i > 1:
            small += [(v(i, 1), v(i, 2), v(i, 5)), (v(i, 1), v(i, 2), v(i, 6))]
        if i < n:
            small += [(v(i, 3), v(i, 4), v(i, 7)), (v(i, 3), v(i, 4), v(i, 8))]
    whole = [tuple(v(i, j) for j in blocks[i]) for i in range(1, n + 1)]
    g = Hypergraph.from_edges(H + small + whole)
    terms = [(-1, e) for e in whole] + [(-1, e) for e in H] + [(1, e) for e in small]
    return g, le(terms, 2 * n - 3, "dense-facet")
