"""Brute-force ground truth over the multilinear set: every 0/1 node assignment with edge values as products."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from .acyclicity import incident_chain, is_beta_acyclic
from .errors import BadParameter, HypothesisViolated, NotANestPointSequence, SizeLimitExceeded
from .formulation import InequalitySystem, LinearInequality, VariableId, beta_acyclic_formulation, le, pointed_system, var
from .hypergraph import Hypergraph
from .lp import ExactLP

MAX_ENUMERATION_NODES = 24
MAX_FACET_DIMENSION = 20
MAX_HULL_NODES = 10


class MultilinearPoint(dict):
    """0/1 values keyed by VariableId; edge entries equal the product of their nodes."""


def _gate(g: Hypergraph) -> None:
    if len(g.nodes) > MAX_ENUMERATION_NODES:
        raise SizeLimitExceeded(f"enumeration is limited to {MAX_ENUMERATION_NODES} nodes, got {len(g.nodes)}")


def model_variables(g: Hypergraph) -> list:
    return sorted([var(v) for v in g.nodes] + [var(e) for e in g.edges])


def assignments(g: Hypergraph) -> np.ndarray:
    """All 0/1 node assignments in lexicographic order over the sorted nodes."""
    _gate(g)
    n = len(g.nodes)
    codes = np.arange(2**n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts[None, :]) & 1).astype(np.int8)


def point_matrix(g: Hypergraph, variables) -> np.ndarray:
    """Value of each variable (a product of node columns) at every assignment."""
    nodes = g.sorted_nodes()
    col = {v: i for i, v in enumerate(nodes)}
    A = assignments(g)
    out = np.ones((A.shape[0], len(variables)), dtype=np.int8)
    for j, x in enumerate(variables):
        x = var(x)
        if x.kind == "aux":
            raise BadParameter(f"{x.name} is not a multilinear variable")
        for v in x.nodes:
            if v not in col:
                raise BadParameter(f"{x.name} uses node {v} outside the hypergraph")
            out[:, j] &= A[:, col[v]]
    return out


def enumerate_points(g: Hypergraph) -> list[MultilinearPoint]:
    variables = model_variables(g)
    P = point_matrix(g, variables)
    return [MultilinearPoint(zip(variables, map(int, row))) for row in P]


def _integer_row(coeffs: Mapping) -> tuple[list, list, int]:
    items = [(var(x), Fraction(c)) for x, c in coeffs.items()]
    L = 1
    for _, c in items:
        L = math.lcm(L, c.denominator)
    return [x for x, _ in items], [int(c * L) for _, c in items], L


def _evaluate(g: Hypergraph, coeffs: Mapping) -> tuple[np.ndarray, int, list]:
    """Integer-scaled values of a linear form at every point, and the scale."""
    variables, ints, L = _integer_row(coeffs)
    if not variables:
        return np.zeros(2 ** len(g.nodes), dtype=np.int64), L, variables
    P = point_matrix(g, variables)
    if max(abs(c) for c in ints) * len(ints) < 2**62:
        return P.astype(np.int64) @ np.array(ints, dtype=np.int64), L, variables
    return P.astype(object) @ np.array(ints, dtype=object), L, variables


def _point_at(g: Hypergraph, index: int) -> MultilinearPoint:
    variables = model_variables(g)
    n = len(g.nodes)
    bits = {v: (index >> (n - 1 - i)) & 1 for i, v in enumerate(g.sorted_nodes())}
    return MultilinearPoint((x, int(all(bits[v] for v in x.nodes))) for x in variables)


def brute_force_max(g: Hypergraph, objective: Mapping) -> tuple[Fraction, MultilinearPoint]:
    """Exact maximum over the multilinear set; ties go to the lexicographically smallest assignment."""
    _gate(g)
    values, L, _ = _evaluate(g, objective)
    best = int(np.argmax(values))
    return Fraction(int(values[best]), L), _point_at(g, best)


def check_validity(g: Hypergraph, inequality: LinearInequality) -> tuple[bool, Optional[MultilinearPoint]]:
    _gate(g)
    values, L, _ = _evaluate(g, inequality.coeffs)
    bound = inequality.rhs * L
    bad = np.nonzero(values > bound)[0] if bound.denominator == 1 else [i for i, x in enumerate(values) if x > bound]
    if len(bad):
        return False, _point_at(g, int(bad[0]))
    return True, None


def affine_rank(rows) -> int:
    """Number of affinely independent integer points, by fraction-free elimination."""
    M = [[1] + [int(x) for x in r] for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        p = M[rank][c]
        for i in range(rank + 1, len(M)):
            a = M[i][c]
            M[i] = [(p * M[i][j] - a * M[rank][j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        if rank == len(M):
            break
    return rank


@dataclass(frozen=True)
class FacetReport:
    valid: bool
    tight_count: int
    tight_rank: int
    is_facet: bool


def check_facet(g: Hypergraph, inequality: LinearInequality) -> FacetReport:
    _gate(g)
    variables = model_variables(g)
    dim = len(variables)
    if dim > MAX_FACET_DIMENSION:
        raise SizeLimitExceeded(f"facet checks are limited to |V|+|E| <= {MAX_FACET_DIMENSION}, got {dim}")
    extra = [x for x in inequality.coeffs if x not in set(variables)]
    if extra:
        raise BadParameter(f"inequality uses variables outside V and E: {extra}")
    values, L, _ = _evaluate(g, inequality.coeffs)
    bound = inequality.rhs * L
    valid = bool(all(x <= bound for x in values))
    tight = [i for i, x in enumerate(values) if x == bound]
    P = point_matrix(g, variables)
    rank = affine_rank(P[tight].tolist())
    is_facet = valid and rank == dim
    assert not is_facet or (valid and rank == dim)
    return FacetReport(valid, len(tight), rank, is_facet)


def check_coefficient_sum(inequality: LinearInequality) -> bool:
    if inequality.is_nonnegativity():
        raise BadParameter("the coefficient-sum law does not apply to nonnegativity rows")
    return inequality.coefficient_sum() == inequality.rhs


def random_objectives(variables, count: int, seed: int = 0, low: int = -10, high: int = 10) -> list[dict]:
    """Integer objectives drawn uniformly from [low, high] with a seeded generator."""
    rng = np.random.default_rng(seed)
    variables = list(variables)
    draws = rng.integers(low, high + 1, size=(count, len(variables)))
    return [{x: Fraction(int(c)) for x, c in zip(variables, row) if c} for row in draws]


def unit_objectives(variables) -> list[dict]:
    out = []
    for x in variables:
        out.append({x: Fraction(1)})
        out.append({x: Fraction(-1)})
    return out


def hull_formulation(g: Hypergraph) -> InequalitySystem:
    """Convex hull of the multilinear set through one weight variable per point (tiny inputs only)."""
    if len(g.nodes) > MAX_HULL_NODES:
        raise SizeLimitExceeded(f"hull formulation is limited to {MAX_HULL_NODES} nodes")
    variables = model_variables(g)
    P = point_matrix(g, variables)
    lam = [VariableId.aux(f"lam{i}") for i in range(P.shape[0])]
    system = InequalitySystem(variables + lam)
    for j, x in enumerate(variables):
        terms = [(1, x)] + [(-1, lam[i]) for i in np.nonzero(P[:, j])[0]]
        system.add(le(terms, 0, "hull"))
        system.add(le([(-c, y) for c, y in terms], 0, "hull"))
    system.add(le([(1, y) for y in lam], 1, "hull"))
    system.add(le([(-1, y) for y in lam], -1, "hull"))
    for y in lam:
        system.add(le([(-1, y)], 0, "hull"))
    return system


def hull_description(g: Hypergraph) -> InequalitySystem:
    """Exact description of the multilinear polytope: the extended formulation when possible, else the point hull."""
    if not g.edges:
        system = InequalitySystem(var(v) for v in g.nodes)
        for v in g.sorted_nodes():
            system.add(le([(-1, v)], 0, "r1"))
            system.add(le([(1, v)], 1, "r1"))
        return system
    if is_beta_acyclic(g):
        return beta_acyclic_formulation(g).system
    return hull_formulation(g)


def decomposition_parts(g: Hypergraph, v: int) -> tuple[Hypergraph, Hypergraph]:
    """The pointed hypergraph at ``v`` and ``g - v``."""
    if v not in g.nodes:
        raise NotANestPointSequence(0, v)
    chain = incident_chain(g, v)
    if chain is None:
        raise NotANestPointSequence(0, v)
    rests = [tuple(u for u in e if u != v) for e in chain]
    missing = [p for p in rests if len(p) >= 2 and p not in g.edges]
    if missing:
        raise HypothesisViolated(f"residues {missing} of edges through {v} are not edges")
    top = chain[-1] if chain else (v,)
    g1 = Hypergraph(frozenset(top), frozenset(chain) | frozenset(p for p in rests if len(p) >= 2))
    return g1, g.remove_node(v)


def check_decomposition(g: Hypergraph, v: int, trials: int = 50, seed: int = 0) -> bool:
    """Compare max over the multilinear set with the LP over the two glued descriptions."""
    _gate(g)
    g1, g2 = decomposition_parts(g, v)
    chain = incident_chain(g, v)
    if chain:
        part1 = pointed_system(chain, v)
    else:
        part1 = InequalitySystem([var(v)], [le([(-1, v)], 0, "r1"), le([(1, v)], 1, "r1")])
    system = part1.union(hull_description(g2))
    lp = ExactLP(system)
    variables = model_variables(g)
    objectives = random_objectives(variables, trials, seed) + unit_objectives(variables)
    for objective in objectives:
        expected, _ = brute_force_max(g, objective)
        got = lp.maximize(objective)
        if not got.optimal or got.objective != expected:
            return False
    return True


def exactness_mismatches(g: Hypergraph, system: InequalitySystem, objectives) -> list[dict]:
    """Objectives whose LP optimum over ``system`` differs from the brute-force optimum."""
    lp = ExactLP(system)
    bad = []
    for objective in objectives:
        expected, _ = brute_force_max(g, objective)
        got = lp.maximize(objective)
        if not got.optimal or got.objective != expected:
            bad.append(objective)
    return bad
