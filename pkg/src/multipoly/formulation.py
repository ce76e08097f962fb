"""Inequality systems over multilinear variables and the polyhedral descriptions built from them.

A variable is named by the node set it multiplies out: ``(v,)`` is the node
variable z_v, a longer tuple is an edge variable. Auxiliary (non-multilinear)
variables carry a string label instead.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .acyclicity import incident_chain, nest_point_sequence
from .errors import BoundViolation, NotAChain, NotANestPointSequence, NotBetaAcyclic
from .expansion import ExpandedHypergraph, edge_structure, expand
from .hypergraph import Hypergraph


@dataclass(frozen=True)
class VariableId:
    nodes: tuple = ()
    label: str = ""

    @classmethod
    def of(cls, item) -> "VariableId":
        if isinstance(item, VariableId):
            return item
        if isinstance(item, int):
            return cls((item,))
        if isinstance(item, str):
            return cls.from_name(item)
        return cls(tuple(sorted(item)))

    @classmethod
    def aux(cls, label: str) -> "VariableId":
        return cls((), label)

    @property
    def kind(self) -> str:
        if self.label:
            return "aux"
        return "node" if len(self.nodes) == 1 else "edge"

    def sort_key(self):
        return ({"node": 0, "edge": 1, "aux": 2}[self.kind], self.nodes, self.label)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if len(self.nodes) == 1:
            return f"z{self.nodes[0]}"
        return "zE_" + "_".join(str(v) for v in self.nodes)

    @classmethod
    def from_name(cls, name: str) -> "VariableId":
        if name.startswith("zE_"):
            return cls(tuple(int(t) for t in name[3:].split("_")))
        if name.startswith("z") and name[1:].isdigit():
            return cls((int(name[1:]),))
        return cls.aux(name)

    def __repr__(self):
        return self.name


def var(item) -> VariableId:
    return VariableId.of(item)


class LinearInequality:
    """Sparse row ``sum(coeffs[x] * x) <= rhs`` with exact rational data."""

    __slots__ = ("coeffs", "rhs", "tags")

    def __init__(self, coeffs: Mapping, rhs, tag="") -> None:
        clean = {}
        for key, c in coeffs.items():
            c = Fraction(c)
            if c:
                clean[var(key)] = c
        self.coeffs = dict(sorted(clean.items()))
        self.rhs = Fraction(rhs)
        self.tags = (tag,) if isinstance(tag, str) else tuple(tag)

    @classmethod
    def from_terms(cls, terms: Iterable, rhs, tag="") -> "LinearInequality":
        """Build from ``(coefficient, variable)`` pairs, summing repeated variables."""
        acc: dict = {}
        for c, x in terms:
            x = var(x)
            acc[x] = acc.get(x, 0) + Fraction(c)
        return cls(acc, rhs, tag)

    @property
    def tag(self) -> str:
        return self.tags[0] if self.tags else ""

    def key(self):
        return tuple(self.coeffs.items()), self.rhs

    def __eq__(self, other):
        return isinstance(other, LinearInequality) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_trivial(self) -> bool:
        return not self.coeffs

    def is_nonnegativity(self) -> bool:
        if len(self.coeffs) != 1 or self.rhs != 0:
            return False
        (c,) = self.coeffs.values()
        return c < 0

    def coefficient_sum(self) -> Fraction:
        return sum(self.coeffs.values(), Fraction(0))

    def lhs(self, point: Mapping) -> Fraction:
        return sum((c * point[x] for x, c in self.coeffs.items()), Fraction(0))

    def holds_at(self, point: Mapping) -> bool:
        return self.lhs(point) <= self.rhs

    def variables(self):
        return self.coeffs.keys()

    def scaled(self, factor) -> "LinearInequality":
        factor = Fraction(factor)
        return LinearInequality({x: c * factor for x, c in self.coeffs.items()}, self.rhs * factor, self.tags)

    def __add__(self, other: "LinearInequality") -> "LinearInequality":
        acc = dict(self.coeffs)
        for x, c in other.coeffs.items():
            acc[x] = acc.get(x, 0) + c
        return LinearInequality(acc, self.rhs + other.rhs, "sum")

    def __str__(self):
        return format_row(self)

    def __repr__(self):
        return f"<{self.tag}: {format_row(self)}>"


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_row(row: LinearInequality) -> str:
    parts = []
    for x, c in row.coeffs.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        term = x.name if mag == 1 else f"{_fmt_coef(mag)} {x.name}"
        parts.append(f"{sign} {term}")
    text = " ".join(parts) if parts else "0"
    if text.startswith("+ "):
        text = text[2:]
    elif text.startswith("- "):
        text = "-" + text[2:]
    return f"{text} <= {_fmt_coef(row.rhs)}"


class InequalitySystem:
    """Ordered, deduplicated collection of rows over declared variables."""

    def __init__(self, variables: Iterable = (), rows: Iterable[LinearInequality] = ()) -> None:
        self._vars: set = set()
        self._rows: dict = {}
        self.declare(variables)
        for row in rows:
            self.add(row)

    def declare(self, variables: Iterable) -> None:
        self._vars.update(var(x) for x in variables)

    @property
    def variables(self) -> list:
        return sorted(self._vars)

    @property
    def rows(self) -> list:
        return list(self._rows.values())

    def add(self, row: LinearInequality) -> None:
        if row.is_trivial() and row.rhs >= 0:
            return
        self._vars.update(row.coeffs)
        key = row.key()
        old = self._rows.get(key)
        if old is None:
            self._rows[key] = row
        else:
            merged = old.tags + tuple(t for t in row.tags if t not in old.tags)
            self._rows[key] = LinearInequality(old.coeffs, old.rhs, merged)

    def extend(self, rows: Iterable[LinearInequality]) -> None:
        for row in rows:
            self.add(row)

    def __len__(self):
        return len(self._rows)

    def __iter__(self):
        return iter(self._rows.values())

    def __contains__(self, row):
        return row.key() in self._rows

    @property
    def meta(self) -> Counter:
        return Counter(row.tag for row in self._rows.values())

    def copy(self) -> "InequalitySystem":
        return InequalitySystem(self._vars, self._rows.values())

    def union(self, other: "InequalitySystem") -> "InequalitySystem":
        out = self.copy()
        out.declare(other.variables)
        out.extend(other)
        return out

    def satisfied_by(self, point: Mapping) -> bool:
        return all(row.holds_at(point) for row in self)

    def to_json(self) -> dict:
        return {
            "variables": [x.name for x in self.variables],
            "rows": [
                {
                    "coeffs": {x.name: _fmt_coef(c) for x, c in row.coeffs.items()},
                    "rhs": _fmt_coef(row.rhs),
                    "tag": row.tag,
                    **({"tags": list(row.tags)} if len(row.tags) > 1 else {}),
                }
                for row in self
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "InequalitySystem":
        rows = [
            LinearInequality(
                {VariableId.from_name(k): Fraction(v) for k, v in r["coeffs"].items()},
                Fraction(r["rhs"]),
                r.get("tags", r.get("tag", "")),
            )
            for r in data["rows"]
        ]
        return cls((VariableId.from_name(n) for n in data.get("variables", [])), rows)

    def to_text(self) -> str:
        return "".join(f"[{row.tag}] {format_row(row)}\n" for row in self)


def le(terms, rhs, tag) -> LinearInequality:
    return LinearInequality.from_terms(terms, rhs, tag)


# --------------------------------------------------------------------------- systems


def standard_linearization(g: Hypergraph, node_lower_bounds: bool = True) -> InequalitySystem:
    """Per-edge relaxation: z_v <= 1, z_e >= 0, z_e >= sum z_v - |e| + 1, z_e <= z_v.

    ``z_v >= 0`` is included by default so the row count matches 2|V| + (r+2)|E|.
    """
    system = InequalitySystem([var(v) for v in g.nodes] + [var(e) for e in g.edges])
    for v in g.sorted_nodes():
        system.add(le([(1, v)], 1, "ub"))
        if node_lower_bounds:
            system.add(le([(-1, v)], 0, "lb"))
    for e in g.sorted_edges():
        system.add(le([(-1, e)], 0, "nonneg"))
        system.add(le([(1, v) for v in e] + [(-1, e)], len(e) - 1, "lower"))
        for v in e:
            system.add(le([(1, e), (-1, v)], 0, "upper"))
    return system


def _check_chain(chain, v) -> list:
    chain = sorted((tuple(sorted(e)) for e in chain), key=len)
    if not chain:
        raise NotAChain("a pointed system needs at least one edge")
    for e in chain:
        if v not in e:
            raise NotAChain(f"edge {e} does not contain {v}")
        if len(e) < 2:
            raise NotAChain(f"edge {e} has fewer than two nodes")
    for small, big in zip(chain, chain[1:]):
        if len(small) == len(big) or not set(small) < set(big):
            raise NotAChain(f"edges {small} and {big} are not strictly nested")
    return chain


def pointed_system(chain, v: int) -> InequalitySystem:
    """Convex hull of the multilinear set of the hypergraph pointed at ``v`` along ``chain``."""
    e = _check_chain(chain, v)
    k = len(e)
    p = [tuple(u for u in ei if u != v) for ei in e]
    top = e[-1]
    system = InequalitySystem([var(u) for u in top] + [var(x) for x in e] + [var(x) for x in p])
    for u in top:
        system.add(le([(1, u)], 1, "pointed.ub"))
    system.add(le([(-1, top)], 0, "pointed.nonneg"))
    system.add(le([(1, top), (-1, p[-1])], 0, "pointed.top"))
    for i in range(k - 1):
        new = [u for u in e[i + 1] if u not in e[i]]
        system.add(le([(1, e[i + 1]), (-1, e[i])], 0, "pointed.chain"))
        system.add(le([(-1, p[i]), (1, p[i + 1]), (1, e[i]), (-1, e[i + 1])], 0, "pointed.exchange"))
        for u in new:
            system.add(le([(1, p[i + 1]), (-1, u)], 0, "pointed.upper"))
        system.add(le([(1, u) for u in new] + [(1, p[i]), (-1, p[i + 1])], len(new), "pointed.lower"))
    system.add(le([(1, e[0]), (-1, v)], 0, "pointed.base_upper"))
    system.add(le([(1, v), (1, p[0]), (-1, e[0])], 1, "pointed.base_lower"))
    for u in p[0]:
        system.add(le([(1, p[0]), (-1, u)], 0, "pointed.p1_upper"))
    system.add(le([(1, u) for u in p[0]] + [(-1, p[0])], len(p[0]) - 1, "pointed.p1_lower"))
    return system


@dataclass
class ExtendedFormulation:
    system: InequalitySystem
    original_vars: list
    extended_vars: list
    source: ExpandedHypergraph
    order: tuple = field(default=())

    def row_bound(self) -> int:
        g = self.source.base
        return (3 * max(g.rank, 2) - 4) * len(g.nodes) + 4 * len(g.edges)

    def extended_bound(self) -> int:
        g = self.source.base
        return (max(g.rank, 2) - 2) * len(g.nodes)


def beta_acyclic_formulation(g: Hypergraph, order=None) -> ExtendedFormulation:
    """Polynomial-size extended formulation of the multilinear polytope of a beta-acyclic hypergraph.

    Rows are tagged ``r1``..``r7`` by generating rule. ``order`` defaults to the
    greedy smallest-id nest-point sequence and must cover every node.
    """
    if order is None:
        seq = nest_point_sequence(g)
        if not seq.residual.is_empty():
            raise NotBetaAcyclic(seq.residual)
        order = seq.order
    order = tuple(order)
    if set(order) != set(g.nodes) or len(order) != len(g.nodes):
        residual = g.remove_nodes(v for v in order if v in g.nodes)
        raise NotBetaAcyclic(residual)
    x = expand(g, order)
    structure = edge_structure(x)
    edges = x.expanded.sorted_edges()
    system = InequalitySystem([var(v) for v in g.nodes] + [var(e) for e in edges])
    for u in g.sorted_nodes():
        system.add(le([(-1, u)], 0, "r1"))
        system.add(le([(1, u)], 1, "r1"))
    for e in sorted(x.expanded.maximal_edges()):
        system.add(le([(-1, e)], 0, "r2"))
    for e in edges:
        s = structure[e]
        system.add(le([(1, e), (-1, s.p_of_e)], 0, "r3"))
        if s.in_M:
            system.add(le([(1, e), (-1, s.f_of_e)], 0, "r4"))
            system.add(le([(-1, s.f_prime), (1, s.p_of_e), (1, s.f_of_e), (-1, e)], 0, "r5"))
        else:
            system.add(le([(1, s.v_of_e), (1, s.p_of_e), (-1, e)], 1, "r6"))
            system.add(le([(1, e), (-1, s.v_of_e)], 0, "r7"))
    form = ExtendedFormulation(
        system,
        original_vars=sorted([var(v) for v in g.nodes] + [var(e) for e in g.edges]),
        extended_vars=sorted(var(e) for e in x.added),
        source=x,
        order=order,
    )
    if len(system) > form.row_bound():
        raise BoundViolation(f"{len(system)} rows exceed the bound {form.row_bound()}")
    if len(form.extended_vars) > form.extended_bound():
        raise BoundViolation(f"{len(form.extended_vars)} extended variables exceed {form.extended_bound()}")
    return form


def partial_formulation(g: Hypergraph, order) -> tuple[InequalitySystem, Hypergraph]:
    """Pointed systems for each node of a nest-point sequence, plus the hypergraph left over.

    The multilinear polytope of ``g`` is the projection of these rows together
    with any description of the returned residual's multilinear polytope.
    """
    x = expand(g, order)
    current = x.expanded
    system = InequalitySystem(var(v) for v in g.nodes)
    for i, v in enumerate(x.order):
        chain = incident_chain(current, v)
        if chain is None:
            raise NotANestPointSequence(i, v)
        if chain:
            system = system.union(pointed_system(chain, v))
        else:
            system.add(le([(-1, v)], 0, "pointed.isolated"))
            system.add(le([(1, v)], 1, "pointed.isolated"))
        current = current.remove_node(v)
    return system, g.remove_nodes(x.order)


def partial_row_bound(g: Hypergraph, s: int) -> int:
    return len(g.nodes) + 2 * len(g.edges) + 4 * max(g.rank, 2) * s


def triangle_inequalities(a: int, b: int, c: int) -> InequalitySystem:
    """Triangle inequalities for the three 2-edges on nodes a, b, c."""
    ab, ac, bc = (a, b), (a, c), (b, c)
    system = InequalitySystem()
    system.add(le([(1, a), (1, b), (1, c), (-1, ab), (-1, ac), (-1, bc)], 1, "triangle"))
    system.add(le([(-1, a), (1, ab), (1, ac), (-1, bc)], 0, "triangle"))
    system.add(le([(-1, b), (1, ab), (1, bc), (-1, ac)], 0, "triangle"))
    system.add(le([(-1, c), (1, ac), (1, bc), (-1, ab)], 0, "triangle"))
    return system
