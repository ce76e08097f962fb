import itertools
from fractions import Fraction

import pytest

from multipoly.acyclicity import nest_point_sequence
from multipoly.errors import NotAChain, NotBetaAcyclic
from multipoly.formulation import (
    InequalitySystem,
    LinearInequality,
    VariableId,
    beta_acyclic_formulation,
    le,
    partial_formulation,
    partial_row_bound,
    pointed_system,
    standard_linearization,
    triangle_inequalities,
    var,
)
from multipoly.hypergraph import Hypergraph
from multipoly.instances import example_b, hypertriangle, path_example, pointed_example, triangle
from multipoly.lp import ExactLP, fourier_motzkin_eliminate
from multipoly.oracle import (
    brute_force_max,
    check_coefficient_sum,
    check_validity,
    enumerate_points,
    model_variables,
    random_objectives,
)


def det(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += sign * prod
    return total


def submatrix(rows, variables):
    return [[row.coeffs.get(var(x), 0) for x in variables] for row in rows]


def test_variable_ids():
    assert var(3).name == "z3"
    assert var((3, 1)).name == "zE_1_3"
    assert VariableId.from_name("zE_1_3") == var((1, 3))
    assert VariableId.from_name("z7") == var(7)
    assert var("zE_1_3") == var((1, 3)) and var("z7") == var(7)
    assert VariableId.aux("lam0").kind == "aux"
    assert sorted([var((1, 2)), VariableId.aux("a"), var(5)]) == [var(5), var((1, 2)), VariableId.aux("a")]


def test_inequality_basics():
    row = LinearInequality.from_terms([(1, 1), (2, 1), (-1, (1, 2))], 1)
    assert row.coeffs == {var(1): 3, var((1, 2)): -1}
    assert row.coefficient_sum() == 2
    assert le([(-1, 4)], 0, "x").is_nonnegativity()
    assert str(le([(Fraction(1, 2), 1), (-1, 2)], 3, "x")) == "1/2 z1 - z2 <= 3"


def test_system_dedups_and_keeps_tags():
    s = InequalitySystem()
    s.add(le([(1, 1)], 1, "a"))
    s.add(le([(1, 1)], 1, "b"))
    assert len(s) == 1 and s.rows[0].tags == ("a", "b")
    assert InequalitySystem.from_json(s.to_json()).rows[0].tags == ("a", "b")


def test_standard_linearization_counts():
    g = Hypergraph.from_edges([(1, 2)])
    assert len(standard_linearization(g, node_lower_bounds=False)) == 6
    assert len(standard_linearization(g)) == 8
    assert len(standard_linearization(Hypergraph.from_edges([], nodes=[1, 2]))) == 4


def test_standard_linearization_count_formula(acyclic_corpus):
    for g in acyclic_corpus[:50]:
        n = len(standard_linearization(g))
        assert n == 2 * len(g.nodes) + sum(len(e) + 2 for e in g.edges)
        assert n <= 2 * len(g.nodes) + (g.rank + 2) * len(g.edges)


def test_pointed_example_rows_and_determinant():
    s = pointed_system([(1, 2), (1, 2, 3, 4)], 1)
    rows = [
        le([(1, (2, 3, 4)), (-1, 3)], 0, ""),
        le([(1, (2, 3, 4)), (-1, 4)], 0, ""),
        le([(-1, 2), (1, (1, 2)), (1, (2, 3, 4)), (-1, (1, 2, 3, 4))], 0, ""),
        le([(1, 2), (1, 3), (1, 4), (-1, (2, 3, 4))], 2, ""),
    ]
    for row in rows:
        assert row in s
    assert det(submatrix(rows, [2, 3, 4, (2, 3, 4)])) == -2


def test_pointed_single_edge_matches_standard_linearization():
    s = pointed_system([(1, 2)], 1)
    std = standard_linearization(Hypergraph.from_edges([(1, 2)]), node_lower_bounds=False)
    assert {r.key() for r in s} == {r.key() for r in std}


def test_pointed_rejects_non_chain():
    with pytest.raises(NotAChain):
        pointed_system([(1, 2), (1, 3)], 1)
    with pytest.raises(NotAChain):
        pointed_system([(2, 3)], 1)


def test_pointed_is_exact_hull():
    g = pointed_example()
    lp = ExactLP(pointed_system([(1, 2), (1, 2, 3, 4)], 1))
    for obj in random_objectives(model_variables(g), 60, seed=3):
        assert lp.maximize(obj).objective == brute_force_max(g, obj)[0]


def test_path_example_rows_and_determinant():
    form = beta_acyclic_formulation(path_example(), (1, 2, 3, 4))
    listed = [
        le([(1, 1), (1, 2), (-1, (1, 2))], 1, ""),
        le([(1, 2), (1, 3), (-1, (2, 3))], 1, ""),
        le([(1, (1, 2, 3)), (-1, (1, 2))], 0, ""),
        le([(-1, 3), (1, (3, 4)), (1, (1, 2, 3)), (-1, (1, 2, 3, 4))], 0, ""),
    ]
    for row in listed[:3]:
        assert row in form.system
    # the fourth row lives in the original space: project out the expansion edge {2,3,4}
    assert form.extended_vars == [var((2, 3, 4))]
    assert listed[3] in fourier_motzkin_eliminate(form.system, (2, 3, 4))
    assert det(submatrix(listed, [2, 3, (1, 2), (1, 2, 3)])) == -2


def test_example_b_rows():
    form = beta_acyclic_formulation(example_b(), (5, 4, 3, 2, 1))
    assert le([(-1, (1, 2)), (1, (1, 2, 3)), (1, (1, 2, 4)), (-1, (1, 2, 3, 4))], 0, "") in form.system
    assert le([(1, 5), (1, (1, 2)), (-1, (1, 2, 5))], 1, "") in form.system
    greedy = beta_acyclic_formulation(example_b())
    assert le([(-1, (1, 2)), (1, (1, 2, 3)), (1, (1, 2, 4)), (-1, (1, 2, 3, 4))], 0, "") in greedy.system


def test_single_edge_formulation_is_standard():
    g = Hypergraph.from_edges([(1, 2)])
    form = beta_acyclic_formulation(g)
    assert {r.key() for r in form.system} == {r.key() for r in standard_linearization(g)}
    assert form.extended_vars == []


def test_rejects_cyclic_input():
    with pytest.raises(NotBetaAcyclic):
        beta_acyclic_formulation(triangle())
    with pytest.raises(NotBetaAcyclic):
        beta_acyclic_formulation(example_b(), (5, 4))


def test_formulation_bounds_and_coefficient_sums(acyclic_corpus):
    for g in acyclic_corpus:
        form = beta_acyclic_formulation(g)
        assert len(form.system) <= form.row_bound()
        assert len(form.extended_vars) <= form.extended_bound()
        for row in form.system:
            if not row.is_nonnegativity():
                assert check_coefficient_sum(row), row


def test_every_point_satisfies_formulation(small_acyclic_corpus):
    for g in small_acyclic_corpus[:30]:
        form = beta_acyclic_formulation(g)
        for point in enumerate_points(g):
            full = {x: int(all(point[var(v)] for v in x.nodes)) for x in form.system.variables}
            assert form.system.satisfied_by(full)


def test_partial_formulation_hypertriangle():
    g = hypertriangle()
    system, residual = partial_formulation(g, (4, 5, 6, 7))
    assert residual == triangle()
    assert len(system) <= partial_row_bound(g, 4)


def test_partial_full_sequence_leaves_nothing(acyclic_corpus):
    for g in acyclic_corpus[:60]:
        order = nest_point_sequence(g).order
        system, residual = partial_formulation(g, order)
        assert residual.is_empty()
        assert len(system) <= partial_row_bound(g, len(order))
        for row in system:
            if not row.is_nonnegativity():
                assert check_coefficient_sum(row), row


def test_triangle_inequalities_are_valid():
    for row in triangle_inequalities(1, 2, 3):
        assert check_validity(triangle(), row)[0]
