from fractions import Fraction

import pytest

from multipoly.acyclicity import nest_point_sequence
from multipoly.cuts import EriSpec, dense_facet_family, eri_inequality
from multipoly.errors import BadParameter, HypothesisViolated, NotANestPointSequence, SizeLimitExceeded
from multipoly.expansion import expand
from multipoly.formulation import le, var
from multipoly.hypergraph import Hypergraph
from multipoly.instances import example_a, example_b, triangle
from multipoly.oracle import (
    affine_rank,
    brute_force_max,
    check_coefficient_sum,
    check_decomposition,
    check_facet,
    check_validity,
    decomposition_parts,
    enumerate_points,
    hull_formulation,
    model_variables,
    random_objectives,
)
from multipoly.lp import solve_max

EDGE = Hypergraph.from_edges([(1, 2)])


def test_enumerate_points():
    points = enumerate_points(EDGE)
    assert len(points) == 4
    assert [p for p in points if p[var((1, 2))] == 1] == [{var(1): 1, var(2): 1, var((1, 2)): 1}]
    assert len(enumerate_points(dense_facet_family(2)[0])) == 256
    with pytest.raises(SizeLimitExceeded):
        enumerate_points(Hypergraph.from_edges([(i, i + 1) for i in range(25)]))


def test_brute_force_max():
    assert brute_force_max(EDGE, {})[0] == 0
    value, point = brute_force_max(EDGE, {var((1, 2)): 1, var(1): -1, var(2): -1})
    assert value == 0 and point == {var(1): 0, var(2): 0, var((1, 2)): 0}
    value, point = brute_force_max(EDGE, {var(1): Fraction(1, 3), var(2): Fraction(-1, 2)})
    assert value == Fraction(1, 3) and point[var(1)] == 1 and point[var(2)] == 0


def test_check_validity():
    row = le([(1, 1), (1, 2), (-1, (1, 2))], 0, "")
    ok, point = check_validity(EDGE, row)
    assert not ok and not row.holds_at(point)
    g, row = dense_facet_family(2)
    assert check_validity(g, row) == (True, None)
    projected = le([(1, 5), (-1, (1, 2, 5)), (1, (1, 2, 3)), (1, (1, 2, 4)), (-1, (1, 2, 3, 4))], 1, "")
    assert check_validity(example_b(), projected)[0]


def test_affine_rank():
    assert affine_rank([[0, 0], [1, 0], [0, 1]]) == 3
    assert affine_rank([[0, 0], [1, 1], [2, 2]]) == 2
    assert affine_rank([]) == 0


def test_facets():
    # z1 <= 1 is tight at only two points of the single-edge set, so it is not a facet
    report = check_facet(EDGE, le([(1, 1)], 1, ""))
    assert report.valid and report.tight_count == 2 and not report.is_facet
    assert check_facet(EDGE, le([(1, 1), (1, 2), (-1, (1, 2))], 1, "")).is_facet
    g, row = dense_facet_family(2)
    report = check_facet(g, row)
    assert report.is_facet and report.tight_rank == 15
    spec = EriSpec.build((1, 2, 3, 4), [(1, 2, 3), (1, 2, 4)], [(), (1, 2)])
    assert check_facet(example_a(), eri_inequality(spec)).is_facet
    projected = le([(1, 5), (-1, (1, 2, 5)), (1, (1, 2, 3)), (1, (1, 2, 4)), (-1, (1, 2, 3, 4))], 1, "")
    assert check_facet(example_b(), projected).is_facet
    with pytest.raises(BadParameter):
        check_facet(EDGE, le([(1, 3)], 1, ""))


def test_coefficient_sum():
    g, row = dense_facet_family(2)
    assert check_coefficient_sum(row)
    assert not check_coefficient_sum(le([(1, 1), (1, 2)], 1, ""))
    with pytest.raises(BadParameter):
        check_coefficient_sum(le([(-1, 1)], 0, ""))


def test_hull_formulation_is_exact():
    g = triangle()
    hull = hull_formulation(g)
    for obj in random_objectives(model_variables(g), 20, seed=4):
        assert solve_max(hull, obj).objective == brute_force_max(g, obj)[0]


def test_decomposition_parts_and_errors():
    g = expand(example_b(), (5, 4, 3, 2, 1)).expanded
    g1, g2 = decomposition_parts(g, 5)
    assert g1.edges == {(1, 2, 5), (1, 2)} and g2 == g.remove_node(5)
    assert g1.union(g2) == g
    with pytest.raises(HypothesisViolated):
        decomposition_parts(example_b(), 5)
    with pytest.raises(NotANestPointSequence):
        decomposition_parts(triangle(), 1)


def test_decomposition_examples():
    g = expand(example_b(), (5, 4, 3, 2, 1)).expanded
    assert check_decomposition(g, 5)
    # the remainder is a triangle, described through the point hull
    assert check_decomposition(Hypergraph.from_edges([(1, 2), (2, 3), (1, 3), (1, 2, 4)]), 4)
    assert check_decomposition(Hypergraph.from_edges([(1, 2)], nodes=[3]), 3)


def test_decomposition_on_corpus(small_acyclic_corpus):
    for g in small_acyclic_corpus[:20]:
        seq = nest_point_sequence(g)
        x = expand(g, seq.order)
        assert check_decomposition(x.expanded, seq.order[0], trials=50, seed=1)
