from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from multipoly.errors import RequiresScaling
from multipoly.formulation import InequalitySystem, beta_acyclic_formulation, le, standard_linearization, var
from multipoly.hypergraph import Hypergraph
from multipoly.instances import example_b
from multipoly.lpfile import decimal_string, emit_lp, parse_lp


def constraint_lines(text):
    body = text.split("Subject To\n")[1].split("Bounds\n")[0]
    return [line for line in body.splitlines() if not line.startswith("\\")]


def test_single_edge_file():
    g = Hypergraph.from_edges([(1, 2)])
    text = emit_lp(standard_linearization(g, node_lower_bounds=False), {(1, 2): 1})
    assert len(constraint_lines(text)) == 6
    assert text.startswith("Maximize\n obj: + zE_1_2\n")
    assert " z1 free" in text and text.endswith("End\n")


def test_round_trip():
    s = beta_acyclic_formulation(example_b()).system
    obj = {var(5): Fraction(3, 4), var((1, 2, 3)): -2}
    s2, obj2 = parse_lp(emit_lp(s, obj))
    assert [r.key() for r in s2] == [r.key() for r in s]
    assert [r.tags for r in s2] == [r.tags for r in s]
    assert s2.variables == s.variables
    assert obj2 == obj


def test_objective_scaling_comment():
    s = standard_linearization(Hypergraph.from_edges([(1, 2)]))
    text = emit_lp(s, {1: Fraction(1, 3), 2: 1})
    assert text.splitlines()[0] == "\\ scale obj 3"
    assert "obj: + z1 + 3 z2" in text
    assert parse_lp(text)[1] == {var(1): Fraction(1, 3), var(2): 1}


def test_digit_budget():
    s = InequalitySystem(rows=[le([(Fraction(1, 3**40), 1)], 1, "tiny")])
    with pytest.raises(RequiresScaling):
        emit_lp(s, digit_budget=10)
    assert parse_lp(emit_lp(s))[0].rows[0].coeffs[var(1)] == Fraction(1, 3**40)


def test_decimal_string():
    assert decimal_string(Fraction(-1, 8)) == "-0.125"
    assert decimal_string(Fraction(3, 20)) == "0.15"
    assert decimal_string(Fraction(12)) == "12"
    with pytest.raises(RequiresScaling):
        decimal_string(Fraction(1, 3))


def test_long_rows_wrap():
    row = le([(1, v) for v in range(1, 30)], 5, "wide")
    text = emit_lp(InequalitySystem(rows=[row]))
    assert max(len(line) for line in text.splitlines()) < 120
    assert parse_lp(text)[0].rows == [row]


fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.lists(fractions, min_size=3, max_size=3), fractions), min_size=1, max_size=6))
def test_random_round_trip(data):
    s = InequalitySystem([var(1), var(2), var((1, 2))])
    for coeffs, rhs in data:
        s.add(le(zip(coeffs, [1, 2, (1, 2)]), rhs, "r"))
    s2, _ = parse_lp(emit_lp(s))
    assert [r.key() for r in s2] == [r.key() for r in s]
