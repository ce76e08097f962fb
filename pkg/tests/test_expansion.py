import pytest

from multipoly.errors import AmbiguousF, NotANestPointSequence
from multipoly.expansion import ExpandedHypergraph, edge_structure, expand, is_expanded, residues
from multipoly.hypergraph import Hypergraph
from multipoly.instances import example_b, path_example, triangle


def test_residues():
    assert residues((1, 2, 3, 4), (2, 4, 1, 3)) == [(1, 3, 4), (1, 3)]
    assert residues((1, 2), (1, 2)) == []


def test_example_b_expansion():
    x = expand(example_b(), (5, 4, 3, 2, 1))
    assert x.added == {(1, 2)}
    assert not is_expanded(example_b(), (5, 4, 3, 2, 1))
    assert is_expanded(x.expanded, (5, 4, 3, 2, 1))


def test_single_edge_expansion():
    x = expand(Hypergraph.from_edges([(1, 2, 3)]), (1, 2, 3))
    assert x.added == {(2, 3)}


def test_already_expanded_is_fixpoint():
    x = expand(example_b(), (5, 4, 3, 2, 1))
    assert expand(x.expanded, x.order).added == frozenset()


def test_rejects_bad_order():
    with pytest.raises(NotANestPointSequence):
        expand(triangle(), (1, 2, 3))


def test_path_example_structure():
    x = expand(path_example(), (1, 2, 3, 4))
    s = edge_structure(x)[(1, 2, 3)]
    assert s.v_of_e == 1 and s.in_M
    assert s.f_of_e == (1, 2) and s.f_prime == (2,)


def test_structure_without_sub_edge():
    x = expand(Hypergraph.from_edges([(1, 2)]), (1, 2))
    s = edge_structure(x)[(1, 2)]
    assert not s.in_M and s.f_of_e is None and s.p_of_e == (2,)


def test_chain_structure():
    g = Hypergraph.from_edges([(1, 2), (1, 2, 3), (1, 2, 3, 4)])
    x = expand(g, (1, 2, 3, 4))
    table = edge_structure(x)
    assert table[(1, 2, 3, 4)].f_of_e == (1, 2, 3)
    assert table[(1, 2, 3)].f_of_e == (1, 2)


def test_ambiguous_f():
    # not expanded: two incomparable sub-edges through node 1
    base = Hypergraph.from_edges([(1, 2, 3, 4), (1, 2), (1, 3)])
    x = ExpandedHypergraph(base, (1,), base, frozenset())
    with pytest.raises(AmbiguousF):
        edge_structure(x)


def test_corpus_invariants(acyclic_corpus):
    for g in acyclic_corpus:
        x = expand(g)
        edges = x.expanded.edges
        table = edge_structure(x)
        for e, s in table.items():
            if len(s.p_of_e) >= 2:
                assert s.p_of_e in edges
        assert len(edges) <= (max(g.rank, 2) - 2) * len(g.nodes) + len(g.edges)
        assert expand(x.expanded, x.order).added == frozenset()
        if x.order:
            t = x.tail()
            assert is_expanded(t.expanded, t.order)
            edge_structure(t)
