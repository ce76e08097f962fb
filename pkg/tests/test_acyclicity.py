import pytest

from multipoly.acyclicity import (
    BetaCycle,
    find_beta_cycle,
    incident_chain,
    is_beta_acyclic,
    is_nest_point,
    nest_point_sequence,
    replay_sequence,
)
from multipoly.cuts import dense_facet_family
from multipoly.errors import SizeLimitExceeded
from multipoly.hypergraph import Hypergraph
from multipoly.instances import example_b, hypertriangle, pointed_example, triangle


def some_order_empties(g):
    """Exhaustive search over elimination orders."""
    if not g.nodes:
        return True
    return any(some_order_empties(g.remove_node(v)) for v in g.sorted_nodes() if is_nest_point(g, v))


def test_nest_points():
    assert is_nest_point(pointed_example(), 1)
    assert incident_chain(pointed_example(), 1) == [(1, 2), (1, 2, 3, 4)]
    assert not is_nest_point(Hypergraph.from_edges([(1, 2), (1, 3)]), 1)
    assert is_nest_point(Hypergraph.from_edges([(1, 2)], nodes=[9]), 9)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dense_family_is_acyclic(n):
    assert nest_point_sequence(dense_facet_family(n)[0]).residual.is_empty()


def test_hypertriangle_residual_is_triangle():
    seq = nest_point_sequence(hypertriangle())
    assert seq.residual == triangle()
    assert set(seq.order) == {4, 5, 6, 7}


def test_single_edge_sequence():
    seq = nest_point_sequence(Hypergraph.from_edges([(1, 2)]))
    assert seq.order == (1, 2) and seq.residual.is_empty()


def test_classification_examples():
    assert not is_beta_acyclic(triangle())
    assert is_beta_acyclic(example_b())
    assert is_beta_acyclic(Hypergraph.empty())


def test_beta_cycle_witness():
    cycle = find_beta_cycle(triangle())
    assert cycle is not None and cycle.is_valid() and len(cycle.edges) == 3
    assert find_beta_cycle(Hypergraph.from_edges([(1, 2, 3)])) is None


def test_beta_cycle_needs_private_nodes():
    # {1,2,3} covers every pairwise overlap, so no beta-cycle exists
    g = Hypergraph.from_edges([(1, 2), (2, 3), (1, 3), (1, 2, 3)])
    assert is_beta_acyclic(g) is False
    assert find_beta_cycle(g) is not None
    g = Hypergraph.from_edges([(1, 2, 3), (1, 2), (1, 3)])
    assert is_beta_acyclic(g) and find_beta_cycle(g) is None


def test_invalid_cycle_rejected():
    assert not BetaCycle((1, 2, 3), ((1, 2), (2, 3), (1, 2, 3))).is_valid()


def test_beta_cycle_size_gate():
    g = Hypergraph.from_edges([(i, i + 1) for i in range(1, 12)])
    with pytest.raises(SizeLimitExceeded):
        find_beta_cycle(g)


def test_replay_sequence():
    g = example_b()
    assert replay_sequence(g, (5, 4, 3, 2, 1)) is None
    assert replay_sequence(triangle(), (1,)) == 0


def test_oracle_agreement(mixed_corpus):
    assert len(mixed_corpus) >= 500
    for g in mixed_corpus:
        cycle = find_beta_cycle(g)
        assert is_beta_acyclic(g) == (cycle is None), g
        if cycle is not None:
            assert cycle.is_valid()


def test_greedy_is_complete(mixed_corpus):
    for g in mixed_corpus[:200]:
        assert is_beta_acyclic(g) == some_order_empties(g), g


def test_hereditary(small_acyclic_corpus):
    for g in small_acyclic_corpus:
        for v in g.sorted_nodes():
            assert is_beta_acyclic(g.remove_node(v))


def test_sequences_replay(small_acyclic_corpus):
    for g in small_acyclic_corpus:
        seq = nest_point_sequence(g)
        assert replay_sequence(g, seq.order) is None
        assert g.remove_nodes(seq.order) == seq.residual
