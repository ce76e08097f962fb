import pytest

from multipoly.corpus import beta_acyclic_corpus, general_corpus


@pytest.fixture(scope="session")
def acyclic_corpus():
    return beta_acyclic_corpus(200, seed=0)


@pytest.fixture(scope="session")
def small_acyclic_corpus():
    return beta_acyclic_corpus(60, seed=1, max_nodes=8, max_rank=4)


@pytest.fixture(scope="session")
def mixed_corpus():
    return general_corpus(500, seed=0)
