import pytest

from hyperph.complexes import FilteredComplex
from hyperph.hypergraph import Corpus, Hyperedge, Hypergraph


@pytest.fixture
def loop_hypergraph() -> Hypergraph:
    """Hyperedges {b}, {a,b}, {b,c}, {a,c} arriving one per step.

    Final Betti numbers are (1,1) for the closure filtration, (2,0) for
    the restricted subdivision and (1,1) for the collapsed relative one.
    """
    return Hypergraph(
        3,
        (
            Hyperedge((1,), 0),
            Hyperedge((0, 1), 1),
            Hyperedge((1, 2), 2),
            Hyperedge((0, 2), 3),
        ),
        "loop",
    )


@pytest.fixture
def triangle_complex() -> FilteredComplex:
    """Three vertices at 0, two edges at 1, closing edge at 2, no fill."""
    return FilteredComplex(
        {
            (0,): 0,
            (1,): 0,
            (2,): 0,
            (0, 1): 1,
            (1, 2): 1,
            (0, 2): 2,
        }
    )


@pytest.fixture
def tiny_corpus() -> Corpus:
    chain = Hypergraph(
        2, (Hyperedge((0,), 0), Hyperedge((0, 1), 1)), "g-chain"
    )
    pair = Hypergraph(2, (Hyperedge((0, 1), 0),), "g-pair")
    point = Hypergraph(1, (Hyperedge((0,), 0),), "g-point")
    return Corpus(((chain, "a"), (pair, "b"), (point, "a")))
