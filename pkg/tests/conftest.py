import numpy as np
import pytest
import scipy.sparse as sp

from hyperwalk.hypergraph import Hypergraph


def ex1():
    """Two edges {0,1,2} (weights 1,2,1) and {0,1}; non-reversible walk."""
    return Hypergraph(np.array([[1.0, 2.0, 1.0], [1.0, 1.0, 0.0]]))


def ex2():
    """A path of two edges {0,1} (weights 1,2) and {1,2}; reversible walk."""
    return Hypergraph(np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 1.0]]))


def random_hypergraph(rng, n_max=50, n_min=3, unit=False, max_size=6):
    """Random connected hypergraph with random vertex and edge weights.

    A chain of overlapping edges over a random vertex order guarantees
    connectivity; extra random edges are added on top.
    """
    n = int(rng.integers(n_min, n_max + 1))
    order = rng.permutation(n)
    edges = []
    i = 0
    while i < n - 1:
        s = int(rng.integers(2, min(max_size, n) + 1))
        edges.append(order[i:i + s])
        i += s - 1
    for _ in range(int(rng.integers(0, n + 1))):
        s = int(rng.integers(2, min(max_size, n) + 1))
        edges.append(rng.choice(n, size=s, replace=False))
    weights = None if unit else [rng.uniform(0.1, 5.0, size=len(e)) for e in edges]
    omega = None if unit else rng.uniform(0.1, 3.0, size=len(edges))
    return Hypergraph.from_edges(edges, n_vertices=n, weights=weights, omega=omega)


def dense(M):
    return M.toarray() if sp.issparse(M) else np.asarray(M)


@pytest.fixture
def EX1():
    return ex1()


@pytest.fixture
def EX2():
    return ex2()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
